#include "yates/app/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "yates/app/anova.hpp"
#include "yates/app/generators.hpp"
#include "yates/distributions.hpp"
#include "yates/hypothesis.hpp"
#include "yates/inference.hpp"
#include "yates/linalg.hpp"
#include "yates/random.hpp"
#include "yates/sumsquares.hpp"

namespace yates::app {
namespace {

constexpr double kProjectorTolerance = 1e-8;
constexpr std::size_t kProjectorInstances = 100;
constexpr std::size_t kBalancedInstances = 50;
constexpr Effect kEffects[] = {Effect::A, Effect::B, Effect::AB};

std::size_t expected_df(const Dataset& d, Effect e) {
  switch (e) {
    case Effect::A:
      return d.a() - 1;
    case Effect::B:
      return d.b() - 1;
    case Effect::AB:
      return (d.a() - 1) * (d.b() - 1);
  }
  return 0;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  }
  return m;
}

std::vector<double> normal_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

Dataset random_layout(Rng& rng) {
  const std::size_t a = rng.integer(2, 4);
  const std::size_t b = rng.integer(2, 4);
  return random_two_factor_dataset(rng, a, b, 1, 5);
}

CheckResult at_most(std::string name, std::size_t cases, double worst, double threshold) {
  return CheckResult{std::move(name), cases, worst, threshold, worst <= threshold, {}};
}

CheckResult check_equivalence(Rng& rng, std::size_t instances, bool corrupt) {
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const Dataset d = random_layout(rng);
    const Matrix k = cell_means_design(d);
    for (Effect e : kEffects) {
      TwoFactorHypothesis tf = two_factor_hypothesis(d, e);
      if (corrupt) tf.yates.d = Matrix::identity(tf.yates.d.rows());
      std::optional<double> mwsm;
      if (e != Effect::AB) mwsm = ss_mwsm(d, e, d.responses());
      const SumOfSquaresReport r =
          sum_of_squares(k, tf.hypothesis, tf.yates, d.responses(), mwsm);
      worst = std::max(worst, r.max_discrepancy / (1.0 + r.geometric));
      ++cases;
    }
  }
  auto result = at_most("four-way equivalence (relative discrepancy)", cases, worst,
                        kDefaultAgreementTolerance);
  result.detail = std::to_string(instances) + " unbalanced layouts x effects A, B, AB";
  return result;
}

CheckResult check_weighted_complement(Rng& rng) {
  double worst = 0.0;
  for (std::size_t inst = 0; inst < kProjectorInstances; ++inst) {
    const std::size_t r = rng.integer(1, 6);
    const std::size_t c = rng.integer(1, 6);
    Matrix rm = random_matrix(rng, r, c);
    if (c >= 2 && rng.uniform() < 0.3) {
      for (std::size_t i = 0; i < r; ++i) rm(i, c - 1) = 2.0 * rm(i, 0);
    }
    const Matrix m = complement_basis(rm, r);
    const Matrix l = random_matrix(rng, r, r);
    const Matrix d = l * l.transpose() + 0.1 * Matrix::identity(r);
    const Matrix lhs = projector(symmetric_sqrt(d) * rm);
    const Matrix rhs = Matrix::identity(r) - projector(symmetric_inverse_sqrt(d) * m);
    worst = std::max(worst, norm_inf(lhs - rhs));
  }
  return at_most("weighted complement: P_{D^1/2 R} = I - P_{D^-1/2 M}", kProjectorInstances, worst,
                 kProjectorTolerance);
}

std::vector<CheckResult> check_numerator_projector(Rng& rng) {
  double annihilate = 0.0;
  double trace_err = 0.0;
  double null_delta = 0.0;
  double alt_delta = std::numeric_limits<double>::infinity();
  std::size_t control_failures = 0;
  std::size_t cases = 0;
  for (std::size_t inst = 0; inst < kProjectorInstances; ++inst) {
    const Dataset d = random_layout(rng);
    const Matrix k = cell_means_design(d);
    for (Effect e : kEffects) {
      const Hypothesis h = two_factor_hypothesis(d, e).hypothesis;
      const Matrix p = hypothesis_projector(k, h);
      annihilate = std::max(annihilate, max_abs(p * (k * h.n)));
      trace_err = std::max(trace_err,
                           std::abs(trace(p) - static_cast<double>(expected_df(d, e))));

      const auto gamma = normal_vector(rng, h.n.cols());
      const auto beta_null = h.n * std::span<const double>(gamma);
      null_delta = std::max(null_delta, noncentrality(k, p, beta_null, 1.0));

      const auto beta_alt = normal_vector(rng, k.cols());
      if (max_abs(Matrix::column_vector(transpose_times(h.g, beta_alt))) > 1e-6) {
        alt_delta = std::min(alt_delta, noncentrality(k, p, beta_alt, 1.0));
      }

      // P_X is symmetric idempotent with range in sp(X) but sp(X'P_X) = sp(X') != sp(G).
      const Matrix px = projector(k);
      if (gram_schmidt(k.transpose() * px).rank == h.df) ++control_failures;
      ++cases;
    }
  }
  std::vector<CheckResult> out;
  out.push_back(at_most("numerator projector: P (XN) = 0", cases, annihilate, kProjectorTolerance));
  out.push_back(at_most("numerator projector: trace(P) = df", cases, trace_err, kProjectorTolerance));
  out.push_back(at_most("numerator projector: delta^2 = 0 when G'beta = 0", cases, null_delta,
                        kProjectorTolerance));
  CheckResult alt{"numerator projector: delta^2 > 0 when G'beta != 0", cases, alt_delta, 0.0,
                  alt_delta > 0.0, "worst is the smallest delta^2 observed"};
  out.push_back(std::move(alt));
  CheckResult control{"numerator projector: P_X is not an admissible numerator projector", cases,
                      static_cast<double>(control_failures), 0.0, control_failures == 0,
                      "worst counts layouts where P_X was not rejected"};
  out.push_back(std::move(control));
  return out;
}

std::vector<CheckResult> check_distribution(Rng& rng, std::size_t draws) {
  const Dataset d = random_layout(rng);
  const Matrix k = cell_means_design(d);
  const Hypothesis h = two_factor_hypothesis(d, Effect::A).hypothesis;
  const auto gamma = normal_vector(rng, h.n.cols(), 3.0);
  const auto beta = h.n * std::span<const double>(gamma);
  const double sigma2 = 2.0;
  const std::uint64_t sim_seed = static_cast<std::uint64_t>(rng.integer(0, 1u << 30));
  const SimulatedDraws sim = chi_square_simulation(k, h, beta, sigma2, draws, sim_seed);

  const double nu = static_cast<double>(sim.df_numerator);
  const double crit = ks_critical_1pct(draws);
  const std::string layout = std::to_string(d.a()) + "x" + std::to_string(d.b()) +
                             " layout, n = " + std::to_string(d.n_total()) +
                             ", nu = " + std::to_string(sim.df_numerator);

  std::vector<CheckResult> out;
  double mean = 0.0;
  for (double v : sim.numerator) mean += v;
  mean /= static_cast<double>(draws);
  out.push_back(at_most("null SS/sigma^2 mean = nu", draws, std::abs(mean - nu),
                        4.0 * std::sqrt(2.0 * nu / static_cast<double>(draws))));
  out.push_back(at_most("null SS/sigma^2 ~ chi-squared (KS distance)", draws,
                        ks_distance(sim.numerator, [nu](double x) { return chi_square_cdf(x, nu); }),
                        crit));
  out.push_back(at_most("null p-values ~ Uniform(0,1) (KS distance)", draws,
                        ks_distance(sim.p_values,
                                    [](double x) { return std::clamp(x, 0.0, 1.0); }),
                        crit));
  out.push_back(at_most("|corr(numerator SS, SSE)|", draws,
                        std::abs(pearson_correlation(sim.numerator, sim.error)),
                        4.0 / std::sqrt(static_cast<double>(draws))));
  for (auto& c : out) c.detail = layout;
  return out;
}

CheckResult check_balanced(Rng& rng) {
  double worst = 0.0;
  for (std::size_t inst = 0; inst < kBalancedInstances; ++inst) {
    const std::size_t a = rng.integer(2, 4);
    const std::size_t b = rng.integer(2, 4);
    const std::size_t n = rng.integer(1, 5);
    const Dataset d = balanced_dataset(rng, a, b, n);
    const auto y = d.responses();

    std::vector<double> row_sum(a, 0.0);
    double grand = 0.0;
    for (std::size_t s = 0; s < y.size(); ++s) {
      row_sum[d.cell_of(s) / b] += y[s];
      grand += y[s];
    }
    grand /= static_cast<double>(y.size());
    double classical = 0.0;
    for (double rs : row_sum) {
      const double dev = rs / static_cast<double>(n * b) - grand;
      classical += dev * dev;
    }
    classical *= static_cast<double>(n * b);

    const double q = ss_mwsm(d, Effect::A, y);
    worst = std::max(worst, std::abs(q - classical) / std::max(std::abs(classical), 1e-300));
  }
  return at_most("balanced layouts: weighted squares of means = classical SS_A (relative)",
                 kBalancedInstances, worst, 1e-10);
}

std::vector<CheckResult> check_incomplete_beta() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (int i = 0; i < 20; ++i) {
    const double x = (i + 0.5) / 20.0;
    for (int ia = 0; ia < 20; ++ia) {
      const double a = 0.5 + 0.75 * ia;
      for (int ib = 0; ib < 20; ++ib) {
        const double b = 0.5 + 0.75 * ib;
        const double s =
            regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(1.0 - x, b, a);
        worst = std::max(worst, std::abs(s - 1.0));
        ++cases;
      }
    }
  }
  std::vector<CheckResult> out;
  out.push_back(at_most("I_x(a,b) + I_{1-x}(b,a) = 1", cases, worst, 1e-12));
  out.push_back(at_most("F(1,1) survival at 1 = 0.5", 1, std::abs(f_survival(1.0, 1.0, 1.0) - 0.5),
                        1e-9));
  return out;
}

}  // namespace

bool VerifyReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  VerifyReport report;
  report.config = cfg;
  Rng master(cfg.seed);
  auto append = [&](std::vector<CheckResult> more) {
    for (auto& c : more) report.checks.push_back(std::move(c));
  };

  Rng equivalence_rng = master.split();
  Rng complement_rng = master.split();
  Rng projector_rng = master.split();
  Rng distribution_rng = master.split();
  Rng balanced_rng = master.split();

  report.checks.push_back(check_equivalence(equivalence_rng, cfg.instances, cfg.corrupt));
  report.checks.push_back(check_weighted_complement(complement_rng));
  append(check_numerator_projector(projector_rng));
  append(check_distribution(distribution_rng, cfg.draws));
  report.checks.push_back(check_balanced(balanced_rng));
  append(check_incomplete_beta());
  return report;
}

std::string render_text(const VerifyReport& report) {
  std::ostringstream out;
  out << "verify: seed " << report.config.seed << ", " << report.config.instances
      << " equivalence instances, " << report.config.draws << " draws"
      << (report.config.corrupt ? " [corrupted Yates form]" : "") << "\n";
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": worst " << format_number(c.worst)
        << " (threshold " << format_number(c.threshold) << ", " << c.cases << " cases)";
    if (!c.detail.empty()) out << " [" << c.detail << "]";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed" : "CHECKS FAILED") << '\n';
  return out.str();
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"cases", c.cases},
                      {"worst", c.worst},
                      {"threshold", c.threshold},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  return {{"seed", report.config.seed},
          {"instances", report.config.instances},
          {"draws", report.config.draws},
          {"corrupt", report.config.corrupt},
          {"checks", checks},
          {"passed", report.passed()}};
}

}  // namespace yates::app
