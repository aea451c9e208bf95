#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "yates/design.hpp"
#include "yates/hypothesis.hpp"
#include "yates/linalg.hpp"
#include "yates/sumsquares.hpp"

namespace yates::app {

enum class Method { yates, rmfm, pearson, geometric, mwsm };
enum class OutputFormat { text, json };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view text);

/// "all" or a comma list such as "A,AB". Throws std::invalid_argument on unknown names.
std::vector<Effect> parse_effect_list(std::string_view text);
/// "all" or a comma list such as "rmfm,yates".
std::vector<Method> parse_method_list(std::string_view text);

struct RunConfig {
  std::string input_path;
  std::string response_column;
  /// First entry is factor A.
  std::array<std::string, 2> factor_columns;
  std::vector<Effect> effects{Effect::A, Effect::B, Effect::AB};
  std::vector<Method> methods{Method::rmfm, Method::geometric, Method::pearson, Method::yates,
                              Method::mwsm};
  OutputFormat format = OutputFormat::text;
  double tol = kDefaultTolerance;
  double agreement_tol = kDefaultAgreementTolerance;
  std::optional<std::uint64_t> seed;
};

struct EffectRow {
  Effect effect = Effect::A;
  std::size_t df = 0;
  /// Requested methods in request order; mwsm is omitted for AB.
  std::vector<std::pair<Method, double>> ss;
  double discrepancy = 0.0;
  bool agrees = true;
  std::optional<double> f;
  std::optional<double> p;
  /// Why f/p are missing, if they are.
  std::string note;
};

struct ErrorRow {
  double ss = 0.0;
  std::size_t df = 0;
  std::optional<double> mse;
};

struct AnovaReport {
  RunConfig config;
  std::vector<std::string> levels_a;
  std::vector<std::string> levels_b;
  std::size_t n_total = 0;
  std::vector<EffectRow> effects;
  ErrorRow error;
  bool saturated = false;

  /// True when every requested test completed and all methods agreed.
  bool complete() const;
};

/// Loads cfg.input_path and runs the requested tests.
AnovaReport run_anova(const RunConfig& cfg);
AnovaReport run_anova(const RunConfig& cfg, const Dataset& data);

std::string render_text(const AnovaReport& report);
nlohmann::json to_json(const AnovaReport& report);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_number(double v);

}  // namespace yates::app
