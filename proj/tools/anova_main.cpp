// anova: two-factor ANOVA tables with every numerator sum-of-squares formulation.
//
//   anova --input data.csv --response y --factors fa,fb [--effects ...] [--methods ...]
//   anova verify --seed 42 [--instances 200] [--draws 10000]

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "yates/app/anova.hpp"
#include "yates/app/csv.hpp"
#include "yates/app/verify.hpp"
#include "yates/errors.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kIncomplete = 2,
  kDisagreement = 3,
};

}  // namespace

int main(int argc, char** argv) {
  using namespace yates::app;

  CLI::App app{"Numerator sums of squares and F tests for unbalanced two-factor ANOVA"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string factors;
  std::string effects = "all";
  std::string methods = "all";
  std::string format = "text";
  app.add_option("--input", cfg.input_path, "CSV file with a header row");
  app.add_option("--response", cfg.response_column, "Response column name");
  app.add_option("--factors", factors, "Factor columns A,B");
  app.add_option("--effects", effects, "A,B,AB or all")->capture_default_str();
  app.add_option("--methods", methods, "yates,rmfm,pearson,geometric,mwsm or all")
      ->capture_default_str();
  app.add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "Relative rank tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--agreement-tol", cfg.agreement_tol, "Relative agreement tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VerifyConfig vcfg;
  std::string verify_format = "text";
  auto* verify = app.add_subcommand("verify", "Run the randomized equivalence and distribution checks");
  verify->add_option("--seed", vcfg.seed, "Random seed")->required();
  verify->add_option("--instances", vcfg.instances, "Equivalence instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--draws", vcfg.draws, "Monte-Carlo draws")
      ->check(CLI::Range(std::size_t{10}, std::size_t{100000000}))
      ->capture_default_str();
  verify->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_flag("--corrupt", vcfg.corrupt, "Debug: corrupt one formulation")->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const VerifyReport report = run_verify(vcfg);
      if (verify_format == "json") {
        std::cout << to_json(report).dump(2) << '\n';
      } else {
        std::cout << render_text(report);
      }
      return report.passed() ? kOk : kFailure;
    }

    if (cfg.input_path.empty() || cfg.response_column.empty() || factors.empty()) {
      std::cerr << "error: --input, --response and --factors are required\n"
                << app.help();
      return kFailure;
    }
    const auto comma = factors.find(',');
    if (comma == std::string::npos || factors.find(',', comma + 1) != std::string::npos) {
      std::cerr << "error: --factors takes exactly two column names, e.g. --factors a,b\n";
      return kFailure;
    }
    cfg.factor_columns = {factors.substr(0, comma), factors.substr(comma + 1)};
    cfg.effects = parse_effect_list(effects);
    cfg.methods = parse_method_list(methods);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;

    const AnovaReport report = run_anova(cfg);
    if (cfg.format == OutputFormat::json) {
      std::cout << to_json(report).dump(2) << '\n';
    } else {
      std::cout << render_text(report);
    }
    if (report.saturated) return kIncomplete;
    for (const auto& row : report.effects) {
      if (!row.agrees) return kDisagreement;
    }
    return report.complete() ? kOk : kIncomplete;
  } catch (const yates::EmptyCellError& e) {
    std::cerr << "EmptyCellError: " << e.what() << '\n';
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kFailure;
}
