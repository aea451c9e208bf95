#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace yates::app {

struct VerifyConfig {
  std::uint64_t seed = 0;
  /// Random unbalanced layouts in the equivalence check.
  std::size_t instances = 200;
  /// Monte-Carlo draws in the distributional checks.
  std::size_t draws = 10000;
  /// Negative control: replaces the weighted Yates form with an unweighted one.
  bool corrupt = false;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  /// Worst observed value of the checked quantity.
  double worst = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs the randomized equivalence, projector, distributional and special-function checks.
VerifyReport run_verify(const VerifyConfig& cfg);

std::string render_text(const VerifyReport& report);
nlohmann::json to_json(const VerifyReport& report);

}  // namespace yates::app
