#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace isolens {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> criteria;  ///< empty: all of 1..10
  int threads = 0;
  std::uint64_t seed = 42;
  int oracle_density = 400;
  /// Called as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 10;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3  cusp bifurcation: <detail> (0.01 s)"
std::string format_result(const CriterionResult& r);

}  // namespace isolens
