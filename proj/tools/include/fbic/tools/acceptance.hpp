#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbic/alamouti.hpp"
#include "fbic/gaussian_bounds.hpp"

namespace fbic::tools {

struct AcceptanceConfig {
  /// Gap bounds checked by criterion 1. Lowering them is the suite's
  /// negative control.
  double weak_gap_bound = gauss::kWeakGapBound;
  double strong_gap_bound = gauss::kStrongGapBound;
  int egc_restarts = 200;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = alamouti::kDefaultSeed;
  /// Criterion ids to run (1..8); empty runs all of them.
  std::vector<int> only;
  /// Count a criterion as failed when it runs past its time budget.
  bool enforce_budgets = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  bool passed = false;
  /// One line per sub-check with the measured value and its tolerance.
  std::vector<std::string> details;
};

inline constexpr int kCriterionCount = 8;

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);

bool all_passed(const std::vector<CriterionResult>& results);

/// One "[PASS]"/"[FAIL]" line per criterion, details indented beneath.
std::string format_table(const std::vector<CriterionResult>& results);

std::string format_json(const std::vector<CriterionResult>& results);

}  // namespace fbic::tools
