#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stingray/census.hpp"
#include "stingray/sampler.hpp"

namespace stingray {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  uint32_t max_e = 8;
  uint32_t max_q = 16;
  double trial_scale = 1.0;  // scales every Monte Carlo trial count
  uint32_t workers = 0;      // 0 = hardware concurrency (capped at 8)
  bool verbose = false;
};

/// Runs the verification battery (the acceptance criteria) and returns one
/// result per criterion.  Pass iff every non-skipped criterion passes.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

bool all_pass(const std::vector<CriterionResult>& results);

/// One line per criterion, e.g. "[PASS] criterion 3: rank census ... (0.1s)".
std::string format_result_line(const CriterionResult& r);

uint32_t default_workers();

/// The standard Monte Carlo battery of criterion 7 (shared with the CLI).
struct BatteryOutcome {
  std::vector<TrialReport> trials;
  std::vector<ChiSquareReport> chis;
  bool pass = true;
};
BatteryOutcome run_standard_battery(double scale, uint32_t workers);

}  // namespace stingray
