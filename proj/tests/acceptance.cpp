// Acceptance suite: runs every verification criterion at full scale and
// prints one pass/fail line per criterion.  Exit 0 iff all criteria pass.
//
// Scale knobs for interactive runs:
//   ACCEPTANCE_TRIAL_SCALE   multiplies every Monte Carlo trial count
//   ACCEPTANCE_WORKERS       worker threads (default: hardware, capped at 8)

#include <cstdio>
#include <cstdlib>

#include "stingray/verify.hpp"

int main() {
  stingray::set_verify_mode(true);
  stingray::VerifyOptions opt;
  if (const char* s = std::getenv("ACCEPTANCE_TRIAL_SCALE")) opt.trial_scale = std::atof(s);
  if (const char* w = std::getenv("ACCEPTANCE_WORKERS")) opt.workers = std::atoi(w);
  if (opt.trial_scale <= 0) opt.trial_scale = 1.0;

  auto results = stingray::run_acceptance(opt);
  for (const auto& r : results) std::printf("%s\n", stingray::format_result_line(r).c_str());
  const bool ok = stingray::all_pass(results);
  std::printf("%s\n", ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
  return ok ? 0 : 1;
}
