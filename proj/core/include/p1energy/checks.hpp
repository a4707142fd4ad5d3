#pragma once

#include <string>
#include <vector>

namespace p1energy::checks {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  // Reduced sample counts for a fast smoke run; the acceptance gate runs full.
  bool quick = false;
  // Test fixture: deliberately offsets the expected value of one criterion
  // so failure propagation can be exercised end to end. 0 = off.
  int corrupt = 0;
  std::uint64_t seed = 20240915;
};

std::vector<CriterionResult> run_acceptance(const Options& opts = {});

// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace p1energy::checks
