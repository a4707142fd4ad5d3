// Acceptance gate: runs every criterion at full scale, prints one line per
// criterion, exits nonzero if any fails.
//
// Usage: acceptance [--quick] [--seed N] [--corrupt K]

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "p1energy/checks.hpp"

int main(int argc, char** argv) {
  p1energy::checks::Options opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      opts.quick = true;
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (std::strcmp(argv[i], "--corrupt") == 0 && i + 1 < argc) {
      opts.corrupt = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "unknown argument: %s\n", argv[i]);
      return 2;
    }
  }
  auto results = p1energy::checks::run_acceptance(opts);
  for (const auto& r : results) {
    std::printf("%s criterion %2d [%6.2fs] %s: %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.seconds, r.name.c_str(), r.detail.c_str());
  }
  const bool ok = p1energy::checks::all_passed(results);
  std::printf("%s: %zu criteria\n", ok ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return ok ? 0 : 1;
}
