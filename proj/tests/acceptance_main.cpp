// Acceptance gate: one pass/fail line per criterion; exits nonzero when
// any criterion fails.

#include <cstdio>
#include <cstdlib>

#include "randnla/acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42ULL;
  const auto results = randnla::run_acceptance(seed);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d %-22s %s  %s\n", r.id, r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.summary.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%d/%d criteria passed\n",
              static_cast<int>(results.size()) - failures,
              static_cast<int>(results.size()));
  return failures == 0 ? 0 : 1;
}
