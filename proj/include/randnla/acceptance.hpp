#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace randnla {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;  // measured numbers, human readable
  std::map<std::string, double> metrics;
};

inline constexpr int kCriterionCount = 13;

/// Runs one acceptance criterion (1-based id).
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs the full suite. `threads` caps fan-out; 0 reads RANDNLA_THREADS
/// (default 1). Results come back ordered by id.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            int threads = 0);

}  // namespace randnla
