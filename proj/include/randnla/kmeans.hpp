#pragma once

#include <cstdint>
#include <vector>

#include "randnla/types.hpp"

namespace randnla {

struct KmeansResult {
  std::vector<int> labels;     // length n, values in [0, k)
  DenseMatrix centroids;       // k x d
  double objective = 0.0;      // sum of squared distances to assigned centroid
  int iterations = 0;
};

/// Lloyd iterations over the rows of `points` (n x d), seeded random-subset
/// initialization. Empty clusters are repaired by reassigning the point
/// farthest from its centroid. Runs at most `iters` iterations; stops early
/// when assignments no longer change.
KmeansResult kmeans_once(const DenseMatrix& points, Index k, int iters,
                         std::uint64_t seed);

/// Best of `replicates` runs by squared-distance objective, each replicate
/// with a seed derived from `seed`.
KmeansResult kmeans(const DenseMatrix& points, Index k, int iters,
                    int replicates, std::uint64_t seed);

}  // namespace randnla
