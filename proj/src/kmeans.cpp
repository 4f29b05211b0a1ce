#include "randnla/kmeans.hpp"

#include <limits>

#include "randnla/rng.hpp"

namespace randnla {

KmeansResult kmeans_once(const DenseMatrix& points, Index k, int iters,
                         std::uint64_t seed) {
  const Index n = points.rows();
  const Index d = points.cols();
  require(k >= 1 && k <= n, "kmeans: k out of range");
  Rng rng = make_rng(seed);

  KmeansResult res;
  res.centroids.resize(k, d);
  const std::vector<Index> init = sample_without_replacement(n, k, rng);
  for (Index c = 0; c < k; ++c) res.centroids.row(c) = points.row(init[c]);

  res.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);

  for (int it = 0; it < iters; ++it) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Index c = 0; c < k; ++c) {
        const double dd = (points.row(i) - res.centroids.row(c)).squaredNorm();
        if (dd < best) {
          best = dd;
          arg = static_cast<int>(c);
        }
      }
      dist[static_cast<std::size_t>(i)] = best;
      if (res.labels[static_cast<std::size_t>(i)] != arg) {
        res.labels[static_cast<std::size_t>(i)] = arg;
        changed = true;
      }
    }
    res.iterations = it + 1;

    std::fill(counts.begin(), counts.end(), Index{0});
    DenseMatrix sums = DenseMatrix::Zero(k, d);
    for (Index i = 0; i < n; ++i) {
      const int c = res.labels[static_cast<std::size_t>(i)];
      sums.row(c) += points.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        res.centroids.row(c) =
            sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Repair an empty cluster with the farthest point.
        Index far = 0;
        double fd = -1.0;
        for (Index i = 0; i < n; ++i) {
          if (dist[static_cast<std::size_t>(i)] > fd) {
            fd = dist[static_cast<std::size_t>(i)];
            far = i;
          }
        }
        res.centroids.row(c) = points.row(far);
        res.labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
        dist[static_cast<std::size_t>(far)] = 0.0;
        changed = true;
      }
    }
    if (!changed && it > 0) break;
  }

  res.objective = 0.0;
  for (Index i = 0; i < n; ++i)
    res.objective +=
        (points.row(i) - res.centroids.row(res.labels[static_cast<std::size_t>(i)]))
            .squaredNorm();
  return res;
}

KmeansResult kmeans(const DenseMatrix& points, Index k, int iters,
                    int replicates, std::uint64_t seed) {
  require(replicates >= 1, "kmeans: replicates < 1");
  KmeansResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int r = 0; r < replicates; ++r) {
    KmeansResult cur =
        kmeans_once(points, k, iters, derive_seed(seed, 1000 + static_cast<std::uint64_t>(r)));
    if (cur.objective < best_obj) {
      best_obj = cur.objective;
      best = std::move(cur);
    }
  }
  return best;
}

}  // namespace randnla
