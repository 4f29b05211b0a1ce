#include "randnla/rng.hpp"

#include <algorithm>
#include <numeric>

namespace randnla {

DenseMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

Vector gaussian_unit_vector(Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  double norm2 = 0.0;
  do {
    for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v / std::sqrt(norm2);
}

std::vector<Index> sample_without_replacement(Index n, Index count, Rng& rng) {
  require(count >= 0 && count <= n, "sample_without_replacement: count > n");
  // Partial Fisher-Yates over an index array.
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < count; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<Index> sample_with_replacement(const Vector& weights, Index count,
                                           Rng& rng) {
  require(count >= 1, "sample_with_replacement: count < 1");
  const Index n = weights.size();
  Vector cum(n);
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    require(weights(i) >= 0.0, "sample_with_replacement: negative weight");
    total += weights(i);
    cum(i) = total;
  }
  require(total > 0.0, "sample_with_replacement: all weights zero");
  std::uniform_real_distribution<double> unif(0.0, total);
  std::vector<Index> out(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const double u = unif(rng);
    const double* begin = cum.data();
    const double* pos = std::upper_bound(begin, begin + n, u);
    Index j = static_cast<Index>(pos - begin);
    if (j >= n) j = n - 1;
    out[static_cast<std::size_t>(i)] = j;
  }
  return out;
}

}  // namespace randnla
