#include "randnla/sketch.hpp"

#include <algorithm>
#include <cmath>

#include "randnla/core.hpp"
#include "randnla/kmeans.hpp"
#include "randnla/rng.hpp"

namespace randnla {

namespace {

// Bucket/sign stream keyed by (seed, column index); independent of the
// order in which columns are visited.
std::pair<Index, double> count_sketch_hash(std::uint64_t seed, Index j,
                                           Index s) {
  std::uint64_t state =
      seed ^ (0xa0761d6478bd642fULL +
              static_cast<std::uint64_t>(j) * 0xe7037ed1a0b428dbULL);
  const std::uint64_t h1 = splitmix64(state);
  const std::uint64_t h2 = splitmix64(state);
  const Index bucket = static_cast<Index>(h1 % static_cast<std::uint64_t>(s));
  const double sign = (h2 & 1ULL) ? 1.0 : -1.0;
  return {bucket, sign};
}

Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

DenseMatrix gaussian_sketch(const DenseMatrix& a, Index s,
                            std::uint64_t seed) {
  require(s >= 1, "gaussian_sketch: s < 1");
  Rng rng = make_rng(seed);
  DenseMatrix g = gaussian_matrix(a.cols(), s, rng);
  return a * (g / std::sqrt(static_cast<double>(s)));
}

void fwht_inplace(double* data, Index n) {
  for (Index h = 1; h < n; h *= 2) {
    for (Index i = 0; i < n; i += 2 * h) {
      for (Index j = i; j < i + h; ++j) {
        const double x = data[j];
        const double y = data[j + h];
        data[j] = x + y;
        data[j + h] = x - y;
      }
    }
  }
}

DenseMatrix srht_sketch(const DenseMatrix& a, Index s, std::uint64_t seed) {
  const Index n = a.cols();
  const Index big_n = next_pow2(n);
  require(s >= 1 && s <= big_n, "srht_sketch: s > padded dimension");
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  Vector signs(n);
  for (Index j = 0; j < n; ++j) signs(j) = coin(rng) ? 1.0 : -1.0;
  const std::vector<Index> idx = sample_without_replacement(big_n, s, rng);

  // The subsampled transform is unbiased with the 1/sqrt(s) scaling on the
  // unnormalized Hadamard recursion: (1/sqrt(N)) D H_N is orthogonal and
  // the sqrt(N/s) subsampling correction cancels the 1/sqrt(N).
  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  DenseMatrix c(a.rows(), s);
  std::vector<double> row(static_cast<std::size_t>(big_n));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = a(i, j) * signs(j);
    std::fill(row.begin() + static_cast<std::size_t>(n), row.end(), 0.0);
    fwht_inplace(row.data(), big_n);
    for (Index t = 0; t < s; ++t)
      c(i, t) = row[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] * scale;
  }
  return c;
}

DenseMatrix count_sketch_stream(Index m, Index n, Index s, std::uint64_t seed,
                                const std::function<Vector(Index)>& column) {
  require(s >= 1, "count_sketch: s < 1");
  DenseMatrix c = DenseMatrix::Zero(m, s);
  for (Index j = 0; j < n; ++j) {
    const auto [bucket, sign] = count_sketch_hash(seed, j, s);
    c.col(bucket) += sign * column(j);
  }
  return c;
}

DenseMatrix count_sketch(const DenseMatrix& a, Index s, std::uint64_t seed) {
  return count_sketch_stream(a.rows(), a.cols(), s, seed,
                             [&a](Index j) -> Vector { return a.col(j); });
}

DenseMatrix count_sketch_operator(Index n, Index s, std::uint64_t seed) {
  DenseMatrix op = DenseMatrix::Zero(n, s);
  for (Index j = 0; j < n; ++j) {
    const auto [bucket, sign] = count_sketch_hash(seed, j, s);
    op(j, bucket) = sign;
  }
  return op;
}

DenseMatrix combined_sketch(const DenseMatrix& a, const SketchSpec& spec) {
  require(spec.kind == SketchKind::kCombined && spec.stage2 != nullptr,
          "combined_sketch: spec is not a combined sketch");
  const SketchSpec& stage2 = *spec.stage2;
  require(stage2.s <= spec.s, "combined_sketch: s > s_cs");
  DenseMatrix mid = count_sketch(a, spec.s, spec.seed);
  switch (stage2.kind) {
    case SketchKind::kGaussian:
      return gaussian_sketch(mid, stage2.s, stage2.seed);
    case SketchKind::kSrht:
      return srht_sketch(mid, stage2.s, stage2.seed);
    default:
      throw std::invalid_argument(
          "combined_sketch: stage2 must be gaussian or srht");
  }
}

std::pair<DenseMatrix, ColumnSelection> uniform_sample_columns(
    const DenseMatrix& a, Index s, std::uint64_t seed) {
  const Index n = a.cols();
  require(s >= 1 && s <= n, "uniform_sample_columns: s > n");
  Rng rng = make_rng(seed);
  ColumnSelection sel;
  sel.indices = sample_without_replacement(n, s, rng);
  DenseMatrix c(a.rows(), s);
  for (Index t = 0; t < s; ++t)
    c.col(t) = a.col(sel.indices[static_cast<std::size_t>(t)]);
  return {std::move(c), std::move(sel)};
}

Vector leverage_scores(const DenseMatrix& a, std::optional<Index> k) {
  SvdFactors f = k ? truncated_svd(a, *k) : condensed_svd(a);
  return f.V.rowwise().squaredNorm();
}

std::pair<DenseMatrix, ColumnSelection> leverage_sample_columns(
    const DenseMatrix& a, Index s, std::uint64_t seed, std::optional<Index> k,
    bool scale) {
  require(s >= 1, "leverage_sample_columns: s < 1");
  const Vector scores = leverage_scores(a, k);
  const double rho = scores.sum();
  Rng rng = make_rng(seed);
  std::vector<Index> draws = sample_with_replacement(scores, s, rng);
  std::sort(draws.begin(), draws.end());
  draws.erase(std::unique(draws.begin(), draws.end()), draws.end());

  ColumnSelection sel;
  sel.indices = draws;
  DenseMatrix c(a.rows(), static_cast<Index>(draws.size()));
  Vector weights(static_cast<Index>(draws.size()));
  for (std::size_t t = 0; t < draws.size(); ++t) {
    const Index j = draws[t];
    weights(static_cast<Index>(t)) =
        std::sqrt(rho / (static_cast<double>(s) * scores(j)));
    c.col(static_cast<Index>(t)) = a.col(j);
    if (scale) c.col(static_cast<Index>(t)) *= weights(static_cast<Index>(t));
  }
  if (scale) sel.weights = std::move(weights);
  return {std::move(c), std::move(sel)};
}

DenseMatrix landmark_select(const DenseMatrix& a, Index s, int iters,
                            std::uint64_t seed) {
  require(s >= 1 && s <= a.cols(), "landmark_select: s > n");
  const DenseMatrix points = a.transpose();
  KmeansResult km = kmeans_once(points, s, iters, seed);
  return km.centroids.transpose();
}

DenseMatrix apply_sketch(const DenseMatrix& a, const SketchSpec& spec) {
  switch (spec.kind) {
    case SketchKind::kGaussian:
      return gaussian_sketch(a, spec.s, spec.seed);
    case SketchKind::kSrht:
      return srht_sketch(a, spec.s, spec.seed);
    case SketchKind::kCountSketch:
      return count_sketch(a, spec.s, spec.seed);
    case SketchKind::kUniformColumns:
      return uniform_sample_columns(a, spec.s, spec.seed).first;
    case SketchKind::kLeverageColumns:
      return leverage_sample_columns(a, spec.s, spec.seed, spec.leverage_rank,
                                     spec.scale_columns)
          .first;
    case SketchKind::kLandmarkColumns:
      return landmark_select(a, spec.s, /*iters=*/5, spec.seed);
    case SketchKind::kCombined:
      return combined_sketch(a, spec);
  }
  throw std::invalid_argument("apply_sketch: unknown kind");
}

double estimate_gamma(const DenseMatrix& a, const SketchSpec& spec, int trials,
                      std::uint64_t seed) {
  require(a.rows() <= a.cols(), "estimate_gamma: m > n");
  require(trials >= 1, "estimate_gamma: trials < 1");
  const DenseMatrix sketched = apply_sketch(a, spec);
  Rng rng = make_rng(derive_seed(seed, 0xabced));
  double gamma = 1.0;
  for (int t = 0; t < trials; ++t) {
    const Vector y = gaussian_unit_vector(a.rows(), rng);
    const double den = (y.transpose() * a).squaredNorm();
    if (den == 0.0) continue;  // rank-deficient direction
    const double num = (y.transpose() * sketched).squaredNorm();
    const double r = num / den;
    gamma = std::max({gamma, r, 1.0 / r});
  }
  return gamma;
}

EtaEstimate estimate_eta(const DenseMatrix& a, const DenseMatrix& c, Index k) {
  require(k >= 1 && k <= c.cols(), "estimate_eta: k > cols(C)");
  const SvdFactors ak = truncated_svd(a, k);
  const double den = (a - ak.reconstruct()).squaredNorm();
  if (den <= 1e-12 * a.squaredNorm())
    throw std::invalid_argument("estimate_eta: A has rank <= k");

  const DenseMatrix q = condensed_svd(c).U;  // orthonormal basis of range(C)
  const DenseMatrix b = q.transpose() * a;
  const double proj = (a - q * b).squaredNorm();

  // min over rank-k X of |A - C X|_F^2 equals |A - Q (Q'A)_k|_F^2.
  const SvdFactors bk = truncated_svd(b, std::min(k, std::min(b.rows(), b.cols())));
  const double best = (a - q * bk.reconstruct()).squaredNorm();
  return {proj / den, best / den};
}

}  // namespace randnla
