#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "randnla/types.hpp"

namespace randnla {

enum class SketchKind {
  kGaussian,
  kSrht,
  kCountSketch,
  kUniformColumns,
  kLeverageColumns,
  kLandmarkColumns,
  kCombined,
};

/// Declarative description of a sketching operator S (n -> s columns).
struct SketchSpec {
  SketchKind kind = SketchKind::kGaussian;
  Index s = 1;
  std::uint64_t seed = 0;
  std::shared_ptr<const SketchSpec> stage2;  // combined: dense stage after count sketch
  bool scale_columns = false;                // column-selection kinds only
  std::optional<Index> leverage_rank;        // leverage sampling w.r.t. A_k

  static SketchSpec gaussian(Index s, std::uint64_t seed) {
    return {SketchKind::kGaussian, s, seed, nullptr, false, std::nullopt};
  }
  static SketchSpec srht(Index s, std::uint64_t seed) {
    return {SketchKind::kSrht, s, seed, nullptr, false, std::nullopt};
  }
  static SketchSpec count_sketch(Index s, std::uint64_t seed) {
    return {SketchKind::kCountSketch, s, seed, nullptr, false, std::nullopt};
  }
  static SketchSpec uniform_columns(Index s, std::uint64_t seed) {
    return {SketchKind::kUniformColumns, s, seed, nullptr, false, std::nullopt};
  }
  static SketchSpec combined(Index s_cs, SketchSpec dense_stage,
                             std::uint64_t seed) {
    SketchSpec spec;
    spec.kind = SketchKind::kCombined;
    spec.s = s_cs;
    spec.seed = seed;
    spec.stage2 = std::make_shared<const SketchSpec>(std::move(dense_stage));
    return spec;
  }
};

/// Provenance of a column-selection sketch.
struct ColumnSelection {
  std::vector<Index> indices;           // strictly increasing, < n
  std::optional<Vector> weights;        // aligned with indices, all positive
};

DenseMatrix gaussian_sketch(const DenseMatrix& a, Index s, std::uint64_t seed);

/// C = A * S with S the subsampled randomized Hadamard transform, applied
/// with zero padding to N = next power of two >= n. The transform row pass
/// runs in O(N log N).
DenseMatrix srht_sketch(const DenseMatrix& a, Index s, std::uint64_t seed);

/// In-place fast Walsh-Hadamard transform of a length-2^q buffer
/// (unnormalized: H_N has entries +/-1).
void fwht_inplace(double* data, Index n);

/// Streaming count sketch: a single pass over the columns delivered by
/// `column` (called exactly once per j in [0, n)).
DenseMatrix count_sketch_stream(Index m, Index n, Index s, std::uint64_t seed,
                                const std::function<Vector(Index)>& column);

DenseMatrix count_sketch(const DenseMatrix& a, Index s, std::uint64_t seed);

/// The implied n x s sketching matrix S: row j has a single signed unit
/// entry at the bucket of column j. Materializable at small n for tests.
DenseMatrix count_sketch_operator(Index n, Index s, std::uint64_t seed);

/// Count sketch to spec.s columns, then the dense stage (gaussian or srht)
/// described by spec.stage2.
DenseMatrix combined_sketch(const DenseMatrix& a, const SketchSpec& spec);

std::pair<DenseMatrix, ColumnSelection> uniform_sample_columns(
    const DenseMatrix& a, Index s, std::uint64_t seed);

/// Column leverage scores: squared row norms of the right singular vectors
/// of A (or of A_k when k is given). They sum to rank(A) (resp. k).
Vector leverage_scores(const DenseMatrix& a, std::optional<Index> k = {});

/// s draws with replacement proportional to the leverage scores, then
/// deduplicated; the effective (possibly smaller) selection is reported.
/// With scale on, selected columns are multiplied by sqrt(rho / (s * l_i)).
std::pair<DenseMatrix, ColumnSelection> leverage_sample_columns(
    const DenseMatrix& a, Index s, std::uint64_t seed,
    std::optional<Index> k = {}, bool scale = false);

/// s centroids of k-means over the columns of A (local landmark selection).
DenseMatrix landmark_select(const DenseMatrix& a, Index s, int iters,
                            std::uint64_t seed);

/// Applies the operator described by `spec` to A, returning A * S.
DenseMatrix apply_sketch(const DenseMatrix& a, const SketchSpec& spec);

/// Empirical subspace-embedding factor: max over `trials` random unit
/// probes y of max(r, 1/r), r = |y'AS|^2 / |y'A|^2. Directions with
/// y'A = 0 are skipped.
double estimate_gamma(const DenseMatrix& a, const SketchSpec& spec, int trials,
                      std::uint64_t seed);

/// Empirical low-rank approximation quality factors:
///   eta_proj = |A - C C^+ A|_F^2 / |A - A_k|_F^2
///   eta_best = min_{rank(X)<=k} |A - C X|_F^2 / |A - A_k|_F^2
struct EtaEstimate {
  double eta_proj;
  double eta_best;
};
EtaEstimate estimate_eta(const DenseMatrix& a, const DenseMatrix& c, Index k);

}  // namespace randnla
