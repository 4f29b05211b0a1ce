#pragma once

#include <cstdint>
#include <optional>

#include "randnla/sketch.hpp"
#include "randnla/types.hpp"

namespace randnla {

struct KsvdResult {
  SvdFactors factors;
  int passes_over_a = 0;
  std::optional<double> error_fro;  // |A - U S V'|_F, on request
};

struct KsvdOptions {
  bool evaluate_error = false;
};

/// Block Lanczos k-SVD: Krylov block [C, (AA')C, ..., (AA')^{q-1} C] with
/// s = 2k, per-block QR plus re-orthonormalization against the accumulated
/// basis. A rank collapse of the Krylov block truncates its width.
KsvdResult block_lanczos_ksvd(const DenseMatrix& a, Index k, int q,
                              std::uint64_t seed, const KsvdOptions& opts = {});

/// Prototype randomized k-SVD: C = A S, QR, rank-k SVD of Q_C' A,
/// U = Q_C Ubar. Exactly two passes over A.
KsvdResult prototype_ksvd(const DenseMatrix& a, Index k, Index s,
                          std::uint64_t seed,
                          const SketchSpec* spec = nullptr,
                          const KsvdOptions& opts = {});

/// Faster randomized k-SVD: count sketch C = A S, then a joint row sketch
/// of [A, C] by count sketch (p_cs) followed by Gaussian projection (p)
/// producing D and L; QR of D, rank-k SVD of Q_D' L, back-substitution
/// through C R_D^+ Ubar Sbar and a final small SVD. Exactly two passes
/// over A. Parameter ordering k < s < p < p_cs is enforced.
KsvdResult faster_ksvd(const DenseMatrix& a, Index k, Index s, Index p_cs,
                       Index p, std::uint64_t seed,
                       const KsvdOptions& opts = {});

}  // namespace randnla
