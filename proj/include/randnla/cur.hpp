#pragma once

#include <cstdint>
#include <vector>

#include "randnla/types.hpp"

namespace randnla {

/// A ~= C U R with C, R verbatim columns/rows of the source.
struct CurFactors {
  DenseMatrix C;  // m x c
  DenseMatrix U;  // c x r
  DenseMatrix R;  // r x n
  std::vector<Index> col_indices;     // S_C, strictly increasing
  std::vector<Index> row_indices;     // S_R, strictly increasing
  std::vector<Index> secondary_rows;  // effective P_C (faster variants)
  std::vector<Index> secondary_cols;  // effective P_R (faster variants)
  long entries_visited = 0;           // kernel-lazy mode only
  bool flagged = false;               // pseudo-inverse fallback taken

  DenseMatrix reconstruct() const { return C * (U * R); }
  /// One r x n, one c x r, one m x c multiply.
  Vector apply(const Vector& x) const { return C * (U * (R * x)); }
};

enum class CurSampler { kUniform, kLeverage };

/// Prototype CUR: uniform column/row selections, core U = C^+ A R^+
/// (optimal for the given C, R in Frobenius norm).
CurFactors cur_prototype(const DenseMatrix& a, Index c, Index r,
                         std::uint64_t seed);

/// Faster CUR: the core is fit on a subsampled block only,
///   U = (P_C' C)^+ (P_C' A P_R) (R P_R)^+,
/// with the secondary selections unioned with the primary ones. Defaults
/// p_c = p_r = 2(c + r) when passed as 0. The leverage sampler draws P_C
/// proportionally to the row leverage of C and P_R to the column leverage
/// of R; uniform is the default.
CurFactors cur_faster(const DenseMatrix& a, Index c, Index r, Index p_c,
                      Index p_r, std::uint64_t seed,
                      CurSampler sampler = CurSampler::kUniform);

/// cur_faster applied to the implicit RBF kernel block K*_ij =
/// kappa(xtest_i, xtrain_j) without materializing it; visits at most
/// mc + nr + |P_C||P_R| entries (entries_visited reports the exact count)
/// and matches cur_faster on the materialized K* bit for bit at equal seed.
CurFactors cur_faster_kernel(const DenseMatrix& xtest,
                             const DenseMatrix& xtrain, double sigma, Index c,
                             Index r, std::uint64_t seed);

}  // namespace randnla
