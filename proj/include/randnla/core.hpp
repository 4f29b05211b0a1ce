#pragma once

#include <utility>

#include "randnla/types.hpp"

namespace randnla {

/// Thin QR of a tall matrix (rows >= cols). Q has orthonormal columns with
/// the first nonzero entry of each column made nonnegative; R is upper
/// triangular with exact zeros below the diagonal.
QrFactors thin_qr(const DenseMatrix& a);

/// Condensed SVD: only the numerically nonzero singular values are kept.
/// A singular value is kept iff sigma_i > max(m, n) * eps * sigma_1.
/// Throws on an all-zero matrix.
SvdFactors condensed_svd(const DenseMatrix& a);

/// Top-k factors of the condensed SVD (fewer if rank(A) < k).
SvdFactors truncated_svd(const DenseMatrix& a, Index k);

/// Moore-Penrose inverse with singular values below tol * sigma_max
/// treated as zero. A zero matrix maps to the zero matrix of transposed
/// shape.
DenseMatrix pseudo_inverse(const DenseMatrix& a, double tol = 1e-12);

/// (frobenius, spectral) norm pair.
std::pair<double, double> norms(const DenseMatrix& a);

}  // namespace randnla
