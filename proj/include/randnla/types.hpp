#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace randnla {

// All matrices are dense, double precision, and treated as immutable values:
// operations take const references and return fresh matrices.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Condensed SVD factors: A = U * diag(singular_values) * V^T.
/// U is m x rho, V is n x rho, singular values are strictly positive
/// and nonincreasing.
struct SvdFactors {
  DenseMatrix U;
  Vector singular_values;
  DenseMatrix V;

  Index rank() const { return singular_values.size(); }
  DenseMatrix reconstruct() const {
    return U * singular_values.asDiagonal() * V.transpose();
  }
};

/// Thin QR factors: A = Q * R with Q^T Q = I and R upper triangular.
struct QrFactors {
  DenseMatrix Q;
  DenseMatrix R;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require_finite(const DenseMatrix& a, const std::string& what) {
  if (!a.allFinite())
    throw std::invalid_argument(what + ": non-finite entries");
}

}  // namespace randnla
