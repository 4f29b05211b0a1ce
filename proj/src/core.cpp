#include "randnla/core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace randnla {

namespace {

// Make the first entry of each column of M with magnitude above `tol`
// nonnegative; the paired factor gets the matching flip so the product
// is unchanged. `pair_cols` flips columns of P, otherwise rows.
void fix_column_signs(DenseMatrix& m, DenseMatrix& p, bool pair_cols,
                      double tol = 1e-12) {
  for (Index j = 0; j < m.cols(); ++j) {
    double lead = 0.0;
    for (Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > tol) {
        lead = m(i, j);
        break;
      }
    }
    if (lead < 0.0) {
      m.col(j) = -m.col(j);
      if (pair_cols)
        p.col(j) = -p.col(j);
      else
        p.row(j) = -p.row(j);
    }
  }
}

}  // namespace

QrFactors thin_qr(const DenseMatrix& a) {
  require(a.rows() >= a.cols(), "thin_qr: rows < cols");
  Eigen::HouseholderQR<DenseMatrix> qr(a);
  const Index n = a.cols();
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(a.rows(), n);
  DenseMatrix r = DenseMatrix::Zero(n, n);
  r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  fix_column_signs(q, r, /*pair_cols=*/false);
  return {std::move(q), std::move(r)};
}

SvdFactors condensed_svd(const DenseMatrix& a) {
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double sigma1 = sv.size() > 0 ? sv(0) : 0.0;
  if (sigma1 <= 0.0)
    throw std::invalid_argument("condensed_svd: zero matrix has rank 0");
  const double thresh = static_cast<double>(std::max(a.rows(), a.cols())) *
                        std::numeric_limits<double>::epsilon() * sigma1;
  Index rho = 0;
  while (rho < sv.size() && sv(rho) > thresh) ++rho;
  SvdFactors f;
  f.U = svd.matrixU().leftCols(rho);
  f.singular_values = sv.head(rho);
  f.V = svd.matrixV().leftCols(rho);
  fix_column_signs(f.U, f.V, /*pair_cols=*/true);
  return f;
}

SvdFactors truncated_svd(const DenseMatrix& a, Index k) {
  require(k >= 1 && k <= std::min(a.rows(), a.cols()),
          "truncated_svd: k out of range");
  SvdFactors f = condensed_svd(a);
  if (k < f.rank()) {
    f.U = DenseMatrix(f.U.leftCols(k));
    f.singular_values = Vector(f.singular_values.head(k));
    f.V = DenseMatrix(f.V.leftCols(k));
  }
  return f;
}

DenseMatrix pseudo_inverse(const DenseMatrix& a, double tol) {
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double sigma1 = sv.size() > 0 ? sv(0) : 0.0;
  if (sigma1 <= 0.0) return DenseMatrix::Zero(a.cols(), a.rows());
  const double cut = tol * sigma1;
  Vector inv = Vector::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

std::pair<double, double> norms(const DenseMatrix& a) {
  const double fro = a.norm();
  double spec = 0.0;
  if (fro > 0.0) {
    Eigen::BDCSVD<DenseMatrix> svd(a);
    spec = svd.singularValues()(0);
  }
  return {fro, spec};
}

}  // namespace randnla
