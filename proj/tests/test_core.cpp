#include <Eigen/Dense>

#include "doctest.h"
#include "randnla/core.hpp"
#include "randnla/rng.hpp"

using namespace randnla;

namespace {

DenseMatrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, n, rng);
}

}  // namespace

TEST_CASE("thin QR reconstructs and is orthonormal") {
  const DenseMatrix a = random_matrix(20, 8, 1);
  const QrFactors qr = thin_qr(a);
  CHECK((qr.Q * qr.R - a).norm() <= 1e-12 * a.norm());
  CHECK((qr.Q.transpose() * qr.Q - DenseMatrix::Identity(8, 8)).norm() <=
        1e-12);
  // Strictly upper triangular with exact zeros below the diagonal.
  for (Index i = 1; i < 8; ++i)
    for (Index j = 0; j < i; ++j) CHECK(qr.R(i, j) == 0.0);
  // Sign convention: leading entry of each Q column nonnegative.
  for (Index j = 0; j < qr.Q.cols(); ++j) {
    for (Index i = 0; i < qr.Q.rows(); ++i) {
      if (std::abs(qr.Q(i, j)) > 1e-12) {
        CHECK(qr.Q(i, j) > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("thin QR rejects wide input") {
  CHECK_THROWS_AS(thin_qr(random_matrix(3, 5, 2)), std::invalid_argument);
}

TEST_CASE("condensed SVD keeps only the numerical rank") {
  const DenseMatrix left = random_matrix(30, 4, 3);
  const DenseMatrix right = random_matrix(4, 25, 4);
  const DenseMatrix a = left * right;  // rank 4
  const SvdFactors f = condensed_svd(a);
  CHECK(f.rank() == 4);
  CHECK((f.reconstruct() - a).norm() <= 1e-10 * a.norm());
  CHECK((f.U.transpose() * f.U - DenseMatrix::Identity(4, 4)).norm() <= 1e-12);
  CHECK((f.V.transpose() * f.V - DenseMatrix::Identity(4, 4)).norm() <= 1e-12);
  for (Index i = 1; i < f.rank(); ++i)
    CHECK(f.singular_values(i) <= f.singular_values(i - 1));
  CHECK(f.singular_values(f.rank() - 1) > 0.0);
}

TEST_CASE("condensed SVD rejects the zero matrix") {
  CHECK_THROWS_AS(condensed_svd(DenseMatrix::Zero(4, 3)),
                  std::invalid_argument);
}

TEST_CASE("truncated SVD is the Frobenius-optimal rank-k approximation") {
  const DenseMatrix a = random_matrix(15, 12, 5);
  const Index k = 3;
  const SvdFactors fk = truncated_svd(a, k);
  CHECK(fk.rank() == k);
  const double err = (a - fk.reconstruct()).squaredNorm();
  // Oracle: tail of the full spectrum.
  Eigen::BDCSVD<DenseMatrix> svd(a);
  double tail = 0.0;
  for (Index i = k; i < svd.singularValues().size(); ++i)
    tail += svd.singularValues()(i) * svd.singularValues()(i);
  CHECK(err == doctest::Approx(tail).epsilon(1e-10));
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose identities") {
  const DenseMatrix a = random_matrix(10, 6, 6);
  const DenseMatrix p = pseudo_inverse(a);
  CHECK((a * p * a - a).norm() <= 1e-10 * a.norm());
  CHECK((p * a * p - p).norm() <= 1e-10 * p.norm());
  CHECK(((a * p).transpose() - a * p).norm() <= 1e-10);
  CHECK(((p * a).transpose() - p * a).norm() <= 1e-10);
}

TEST_CASE("pseudo-inverse of the zero matrix is zero with transposed shape") {
  const DenseMatrix p = pseudo_inverse(DenseMatrix::Zero(4, 7));
  CHECK(p.rows() == 7);
  CHECK(p.cols() == 4);
  CHECK(p.norm() == 0.0);
}

TEST_CASE("norms returns Frobenius and spectral norms") {
  DenseMatrix a = DenseMatrix::Zero(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 4.0;
  const auto [fro, spec] = norms(a);
  CHECK(fro == doctest::Approx(5.0));
  CHECK(spec == doctest::Approx(4.0));
}
