#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "randnla/acceptance.hpp"
#include "randnla/core.hpp"
#include "randnla/rng.hpp"
#include "randnla/sketch.hpp"

using namespace randnla;

namespace {

DenseMatrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, n, rng);
}

}  // namespace

TEST_CASE("products of orthonormal-column matrices stay orthonormal") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix q1 = thin_qr(random_matrix(25, 12, seed)).Q;
    const DenseMatrix q2 = thin_qr(random_matrix(12, 6, seed + 100)).Q;
    const DenseMatrix q = q1 * q2;
    CHECK((q.transpose() * q - DenseMatrix::Identity(6, 6)).norm() <= 1e-12);
  }
}

TEST_CASE("A A^+ projects onto the column space of A") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix a =
        random_matrix(20, 4, seed) * random_matrix(4, 15, seed + 200);
    const DenseMatrix b = random_matrix(15, 7, seed + 300);
    const SvdFactors f = condensed_svd(a);
    const DenseMatrix lhs = a * (pseudo_inverse(a) * (a * b));
    const DenseMatrix rhs = f.U * (f.U.transpose() * (a * b));
    CHECK((lhs - rhs).norm() <= 1e-9 * (rhs.norm() + 1.0));
  }
}

TEST_CASE("projection coefficients minimize the residual per direction") {
  // With Q orthonormal, the best rank-k fit of b inside span(Q) picks the
  // k directions with the largest |q_i' b| and coefficient q_i' b each.
  Rng pick = make_rng(99);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix q = thin_qr(random_matrix(30, 8, seed)).Q;
    Rng rng = make_rng(seed + 400);
    const Vector b = gaussian_matrix(30, 1, rng).col(0);
    const Vector coeff = q.transpose() * b;
    // Orthogonal split: |b|^2 = |Q'b|^2 + |b - QQ'b|^2.
    CHECK(b.squaredNorm() ==
          doctest::Approx(coeff.squaredNorm() +
                          (b - q * coeff).squaredNorm())
              .epsilon(1e-12));
    // Any other coefficient vector does no better.
    const Vector alt = coeff + 0.3 * gaussian_matrix(8, 1, pick).col(0);
    CHECK((b - q * coeff).squaredNorm() <=
          (b - q * alt).squaredNorm() + 1e-12);
  }
}

TEST_CASE("Moore-Penrose identities hold for the computed pseudo-inverse") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix a =
        random_matrix(18, 3, seed) * random_matrix(3, 12, seed + 500);
    const DenseMatrix p = pseudo_inverse(a);
    CHECK((a * p * a - a).norm() <= 1e-9 * a.norm());
    CHECK((p * a * p - p).norm() <= 1e-9 * p.norm());
    CHECK(((a * p) - (a * p).transpose()).norm() <= 1e-9);
    CHECK(((p * a) - (p * a).transpose()).norm() <= 1e-9);
  }
}

TEST_CASE("pseudo-inverse through the thin QR of a full-rank tall matrix") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix a = random_matrix(25, 9, seed);
    const QrFactors qr = thin_qr(a);
    const DenseMatrix via_qr =
        pseudo_inverse(qr.R) * qr.Q.transpose();
    CHECK((via_qr - pseudo_inverse(a)).norm() <=
          1e-9 * pseudo_inverse(a).norm());
  }
}

TEST_CASE("leverage scores are invariant to the column-space basis") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DenseMatrix c =
        random_matrix(30, 5, seed) * random_matrix(5, 5, seed + 600);
    const SvdFactors f = condensed_svd(c);
    const Vector lc = leverage_scores(c.transpose());
    const Vector lq = leverage_scores(f.U.transpose());
    CHECK((lc - lq).norm() <= 1e-9);
    CHECK(lc.sum() == doctest::Approx(static_cast<double>(f.rank()))
                          .epsilon(1e-9));
  }
}

TEST_CASE("acceptance criterion 13 passes end to end") {
  const CriterionResult r = run_criterion(13, 42);
  INFO(r.summary);
  CHECK(r.passed);
}
