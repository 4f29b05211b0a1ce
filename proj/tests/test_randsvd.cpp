#include <cmath>

#include "doctest.h"
#include "randnla/core.hpp"
#include "randnla/randsvd.hpp"
#include "randnla/rng.hpp"

using namespace randnla;

namespace {

DenseMatrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, n, rng);
}

DenseMatrix rank_k_matrix(Index m, Index n, Index k, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, k, rng) * gaussian_matrix(k, n, rng);
}

}  // namespace

TEST_CASE("block Lanczos matches the dense SVD oracle") {
  const DenseMatrix a = random_matrix(60, 45, 1);
  const Index k = 6;
  const KsvdResult r = block_lanczos_ksvd(a, k, 25, 7);
  const SvdFactors oracle = truncated_svd(a, k);
  CHECK(((r.factors.singular_values - oracle.singular_values).cwiseAbs()
             .array() /
         oracle.singular_values.array())
            .maxCoeff() <= 1e-8);
  CHECK((r.factors.U.transpose() * r.factors.U -
         DenseMatrix::Identity(k, k))
            .norm() <= 1e-8);
  CHECK(r.passes_over_a == 50);
}

TEST_CASE("prototype k-SVD recovers an exactly rank-k matrix") {
  const DenseMatrix a = rank_k_matrix(80, 60, 5, 2);
  KsvdOptions opts;
  opts.evaluate_error = true;
  const KsvdResult r = prototype_ksvd(a, 5, 20, 3, nullptr, opts);
  CHECK(*r.error_fro <= 1e-8 * a.norm());
  CHECK(r.passes_over_a == 2);
  CHECK(r.factors.U.rows() == 80);
  CHECK(r.factors.V.rows() == 60);
  CHECK(r.factors.singular_values.size() <= 5);
}

TEST_CASE("prototype k-SVD error is bounded below by the optimum") {
  const DenseMatrix a = random_matrix(50, 50, 4);
  KsvdOptions opts;
  opts.evaluate_error = true;
  const KsvdResult r = prototype_ksvd(a, 5, 25, 5, nullptr, opts);
  const double opt = (a - truncated_svd(a, 5).reconstruct()).norm();
  CHECK(*r.error_fro >= opt - 1e-9);
  CHECK(r.passes_over_a == 2);
}

TEST_CASE("faster k-SVD recovers low-rank input and keeps the pass budget") {
  const DenseMatrix a = rank_k_matrix(120, 100, 4, 6);
  KsvdOptions opts;
  opts.evaluate_error = true;
  const KsvdResult r = faster_ksvd(a, 4, 16, 256, 64, 9, opts);
  CHECK(*r.error_fro <= 1e-6 * a.norm());
  CHECK(r.passes_over_a == 2);
  // Orthonormal factors.
  CHECK((r.factors.U.transpose() * r.factors.U -
         DenseMatrix::Identity(r.factors.U.cols(), r.factors.U.cols()))
            .norm() <= 1e-8);
}

TEST_CASE("faster k-SVD enforces k < s < p < p_cs") {
  const DenseMatrix a = random_matrix(30, 30, 10);
  CHECK_THROWS_AS(faster_ksvd(a, 5, 5, 40, 20, 1), std::invalid_argument);
  CHECK_THROWS_AS(faster_ksvd(a, 5, 10, 20, 20, 1), std::invalid_argument);
  CHECK_THROWS_AS(faster_ksvd(a, 5, 10, 15, 20, 1), std::invalid_argument);
}

TEST_CASE("k-SVD results are deterministic given the seed") {
  const DenseMatrix a = random_matrix(40, 35, 11);
  const KsvdResult r1 = prototype_ksvd(a, 4, 12, 99);
  const KsvdResult r2 = prototype_ksvd(a, 4, 12, 99);
  CHECK((r1.factors.singular_values - r2.factors.singular_values).norm() ==
        0.0);
  CHECK((r1.factors.U - r2.factors.U).norm() == 0.0);
}
