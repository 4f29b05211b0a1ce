#include <cmath>

#include "doctest.h"
#include "randnla/core.hpp"
#include "randnla/cur.hpp"
#include "randnla/rng.hpp"
#include "randnla/spsd.hpp"

using namespace randnla;

namespace {

DenseMatrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, n, rng);
}

}  // namespace

TEST_CASE("prototype CUR with full selection reproduces A") {
  const DenseMatrix a = random_matrix(18, 14, 1);
  const CurFactors f = cur_prototype(a, 14, 18, 2);
  CHECK((a - f.reconstruct()).norm() <= 1e-10 * a.norm());
}

TEST_CASE("prototype CUR recovers a low-rank matrix with spanning picks") {
  const DenseMatrix a = random_matrix(40, 3, 3) * random_matrix(3, 35, 4);
  const CurFactors f = cur_prototype(a, 10, 10, 5);
  CHECK((a - f.reconstruct()).norm() <= 1e-8 * a.norm());
  // C and R are verbatim slices.
  for (std::size_t t = 0; t < f.col_indices.size(); ++t)
    CHECK((f.C.col(static_cast<Index>(t)) - a.col(f.col_indices[t])).norm() ==
          0.0);
  for (std::size_t t = 0; t < f.row_indices.size(); ++t)
    CHECK((f.R.row(static_cast<Index>(t)) - a.row(f.row_indices[t])).norm() ==
          0.0);
}

TEST_CASE("faster CUR with full secondary selection equals the prototype") {
  const DenseMatrix a = random_matrix(30, 25, 6);
  const std::uint64_t seed = 7;
  const CurFactors fast = cur_faster(a, 8, 8, a.rows(), a.cols(), seed);
  const CurFactors proto = cur_prototype(a, 8, 8, seed);
  // Identical draw streams give identical selections.
  CHECK(fast.col_indices == proto.col_indices);
  CHECK(fast.row_indices == proto.row_indices);
  CHECK((fast.U - proto.U).norm() <= 1e-8 * (proto.U.norm() + 1.0));
}

TEST_CASE("faster CUR core is suboptimal for the unsketched objective") {
  const DenseMatrix a = random_matrix(60, 4, 8) * random_matrix(4, 50, 9) +
                        0.01 * random_matrix(60, 50, 10);
  const std::uint64_t seed = 11;
  const CurFactors fast = cur_faster(a, 10, 10, 0, 0, seed);
  const CurFactors proto = cur_prototype(a, 10, 10, seed);
  CHECK((a - fast.reconstruct()).norm() >=
        (a - proto.reconstruct()).norm() - 1e-9);
}

TEST_CASE("CUR shape contract and apply cost structure") {
  const DenseMatrix a = random_matrix(22, 31, 12);
  const CurFactors f = cur_faster(a, 6, 5, 0, 0, 13);
  CHECK(f.C.rows() == 22);
  CHECK(f.C.cols() == 6);
  CHECK(f.U.rows() == 6);
  CHECK(f.U.cols() == 5);
  CHECK(f.R.rows() == 5);
  CHECK(f.R.cols() == 31);
  Rng rng = make_rng(14);
  const Vector x = gaussian_matrix(31, 1, rng).col(0);
  CHECK((f.apply(x) - f.reconstruct() * x).norm() <=
        1e-10 * (f.reconstruct() * x).norm());
}

TEST_CASE("kernel-lazy CUR equals the materialized run bit for bit") {
  const DenseMatrix xtest = random_matrix(45, 3, 15);
  const DenseMatrix xtrain = random_matrix(60, 3, 16);
  const double sigma = 1.3;
  const DenseMatrix kstar = rbf_kernel(xtest, xtrain, sigma);
  for (std::uint64_t seed : {17ULL, 18ULL, 19ULL}) {
    const CurFactors lazy = cur_faster_kernel(xtest, xtrain, sigma, 7, 6,
                                              seed);
    const CurFactors mat = cur_faster(kstar, 7, 6, 0, 0, seed);
    CHECK((lazy.C.array() == mat.C.array()).all());
    CHECK((lazy.U.array() == mat.U.array()).all());
    CHECK((lazy.R.array() == mat.R.array()).all());
    const long budget =
        45 * 7 + 60 * 6 +
        static_cast<long>(lazy.secondary_rows.size()) *
            static_cast<long>(lazy.secondary_cols.size());
    CHECK(lazy.entries_visited <= budget);
  }
}

TEST_CASE("kernel CUR boundary preconditions") {
  const DenseMatrix xtest = random_matrix(1, 3, 20);
  const DenseMatrix xtrain = random_matrix(30, 3, 21);
  // m = 1 with r > 1 must be rejected up front.
  CHECK_THROWS_AS(cur_faster_kernel(xtest, xtrain, 1.0, 5, 3, 1),
                  std::invalid_argument);
  const CurFactors ok = cur_faster_kernel(xtest, xtrain, 1.0, 5, 1, 1);
  CHECK(ok.R.rows() == 1);
}

TEST_CASE("leverage-sampled faster CUR tracks the prototype core") {
  const DenseMatrix a = random_matrix(80, 5, 22) * random_matrix(5, 70, 23) +
                        0.05 * random_matrix(80, 70, 24);
  int hits = 0;
  for (int t = 0; t < 10; ++t) {
    const std::uint64_t seed = 100 + static_cast<std::uint64_t>(t);
    const CurFactors fast =
        cur_faster(a, 10, 10, 0, 0, seed, CurSampler::kLeverage);
    const CurFactors proto = cur_prototype(a, 10, 10, seed);
    const double num = (a - fast.reconstruct()).squaredNorm();
    const double den = (a - proto.reconstruct()).squaredNorm();
    if (num <= 1.5 * den) ++hits;
  }
  CHECK(hits >= 7);
}
