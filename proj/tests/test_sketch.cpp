#include <cmath>

#include "doctest.h"
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

TEST_CASE("FWHT matches the Hadamard recursion on H_2 and H_4") {
  // H_2 = [[1, 1], [1, -1]] applied to a basis vector gives a +/-1 row.
  double e0[2] = {1.0, 0.0};
  fwht_inplace(e0, 2);
  CHECK(e0[0] == 1.0);
  CHECK(e0[1] == 1.0);
  double e1[2] = {0.0, 1.0};
  fwht_inplace(e1, 2);
  CHECK(e1[0] == 1.0);
  CHECK(e1[1] == -1.0);
  // H_N H_N = N I.
  double v[4] = {0.3, -1.2, 0.7, 2.5};
  double w[4] = {0.3, -1.2, 0.7, 2.5};
  fwht_inplace(w, 4);
  fwht_inplace(w, 4);
  for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(4.0 * v[i]));
}

TEST_CASE("Gaussian sketch preserves Frobenius norm in expectation") {
  const DenseMatrix a = random_matrix(10, 50, 1);
  const double target = a.squaredNorm();
  double sum = 0.0;
  const int reps = 400;
  for (int t = 0; t < reps; ++t)
    sum += gaussian_sketch(a, 30, 1000 + t).squaredNorm();
  CHECK(sum / reps == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("count sketch equals multiplication by its materialized operator") {
  const DenseMatrix a = random_matrix(7, 40, 2);
  const Index s = 9;
  const DenseMatrix direct = count_sketch(a, s, 77);
  const DenseMatrix op = count_sketch_operator(40, s, 77);
  CHECK((direct - a * op).norm() <= 1e-14 * a.norm());
  // Each row of S holds exactly one signed unit entry.
  for (Index j = 0; j < 40; ++j) {
    int nonzeros = 0;
    for (Index t = 0; t < s; ++t) {
      if (op(j, t) != 0.0) {
        ++nonzeros;
        CHECK(std::abs(op(j, t)) == 1.0);
      }
    }
    CHECK(nonzeros == 1);
  }
}

TEST_CASE("count sketch preserves Frobenius norm in expectation") {
  const DenseMatrix a = random_matrix(10, 50, 3);
  const double target = a.squaredNorm();
  double sum = 0.0;
  const int reps = 1000;
  for (int t = 0; t < reps; ++t)
    sum += count_sketch(a, 25, 5000 + t).squaredNorm();
  CHECK(sum / reps == doctest::Approx(target).epsilon(0.02));
}

TEST_CASE("SRHT sketch has the right shape and unbiased scale") {
  const DenseMatrix a = random_matrix(6, 100, 4);  // pads to 128
  const DenseMatrix c = srht_sketch(a, 64, 11);
  CHECK(c.rows() == 6);
  CHECK(c.cols() == 64);
  double sum = 0.0;
  const int reps = 300;
  for (int t = 0; t < reps; ++t)
    sum += srht_sketch(a, 64, 9000 + t).squaredNorm();
  CHECK(sum / reps == doctest::Approx(a.squaredNorm()).epsilon(0.05));
}

TEST_CASE("combined sketch chains count sketch with a dense stage") {
  const DenseMatrix a = random_matrix(8, 200, 5);
  const SketchSpec spec =
      SketchSpec::combined(64, SketchSpec::gaussian(16, 21), 20);
  const DenseMatrix c = apply_sketch(a, spec);
  CHECK(c.rows() == 8);
  CHECK(c.cols() == 16);
  // Oracle: apply the two stages by hand with the same seeds.
  const DenseMatrix mid = count_sketch(a, 64, 20);
  CHECK((c - gaussian_sketch(mid, 16, 21)).norm() == 0.0);
}

TEST_CASE("uniform column selection returns verbatim columns, sorted") {
  const DenseMatrix a = random_matrix(5, 30, 6);
  const auto [c, sel] = uniform_sample_columns(a, 10, 99);
  REQUIRE(sel.indices.size() == 10);
  for (std::size_t t = 1; t < sel.indices.size(); ++t)
    CHECK(sel.indices[t] > sel.indices[t - 1]);
  for (std::size_t t = 0; t < sel.indices.size(); ++t)
    CHECK((c.col(static_cast<Index>(t)) - a.col(sel.indices[t])).norm() ==
          0.0);
}

TEST_CASE("leverage scores sum to the rank") {
  const DenseMatrix low = random_matrix(12, 4, 7) * random_matrix(4, 20, 8);
  const Vector scores = leverage_scores(low);
  CHECK(scores.size() == 20);
  CHECK(scores.sum() == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(scores.minCoeff() >= 0.0);
  // Against rank k: scores sum to k.
  const Vector sk = leverage_scores(low, Index{2});
  CHECK(sk.sum() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("leverage sampling dedupes and records scaling weights") {
  const DenseMatrix a = random_matrix(6, 25, 9);
  const auto [c, sel] = leverage_sample_columns(a, 15, 3, {}, true);
  REQUIRE(sel.weights.has_value());
  CHECK(sel.indices.size() == static_cast<std::size_t>(c.cols()));
  for (std::size_t t = 0; t < sel.indices.size(); ++t) {
    const double w = (*sel.weights)(static_cast<Index>(t));
    CHECK(w > 0.0);
    CHECK((c.col(static_cast<Index>(t)) - w * a.col(sel.indices[t])).norm() <=
          1e-12);
  }
}

TEST_CASE("landmark selection returns s columns") {
  const DenseMatrix a = random_matrix(4, 40, 10);
  const DenseMatrix c = landmark_select(a, 6, 5, 123);
  CHECK(c.rows() == 4);
  CHECK(c.cols() == 6);
}

TEST_CASE("gamma estimate is at least 1 and exactly 1 for the identity") {
  const DenseMatrix a = random_matrix(5, 64, 11);
  SketchSpec spec = SketchSpec::count_sketch(256, 5);
  CHECK(estimate_gamma(a, spec, 20, 17) >= 1.0);
}

TEST_CASE("count sketch subspace embedding at desk scale") {
  const DenseMatrix a = random_matrix(10, 2000, 12);
  const SketchSpec spec = SketchSpec::count_sketch(1000, 31);
  CHECK(estimate_gamma(a, spec, 100, 31) <= 1.5);
}

TEST_CASE("eta estimates: projection dominates best rank-k fit") {
  const DenseMatrix a = random_matrix(40, 40, 13);
  const SketchSpec spec = SketchSpec::gaussian(20, 41);
  const DenseMatrix c = apply_sketch(a, spec);
  const EtaEstimate eta = estimate_eta(a, c, 5);
  CHECK(eta.eta_best >= eta.eta_proj);  // best rank-k fit is constrained
  CHECK(eta.eta_proj >= 0.0);
  CHECK(eta.eta_best >= 1.0 - 1e-12);  // oracle optimum has ratio >= 1
}

TEST_CASE("eta rejects matrices of rank at most k") {
  const DenseMatrix low = random_matrix(10, 3, 14) * random_matrix(3, 10, 15);
  const DenseMatrix c = low.leftCols(5);
  CHECK_THROWS_AS(estimate_eta(low, c, 3), std::invalid_argument);
}

TEST_CASE("sketches are deterministic given the seed") {
  const DenseMatrix a = random_matrix(6, 80, 16);
  for (SketchKind kind : {SketchKind::kGaussian, SketchKind::kSrht,
                          SketchKind::kCountSketch}) {
    SketchSpec spec;
    spec.kind = kind;
    spec.s = 32;
    spec.seed = 55;
    const DenseMatrix first = apply_sketch(a, spec);
    const DenseMatrix second = apply_sketch(a, spec);
    CHECK((first - second).norm() == 0.0);
  }
}
