#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "randnla/apps.hpp"
#include "randnla/rng.hpp"
#include "randnla/spsd.hpp"

using namespace randnla;

namespace {

DenseMatrix random_matrix(Index m, Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return gaussian_matrix(m, n, rng);
}

std::pair<DenseMatrix, std::vector<int>> blobs(Index n_per, int k, double sep,
                                               std::uint64_t seed) {
  Rng rng = make_rng(seed);
  DenseMatrix points(n_per * k, 2);
  std::vector<int> labels(static_cast<std::size_t>(n_per * k));
  for (int c = 0; c < k; ++c) {
    DenseMatrix block = gaussian_matrix(n_per, 2, rng);
    block.col(c % 2).array() += sep * (1 + c / 2);
    points.middleRows(n_per * c, n_per) = block;
    std::fill(labels.begin() + n_per * c, labels.begin() + n_per * (c + 1), c);
  }
  return {std::move(points), std::move(labels)};
}

}  // namespace

TEST_CASE("kmeans k=1 returns the mean") {
  const DenseMatrix points = random_matrix(20, 3, 1);
  const KmeansResult res = kmeans(points, 1, 50, 2, 5);
  const Vector mean = points.colwise().mean();
  CHECK((res.centroids.row(0).transpose() - mean).norm() <= 1e-12);
  for (int label : res.labels) CHECK(label == 0);
}

TEST_CASE("kmeans k=n gives every point its own centroid") {
  const DenseMatrix points = random_matrix(8, 2, 2);
  const KmeansResult res = kmeans(points, 8, 50, 1, 6);
  CHECK(res.objective <= 1e-12);
}

TEST_CASE("kmeans separates well-spaced blobs") {
  auto [points, truth] = blobs(40, 3, 12.0, 3);
  const KmeansResult res = kmeans(points, 3, 100, 5, 7);
  CHECK(clustering_accuracy(res.labels, truth, 3) >= 0.99);
}

TEST_CASE("KPCA model contract: shapes, orthonormal U, scaled features") {
  auto [x, labels] = blobs(50, 3, 10.0, 4);
  const KpcaModel model = kpca_train(x, 2.0, 3, 9);
  CHECK(model.U.rows() == x.rows());
  CHECK(model.U.cols() == 3);
  CHECK((model.U.transpose() * model.U - DenseMatrix::Identity(3, 3)).norm() <=
        1e-8);
  for (Index t = 1; t < 3; ++t)
    CHECK(model.lambdas(t) <= model.lambdas(t - 1));
  CHECK((model.train_features -
         model.U * model.lambdas.array().sqrt().matrix().asDiagonal())
            .norm() <= 1e-10);
  // Score directions are orthogonal with squared norms lambda.
  const DenseMatrix gram =
      model.train_features.transpose() * model.train_features;
  CHECK((gram - model.lambdas.asDiagonal().toDenseMatrix()).norm() <=
        1e-8 * model.lambdas(0));
}

TEST_CASE("KPCA self-consistency: test features on the training set") {
  auto [x, labels] = blobs(60, 3, 10.0, 5);
  const KpcaModel model = kpca_train(x, 2.0, 3, 10);
  const DenseMatrix test_features = kpca_test(x, x, 2.0, model, false);
  // K U Lambda^{-1/2} ~= U Lambda^{1/2} when K ~= U Lambda U'.
  CHECK((test_features - model.train_features).norm() <=
        0.2 * model.train_features.norm());
}

TEST_CASE("spectral clustering separates planted blobs") {
  auto [x, truth] = blobs(60, 3, 10.0, 6);
  for (const auto method :
       {SpectralMethod::kFaster, SpectralMethod::kNystrom}) {
    const std::vector<int> labels = spectral_cluster(x, 2.0, 3, method, 11);
    CHECK(clustering_accuracy(labels, truth, 3) >= 0.95);
  }
}

TEST_CASE("GPR with huge alpha shrinks to y/alpha") {
  const DenseMatrix x = random_matrix(80, 2, 7);
  Rng rng = make_rng(12);
  const Vector y = gaussian_matrix(80, 1, rng).col(0);
  const double alpha = 1e8;
  const Vector w = gpr_train(x, y, 1.0, alpha, 13, 40);
  CHECK((w - y / alpha).norm() <= 1e-4 * (y / alpha).norm());
}

TEST_CASE("GPR prediction is linear in w and matches K* w directly") {
  const DenseMatrix xtrain = random_matrix(50, 2, 8);
  const DenseMatrix xtest = random_matrix(20, 2, 9);
  Rng rng = make_rng(14);
  const Vector w = gaussian_matrix(50, 1, rng).col(0);
  const Vector pred = gpr_predict(xtrain, xtest, 1.2, w, false);
  const DenseMatrix kstar = rbf_kernel(xtest, xtrain, 1.2);
  CHECK((pred - kstar * w).norm() <= 1e-12 * pred.norm());
  const Vector scaled = gpr_predict(xtrain, xtest, 1.2, 3.0 * w, false);
  CHECK((scaled - 3.0 * pred).norm() <= 1e-12 * scaled.norm());
}

TEST_CASE("GPR fits smooth noiseless data on the training set") {
  const Index n = 200;
  Rng rng = make_rng(15);
  DenseMatrix x(n, 1);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (Index i = 0; i < n; ++i) x(i, 0) = unif(rng);
  Vector y(n);
  for (Index i = 0; i < n; ++i) y(i) = std::sin(2.0 * x(i, 0));
  const Vector w = gpr_train(x, y, 0.5, 1e-4, 16, 100);
  const Vector fit = gpr_predict(x, x, 0.5, w, false);
  CHECK((fit - y).norm() <= 0.05 * y.norm());
}

TEST_CASE("kNN classification basics") {
  DenseMatrix train(4, 1);
  train << 0.0, 1.0, 10.0, 11.0;
  const std::vector<int> labels = {0, 0, 1, 1};
  DenseMatrix test(2, 1);
  test << 0.4, 10.6;
  const std::vector<int> k1 = knn_classify(test, train, labels, 1);
  CHECK(k1[0] == 0);
  CHECK(k1[1] == 1);
  // Exact match with k = 1 returns that point's label.
  DenseMatrix same(1, 1);
  same << 10.0;
  CHECK(knn_classify(same, train, labels, 1)[0] == 1);
  // k = n falls back to the global majority (tie -> smallest label).
  const std::vector<int> all = knn_classify(test, train, labels, 4);
  CHECK(all[0] == 0);
  CHECK(all[1] == 0);
}

TEST_CASE("kNN rejects an empty training set") {
  const DenseMatrix empty(0, 2);
  const DenseMatrix test = random_matrix(1, 2, 17);
  CHECK_THROWS_AS(knn_classify(test, empty, {}, 1), std::invalid_argument);
}
