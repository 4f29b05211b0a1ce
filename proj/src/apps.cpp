#include "randnla/apps.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "randnla/core.hpp"
#include "randnla/cur.hpp"
#include "randnla/rng.hpp"
#include "randnla/spsd.hpp"

namespace randnla {

namespace {

Index cur_cols_default(Index n) {
  return std::min<Index>(
      n, std::max<Index>(100, (n + 19) / 20));
}

// Top-k positive eigenpairs of a symmetric matrix, nonincreasing.
std::pair<DenseMatrix, Vector> top_eigpairs(const DenseMatrix& z, Index k) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(
      0.5 * (z + z.transpose()));
  const Index s = z.rows();
  Index positive = 0;
  while (positive < s && eig.eigenvalues()(s - 1 - positive) > 0.0)
    ++positive;
  if (positive < k)
    throw std::runtime_error("fewer positive eigenvalues than requested");
  DenseMatrix u(s, k);
  Vector lam(k);
  for (Index t = 0; t < k; ++t) {
    u.col(t) = eig.eigenvectors().col(s - 1 - t);
    lam(t) = eig.eigenvalues()(s - 1 - t);
  }
  return {std::move(u), std::move(lam)};
}

}  // namespace

KpcaModel kpca_train(const DenseMatrix& xtrain, double sigma, Index k,
                     std::uint64_t seed, Index s) {
  const Index n = xtrain.rows();
  if (s == 0) s = std::min<Index>(10 * k, n);
  require(k >= 1 && k <= s && s <= n, "kpca_train: need k <= s <= n");

  KernelView view(xtrain, KernelSpec{sigma});
  const Index p = std::min<Index>(4 * s, n);
  const SpsdSketch sk = spsd_faster(view, s, p, seed);
  auto [u_z, lam] = top_eigpairs(sk.Z, k);

  KpcaModel model;
  model.U = sk.Q * u_z;
  model.lambdas = lam;
  model.train_features =
      model.U * lam.array().sqrt().matrix().asDiagonal();
  return model;
}

DenseMatrix kpca_test(const DenseMatrix& xtrain, const DenseMatrix& xtest,
                      double sigma, const KpcaModel& model, bool use_cur,
                      std::uint64_t seed) {
  require(xtrain.cols() == xtest.cols(), "kpca_test: dimension mismatch");
  require(model.U.rows() == xtrain.rows(), "kpca_test: model/train mismatch");
  const DenseMatrix scaled =
      model.U *
      model.lambdas.array().rsqrt().matrix().asDiagonal();
  if (!use_cur) return rbf_kernel(xtest, xtrain, sigma) * scaled;
  const Index c = cur_cols_default(xtrain.rows());
  const Index r = cur_cols_default(xtest.rows());
  const CurFactors cur =
      cur_faster_kernel(xtest, xtrain, sigma, c, r, seed);
  return cur.C * (cur.U * (cur.R * scaled));
}

std::vector<int> spectral_cluster(const DenseMatrix& x, double sigma, Index k,
                                  SpectralMethod method, std::uint64_t seed,
                                  Index s) {
  const Index n = x.rows();
  if (s == 0) s = std::min<Index>(10 * k, n);
  require(k >= 1 && k <= s && s <= n, "spectral_cluster: need k <= s <= n");

  KernelView view(x, KernelSpec{sigma});
  DenseMatrix l;
  if (method == SpectralMethod::kFaster) {
    const Index p = std::min<Index>(4 * s, n);
    const SpsdSketch sk = spsd_faster(view, s, p, derive_seed(seed, 1));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(
        0.5 * (sk.Z + sk.Z.transpose()));
    // L = Q_C U_Z sqrt(Lambda_Z); drop nonpositive directions.
    Index positive = 0;
    while (positive < s && eig.eigenvalues()(s - 1 - positive) > 0.0)
      ++positive;
    if (positive == 0)
      throw std::runtime_error("spectral_cluster: core has no positive part");
    DenseMatrix scaled(s, positive);
    for (Index t = 0; t < positive; ++t)
      scaled.col(t) = eig.eigenvectors().col(s - 1 - t) *
                      std::sqrt(eig.eigenvalues()(s - 1 - t));
    l = sk.Q * scaled;
  } else {
    l = nystrom(view, s, derive_seed(seed, 1)).L;
  }

  const Vector degrees = l * (l.transpose() * Vector::Ones(n));
  if ((degrees.array() <= 0.0).any())
    throw std::runtime_error("spectral_cluster: nonpositive degree entries");
  const DenseMatrix normalized =
      degrees.array().rsqrt().matrix().asDiagonal() * l;
  const SvdFactors svd = condensed_svd(normalized);
  if (svd.rank() < k)
    throw std::runtime_error("spectral_cluster: embedding rank below k");
  DenseMatrix u = svd.U.leftCols(k);
  for (Index i = 0; i < n; ++i) {
    const double norm = u.row(i).norm();
    if (norm <= 0.0)
      throw std::runtime_error("spectral_cluster: zero embedding row");
    u.row(i) /= norm;
  }
  return kmeans(u, k, 100, 3, derive_seed(seed, 2)).labels;
}

Vector gpr_train(const DenseMatrix& xtrain, const Vector& y, double sigma,
                 double alpha, std::uint64_t seed, Index l) {
  const Index n = xtrain.rows();
  require(y.size() == n, "gpr_train: label length mismatch");
  require(alpha > 0.0, "gpr_train: alpha <= 0");
  l = std::min(l, n);
  require(l >= 1, "gpr_train: l < 1");
  KernelView view(xtrain, KernelSpec{sigma});
  const NystromFactor factor = nystrom(view, l, seed);
  return smw_solve(factor.L, alpha, y);
}

Vector gpr_predict(const DenseMatrix& xtrain, const DenseMatrix& xtest,
                   double sigma, const Vector& w, bool use_cur,
                   std::uint64_t seed) {
  require(xtrain.cols() == xtest.cols(), "gpr_predict: dimension mismatch");
  require(w.size() == xtrain.rows(), "gpr_predict: weight length mismatch");
  if (!use_cur) return rbf_kernel(xtest, xtrain, sigma) * w;
  const Index c = cur_cols_default(xtrain.rows());
  const Index r = cur_cols_default(xtest.rows());
  const CurFactors cur =
      cur_faster_kernel(xtest, xtrain, sigma, c, r, seed);
  return cur.C * (cur.U * (cur.R * w));
}

std::vector<int> knn_classify(const DenseMatrix& test_features,
                              const DenseMatrix& train_features,
                              const std::vector<int>& train_labels,
                              Index k_neighbors) {
  const Index n = train_features.rows();
  require(n >= 1, "knn_classify: empty training set");
  require(test_features.cols() == train_features.cols(),
          "knn_classify: feature dimension mismatch");
  require(static_cast<Index>(train_labels.size()) == n,
          "knn_classify: label length mismatch");
  require(k_neighbors >= 1, "knn_classify: k < 1");
  const Index k = std::min(k_neighbors, n);

  std::vector<int> out(static_cast<std::size_t>(test_features.rows()));
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index q = 0; q < test_features.rows(); ++q) {
    const Vector dists =
        (train_features.rowwise() - test_features.row(q)).rowwise().squaredNorm();
    std::iota(order.begin(), order.end(), Index{0});
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&dists](Index a, Index b) {
                        if (dists(a) != dists(b)) return dists(a) < dists(b);
                        return a < b;
                      });
    std::map<int, int> votes;
    for (Index t = 0; t < k; ++t) ++votes[train_labels[order[t]]];
    int best_label = votes.begin()->first;
    int best_count = votes.begin()->second;
    for (const auto& [label, count] : votes) {
      if (count > best_count) {  // ties keep the smallest label (map order)
        best_label = label;
        best_count = count;
      }
    }
    out[static_cast<std::size_t>(q)] = best_label;
  }
  return out;
}

double clustering_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth, int k) {
  require(predicted.size() == truth.size() && !truth.empty(),
          "clustering_accuracy: size mismatch");
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  int best = 0;
  do {
    int hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const int p = predicted[i];
      if (p >= 0 && p < k && perm[static_cast<std::size_t>(p)] == truth[i])
        ++hits;
    }
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

}  // namespace randnla
