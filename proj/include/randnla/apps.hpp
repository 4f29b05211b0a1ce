#pragma once

#include <cstdint>
#include <vector>

#include "randnla/kmeans.hpp"
#include "randnla/types.hpp"

namespace randnla {

struct KpcaModel {
  DenseMatrix U;            // n x k, orthonormal columns
  Vector lambdas;           // k positive eigenvalues, nonincreasing
  DenseMatrix train_features;  // n x k, U * diag(sqrt(lambda))
};

/// KPCA training on the RBF kernel of Xtrain (rows are points) through the
/// faster SPSD sketch: eigendecompose the small core Z, lift U = Q_C U_Z,k,
/// features = U diag(sqrt(lambda)). s defaults to 10k.
KpcaModel kpca_train(const DenseMatrix& xtrain, double sigma, Index k,
                     std::uint64_t seed, Index s = 0);

/// Test features K* U diag(1/sqrt(lambda)); direct mode materializes the
/// m x n cross kernel, CUR mode routes it through cur_faster_kernel with
/// c = max(100, ceil(n/20)), r = max(100, ceil(m/20)).
DenseMatrix kpca_test(const DenseMatrix& xtrain, const DenseMatrix& xtest,
                      double sigma, const KpcaModel& model, bool use_cur,
                      std::uint64_t seed = 0);

enum class SpectralMethod { kFaster, kNystrom };

/// Spectral clustering with a sketched kernel: low-rank L with LL' ~= K,
/// degrees d = L(L'1), top-k left singular vectors of diag(d)^{-1/2} L,
/// row normalization, k-means with 3 replicates. s defaults to 10k.
std::vector<int> spectral_cluster(const DenseMatrix& x, double sigma, Index k,
                                  SpectralMethod method, std::uint64_t seed,
                                  Index s = 0);

/// GPR training: Nystrom factor L of the train kernel (l landmarks,
/// default 100), then w = (y - L (alpha I + L'L)^{-1} L'y) / alpha.
Vector gpr_train(const DenseMatrix& xtrain, const Vector& y, double sigma,
                 double alpha, std::uint64_t seed, Index l = 100);

/// Predictions y* = K* w; CUR mode computes C (U (R w)) through
/// cur_faster_kernel with the same c, r defaults as kpca_test.
Vector gpr_predict(const DenseMatrix& xtrain, const DenseMatrix& xtest,
                   double sigma, const Vector& w, bool use_cur,
                   std::uint64_t seed = 0);

/// Majority vote among the k nearest training rows by Euclidean distance;
/// ties go to the smallest label.
std::vector<int> knn_classify(const DenseMatrix& test_features,
                              const DenseMatrix& train_features,
                              const std::vector<int>& train_labels,
                              Index k_neighbors);

/// Best label-permutation accuracy between two labelings (exhaustive over
/// permutations; intended for small k).
double clustering_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth, int k);

}  // namespace randnla
