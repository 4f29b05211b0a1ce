#pragma once

#include <atomic>
#include <cstdint>
#include <utility>
#include <vector>

#include "randnla/sketch.hpp"
#include "randnla/types.hpp"

namespace randnla {

struct KernelSpec {
  double sigma = 1.0;  // RBF kernel width
};

/// Dense RBF kernel block: K_ij = exp(-|x1_i - x2_j|^2 / (2 sigma^2)),
/// computed through the inner-product expansion. Rows of X1/X2 are points.
DenseMatrix rbf_kernel(const DenseMatrix& x1, const DenseMatrix& x2,
                       double sigma);

/// Lazily evaluated RBF kernel matrix over one dataset; entries are
/// computed on demand and counted. Entry evaluation is pure; the counter
/// is atomic so concurrent evaluations stay consistent.
class KernelView {
 public:
  KernelView(DenseMatrix data, KernelSpec spec);

  Index n() const { return data_.rows(); }
  double entry(Index i, Index j) const;
  /// n x |cols| block of selected columns.
  DenseMatrix columns(const std::vector<Index>& cols) const;
  /// |rows| x |cols| sub-block.
  DenseMatrix block(const std::vector<Index>& rows,
                    const std::vector<Index>& cols) const;
  long entries_evaluated() const { return counter_.load(); }

  const DenseMatrix& data() const { return data_; }
  const KernelSpec& spec() const { return spec_; }

 private:
  DenseMatrix data_;  // n x d, rows are points
  KernelSpec spec_;
  Vector sq_norms_;
  mutable std::atomic<long> counter_{0};
};

/// Abstract column/block access to an SPSD matrix, shared by the dense and
/// kernel-backed paths.
class SpsdSource {
 public:
  virtual ~SpsdSource() = default;
  virtual Index n() const = 0;
  virtual DenseMatrix columns(const std::vector<Index>& cols) const = 0;
  virtual DenseMatrix block(const std::vector<Index>& rows,
                            const std::vector<Index>& cols) const = 0;
  virtual DenseMatrix full() const = 0;
};

class DenseSpsdSource final : public SpsdSource {
 public:
  explicit DenseSpsdSource(const DenseMatrix& k) : k_(k) {}
  Index n() const override { return k_.cols(); }
  DenseMatrix columns(const std::vector<Index>& cols) const override;
  DenseMatrix block(const std::vector<Index>& rows,
                    const std::vector<Index>& cols) const override;
  DenseMatrix full() const override { return k_; }

 private:
  const DenseMatrix& k_;
};

class KernelSpsdSource final : public SpsdSource {
 public:
  explicit KernelSpsdSource(const KernelView& view) : view_(view) {}
  Index n() const override { return view_.n(); }
  DenseMatrix columns(const std::vector<Index>& cols) const override;
  DenseMatrix block(const std::vector<Index>& rows,
                    const std::vector<Index>& cols) const override;
  DenseMatrix full() const override;

 private:
  const KernelView& view_;
};

struct SpsdSketch {
  DenseMatrix Q;  // n x s, orthonormal columns
  DenseMatrix Z;  // s x s, symmetric
  std::vector<Index> selected;    // primary selection (when sampled)
  std::vector<Index> secondary;   // effective secondary selection (faster)
  bool flagged = false;           // pseudo-inverse fallback taken

  DenseMatrix reconstruct() const { return Q * Z * Q.transpose(); }
};

struct NystromFactor {
  DenseMatrix L;  // n x k
  std::vector<Index> selected;
};

/// Prototype SPSD sketch: C = K S (count sketch by default), QR,
/// Z = Q' K Q. Visits all of K.
SpsdSketch spsd_prototype(const DenseMatrix& k, Index s, std::uint64_t seed,
                          const SketchSpec* spec = nullptr);

/// Faster SPSD sketch: uniform column selection S, QR, leverage-score row
/// sampling P over Q_C with the enforced inclusion S within P, core
/// Z = (P'Q)^+ (P'KP) (Q'P)^+. Visits at most n*s + |P|^2 entries.
SpsdSketch spsd_faster(const SpsdSource& k, Index s, Index p,
                       std::uint64_t seed);
SpsdSketch spsd_faster(const DenseMatrix& k, Index s, Index p,
                       std::uint64_t seed);
SpsdSketch spsd_faster(const KernelView& k, Index s, Index p,
                       std::uint64_t seed);

/// Nystrom: uniform selection, W = K(S, S), top-k eigenpairs of W with an
/// eigenvalue floor, L = C U_k Lambda_k^{-1/2} so that LL' ~= C W_k^+ C'.
/// k = ceil(0.8 s) when not given.
NystromFactor nystrom(const SpsdSource& k, Index s, std::uint64_t seed,
                      Index target_k = 0);
NystromFactor nystrom(const KernelView& k, Index s, std::uint64_t seed,
                      Index target_k = 0);
NystromFactor nystrom(const DenseMatrix& k, Index s, std::uint64_t seed,
                      Index target_k = 0);

/// w = (L L' + alpha I)^{-1} y via the Sherman-Morrison-Woodbury identity.
Vector smw_solve(const DenseMatrix& l, double alpha, const Vector& y);

/// w = (Q Z Q' + alpha I)^{-1} y for orthonormal Q and symmetric Z (not
/// necessarily PSD), via the spectral split along range(Q).
Vector shifted_smw_solve(const DenseMatrix& q, const DenseMatrix& z,
                         double alpha, const Vector& y);

/// Top-k eigenpairs of L L' from the SVD of L.
std::pair<DenseMatrix, Vector> approx_eig(const DenseMatrix& l, Index k);

}  // namespace randnla
