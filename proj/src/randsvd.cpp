#include "randnla/randsvd.hpp"

#include <cmath>

#include "randnla/core.hpp"
#include "randnla/rng.hpp"

namespace randnla {

namespace {

// Counts full sweeps over A; each logically single-pass computation inside
// an algorithm acquires the data through one sweep() call.
class PassTracker {
 public:
  explicit PassTracker(const DenseMatrix& a) : a_(a) {}
  const DenseMatrix& sweep() {
    ++passes_;
    return a_;
  }
  int passes() const { return passes_; }

 private:
  const DenseMatrix& a_;
  int passes_ = 0;
};

void maybe_evaluate(KsvdResult& res, const DenseMatrix& a,
                    const KsvdOptions& opts) {
  if (opts.evaluate_error)
    res.error_fro = (a - res.factors.reconstruct()).norm();
}

// Orthogonalize `block` against `basis` (twice, for stability) and
// orthonormalize what is left; rank-deficient directions are dropped.
DenseMatrix orthonormal_complement(const DenseMatrix& basis,
                                   const DenseMatrix& block) {
  DenseMatrix work = block;
  for (int round = 0; round < 2; ++round) {
    if (basis.cols() > 0) work -= basis * (basis.transpose() * work);
  }
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(work);
  qr.setThreshold(1e-10);
  const Index rank = qr.rank();
  if (rank == 0) return DenseMatrix(work.rows(), 0);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(work.rows(), rank);
  return q;
}

}  // namespace

KsvdResult block_lanczos_ksvd(const DenseMatrix& a, Index k, int q,
                              std::uint64_t seed, const KsvdOptions& opts) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index s = 2 * k;
  require(k >= 1, "block_lanczos_ksvd: k < 1");
  require(q >= 1, "block_lanczos_ksvd: q < 1");
  require(s <= std::min(m, n), "block_lanczos_ksvd: 2k > min(m, n)");

  Rng rng = make_rng(seed);
  DenseMatrix c = a * gaussian_matrix(n, s, rng);

  DenseMatrix basis(m, 0);
  DenseMatrix block = orthonormal_complement(basis, c);
  for (int i = 1; i <= q && block.cols() > 0; ++i) {
    DenseMatrix grown(m, basis.cols() + block.cols());
    grown << basis, block;
    basis = std::move(grown);
    if (i == q || basis.cols() >= std::min(m, n)) break;
    // Next Krylov block: (A A') applied to the previous one.
    block = orthonormal_complement(basis, a * (a.transpose() * block));
  }

  const DenseMatrix projected = basis.transpose() * a;
  const SvdFactors small =
      truncated_svd(projected, std::min(k, std::min(projected.rows(),
                                                    projected.cols())));
  KsvdResult res;
  res.factors.U = basis * small.U;
  res.factors.singular_values = small.singular_values;
  res.factors.V = small.V;
  res.passes_over_a = 2 * q;  // not pass-efficient by design
  maybe_evaluate(res, a, opts);
  return res;
}

KsvdResult prototype_ksvd(const DenseMatrix& a, Index k, Index s,
                          std::uint64_t seed, const SketchSpec* spec,
                          const KsvdOptions& opts) {
  require(k >= 1 && k <= s && s <= std::min(a.rows(), a.cols()),
          "prototype_ksvd: need k <= s <= min(m, n)");
  SketchSpec local = spec ? *spec : SketchSpec::gaussian(s, seed);
  local.s = s;

  PassTracker tracker(a);
  const DenseMatrix c = apply_sketch(tracker.sweep(), local);      // pass 1
  const QrFactors qr = thin_qr(c);
  const DenseMatrix projected = qr.Q.transpose() * tracker.sweep();  // pass 2
  const SvdFactors small = truncated_svd(
      projected, std::min(k, std::min(projected.rows(), projected.cols())));

  KsvdResult res;
  res.factors.U = qr.Q * small.U;
  res.factors.singular_values = small.singular_values;
  res.factors.V = small.V;
  res.passes_over_a = tracker.passes();
  maybe_evaluate(res, a, opts);
  return res;
}

KsvdResult faster_ksvd(const DenseMatrix& a, Index k, Index s, Index p_cs,
                       Index p, std::uint64_t seed, const KsvdOptions& opts) {
  const Index m = a.rows();
  const Index n = a.cols();
  require(k >= 1 && k < s && s < p && p < p_cs,
          "faster_ksvd: need k < s < p < p_cs");

  PassTracker tracker(a);

  // Pass 1: column count sketch.
  const DenseMatrix c =
      count_sketch(tracker.sweep(), s, derive_seed(seed, 1));

  // Pass 2: joint row sketch of [A, C]; both D and L come from the same
  // operator draw. Rows of A are streamed once.
  const std::uint64_t row_seed = derive_seed(seed, 2);
  const DenseMatrix& a_pass2 = tracker.sweep();
  DenseMatrix mid = count_sketch_stream(
      n + s, m, p_cs, row_seed, [&a_pass2, &c, n, s](Index j) -> Vector {
        Vector col(n + s);
        col.head(n) = a_pass2.row(j).transpose();
        col.tail(s) = c.row(j).transpose();
        return col;
      });
  mid = gaussian_sketch(mid, p, derive_seed(seed, 3));

  const DenseMatrix l = mid.topRows(n).transpose();   // p x n
  const DenseMatrix d = mid.bottomRows(s).transpose();  // p x s

  // A rank-deficient D (low-rank input) is fine: the back-substitution
  // below goes through the pseudo-inverse of R_D.
  const QrFactors qr_d = thin_qr(d);
  const DenseMatrix& q_d = qr_d.Q;
  const DenseMatrix& r_d = qr_d.R;

  const SvdFactors small = truncated_svd(q_d.transpose() * l, k);
  const DenseMatrix back =
      c * (pseudo_inverse(r_d) *
           (small.U * small.singular_values.asDiagonal()));
  const SvdFactors final_svd = condensed_svd(back);

  KsvdResult res;
  res.factors.U = final_svd.U;
  res.factors.singular_values = final_svd.singular_values;
  res.factors.V = small.V * final_svd.V;
  res.passes_over_a = tracker.passes();
  maybe_evaluate(res, a, opts);
  return res;
}

}  // namespace randnla
