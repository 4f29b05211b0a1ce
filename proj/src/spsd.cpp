#include "randnla/spsd.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "randnla/core.hpp"
#include "randnla/rng.hpp"

namespace randnla {

namespace {

std::vector<Index> sorted_union(std::vector<Index> a,
                                const std::vector<Index>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

DenseMatrix select_rows(const DenseMatrix& m, const std::vector<Index>& rows) {
  DenseMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

DenseMatrix rbf_kernel(const DenseMatrix& x1, const DenseMatrix& x2,
                       double sigma) {
  require(sigma > 0.0, "rbf_kernel: sigma <= 0");
  require(x1.cols() == x2.cols(), "rbf_kernel: dimension mismatch");
  const double inv = 1.0 / (sigma * sigma);
  Vector sq1(x1.rows()), sq2(x2.rows());
  for (Index i = 0; i < x1.rows(); ++i) sq1(i) = x1.row(i).dot(x1.row(i));
  for (Index j = 0; j < x2.rows(); ++j) sq2(j) = x2.row(j).dot(x2.row(j));
  DenseMatrix k(x1.rows(), x2.rows());
  for (Index i = 0; i < x1.rows(); ++i)
    for (Index j = 0; j < x2.rows(); ++j)
      k(i, j) = std::exp(
          (x1.row(i).dot(x2.row(j)) - 0.5 * (sq1(i) + sq2(j))) * inv);
  return k;
}

KernelView::KernelView(DenseMatrix data, KernelSpec spec)
    : data_(std::move(data)), spec_(spec) {
  require(spec_.sigma > 0.0, "KernelView: sigma <= 0");
  require_finite(data_, "KernelView data");
  sq_norms_.resize(data_.rows());
  for (Index i = 0; i < data_.rows(); ++i)
    sq_norms_(i) = data_.row(i).dot(data_.row(i));
}

double KernelView::entry(Index i, Index j) const {
  counter_.fetch_add(1, std::memory_order_relaxed);
  const double inv = 1.0 / (spec_.sigma * spec_.sigma);
  return std::exp(
      (data_.row(i).dot(data_.row(j)) - 0.5 * (sq_norms_(i) + sq_norms_(j))) *
      inv);
}

DenseMatrix KernelView::columns(const std::vector<Index>& cols) const {
  DenseMatrix out(n(), static_cast<Index>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t)
    for (Index i = 0; i < n(); ++i)
      out(i, static_cast<Index>(t)) = entry(i, cols[t]);
  return out;
}

DenseMatrix KernelView::block(const std::vector<Index>& rows,
                              const std::vector<Index>& cols) const {
  DenseMatrix out(static_cast<Index>(rows.size()),
                  static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) =
          entry(rows[i], cols[j]);
  return out;
}

DenseMatrix DenseSpsdSource::columns(const std::vector<Index>& cols) const {
  DenseMatrix out(k_.rows(), static_cast<Index>(cols.size()));
  for (std::size_t t = 0; t < cols.size(); ++t)
    out.col(static_cast<Index>(t)) = k_.col(cols[t]);
  return out;
}

DenseMatrix DenseSpsdSource::block(const std::vector<Index>& rows,
                                   const std::vector<Index>& cols) const {
  DenseMatrix out(static_cast<Index>(rows.size()),
                  static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = k_(rows[i], cols[j]);
  return out;
}

DenseMatrix KernelSpsdSource::columns(const std::vector<Index>& cols) const {
  return view_.columns(cols);
}

DenseMatrix KernelSpsdSource::block(const std::vector<Index>& rows,
                                    const std::vector<Index>& cols) const {
  return view_.block(rows, cols);
}

DenseMatrix KernelSpsdSource::full() const {
  std::vector<Index> all(static_cast<std::size_t>(view_.n()));
  for (Index i = 0; i < view_.n(); ++i) all[static_cast<std::size_t>(i)] = i;
  return view_.block(all, all);
}

SpsdSketch spsd_prototype(const DenseMatrix& k, Index s, std::uint64_t seed,
                          const SketchSpec* spec) {
  require(k.rows() == k.cols(), "spsd_prototype: K not square");
  require(s >= 1 && s <= k.cols(), "spsd_prototype: s > n");
  SketchSpec local = spec ? *spec : SketchSpec::count_sketch(s, seed);
  local.s = s;
  const DenseMatrix c = apply_sketch(k, local);
  SpsdSketch out;
  out.Q = condensed_svd(c).U;
  out.Z = out.Q.transpose() * k * out.Q;
  out.Z = 0.5 * (out.Z + out.Z.transpose()).eval();
  return out;
}

SpsdSketch spsd_faster(const SpsdSource& k, Index s, Index p,
                       std::uint64_t seed) {
  const Index n = k.n();
  require(s >= 1 && s <= p && p <= n, "spsd_faster: need s <= p <= n");

  Rng rng_s = make_rng(derive_seed(seed, 1));
  SpsdSketch out;
  out.selected = sample_without_replacement(n, s, rng_s);
  const DenseMatrix c = k.columns(out.selected);
  const QrFactors qr = thin_qr(c);
  out.Q = qr.Q;

  // Leverage scores of the rows of Q_C drive the secondary selection. A
  // budget of p = n covers everything, so skip the sampling in that case.
  std::vector<Index> p_idx;
  if (p == n) {
    p_idx.resize(static_cast<std::size_t>(n));
    std::iota(p_idx.begin(), p_idx.end(), Index{0});
  } else {
    const Vector lev = out.Q.rowwise().squaredNorm();
    Rng rng_p = make_rng(derive_seed(seed, 2));
    p_idx = sample_with_replacement(lev, p, rng_p);
    std::sort(p_idx.begin(), p_idx.end());
    p_idx.erase(std::unique(p_idx.begin(), p_idx.end()), p_idx.end());
    p_idx = sorted_union(std::move(p_idx), out.selected);  // S within P
  }
  out.secondary = p_idx;

  const DenseMatrix q_sub = select_rows(out.Q, p_idx);
  const DenseMatrix k_sub = k.block(p_idx, p_idx);
  Eigen::ColPivHouseholderQR<DenseMatrix> rank_probe(q_sub);
  rank_probe.setThreshold(1e-10);
  out.flagged = rank_probe.rank() < q_sub.cols();
  const DenseMatrix pinv = pseudo_inverse(q_sub);
  out.Z = pinv * k_sub * pinv.transpose();
  out.Z = 0.5 * (out.Z + out.Z.transpose()).eval();
  return out;
}

SpsdSketch spsd_faster(const DenseMatrix& k, Index s, Index p,
                       std::uint64_t seed) {
  require(k.rows() == k.cols(), "spsd_faster: K not square");
  return spsd_faster(DenseSpsdSource(k), s, p, seed);
}

SpsdSketch spsd_faster(const KernelView& k, Index s, Index p,
                       std::uint64_t seed) {
  return spsd_faster(KernelSpsdSource(k), s, p, seed);
}

NystromFactor nystrom(const SpsdSource& k, Index s, std::uint64_t seed,
                      Index target_k) {
  const Index n = k.n();
  Index kk = target_k > 0
                 ? target_k
                 : static_cast<Index>(std::ceil(0.8 * static_cast<double>(s)));
  require(kk >= 1 && kk <= s && s <= n, "nystrom: need k <= s <= n");

  Rng rng = make_rng(derive_seed(seed, 1));
  NystromFactor out;
  out.selected = sample_without_replacement(n, s, rng);
  const DenseMatrix c = k.columns(out.selected);
  const DenseMatrix w = select_rows(c, out.selected);

  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(0.5 *
                                                 (w + w.transpose()));
  // Eigenvalues ascending; walk from the top with a stability floor.
  const Vector& lam = eig.eigenvalues();
  const double lam_max = lam(s - 1);
  if (lam_max <= 0.0)
    throw std::runtime_error("nystrom: kernel block has no positive spectrum");
  const double floor =
      std::numeric_limits<double>::epsilon() * lam_max * static_cast<double>(n);
  Index kept = 0;
  while (kept < kk && lam(s - 1 - kept) > floor) ++kept;
  if (kept == 0)
    throw std::runtime_error("nystrom: no retained eigenvalues");

  DenseMatrix u(s, kept);
  Vector inv_sqrt(kept);
  for (Index t = 0; t < kept; ++t) {
    u.col(t) = eig.eigenvectors().col(s - 1 - t);
    inv_sqrt(t) = 1.0 / std::sqrt(lam(s - 1 - t));
  }
  out.L = c * (u * inv_sqrt.asDiagonal());
  return out;
}

NystromFactor nystrom(const KernelView& k, Index s, std::uint64_t seed,
                      Index target_k) {
  return nystrom(KernelSpsdSource(k), s, seed, target_k);
}

NystromFactor nystrom(const DenseMatrix& k, Index s, std::uint64_t seed,
                      Index target_k) {
  require(k.rows() == k.cols(), "nystrom: K not square");
  return nystrom(DenseSpsdSource(k), s, seed, target_k);
}

Vector smw_solve(const DenseMatrix& l, double alpha, const Vector& y) {
  require(alpha > 0.0, "smw_solve: alpha <= 0");
  require(l.rows() == y.size(), "smw_solve: dimension mismatch");
  const Index cols = l.cols();
  if (cols == 0) return y / alpha;
  const DenseMatrix inner =
      alpha * DenseMatrix::Identity(cols, cols) + l.transpose() * l;
  const Vector t = inner.ldlt().solve(l.transpose() * y);
  return (y - l * t) / alpha;
}

Vector shifted_smw_solve(const DenseMatrix& q, const DenseMatrix& z,
                         double alpha, const Vector& y) {
  require(alpha > 0.0, "shifted_smw_solve: alpha <= 0");
  require(q.rows() == y.size() && q.cols() == z.rows() && z.rows() == z.cols(),
          "shifted_smw_solve: dimension mismatch");
  // For orthonormal Q: (Q Z Q' + alpha I)^{-1}
  //   = alpha^{-1} (I - Q Q') + Q (alpha I + Z)^{-1} Q'.
  const Index s = z.rows();
  const DenseMatrix inner = alpha * DenseMatrix::Identity(s, s) + z;
  Eigen::FullPivLU<DenseMatrix> lu(inner);
  if (!lu.isInvertible())
    throw std::runtime_error("shifted_smw_solve: inner system singular");
  const Vector qy = q.transpose() * y;
  return (y - q * qy) / alpha + q * lu.solve(qy);
}

std::pair<DenseMatrix, Vector> approx_eig(const DenseMatrix& l, Index k) {
  require(k >= 1 && k <= l.cols(), "approx_eig: k > cols(L)");
  const SvdFactors f = condensed_svd(l);
  if (k > f.rank())
    throw std::invalid_argument("approx_eig: k exceeds rank(L)");
  DenseMatrix u = f.U.leftCols(k);
  Vector lam = f.singular_values.head(k).array().square();
  return {std::move(u), std::move(lam)};
}

}  // namespace randnla
