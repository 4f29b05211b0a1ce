#include "randnla/cur.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <functional>

#include "randnla/core.hpp"
#include "randnla/rng.hpp"
#include "randnla/sketch.hpp"

namespace randnla {

namespace {

std::vector<Index> sorted_union(std::vector<Index> a,
                                const std::vector<Index>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Index numerical_rank(const DenseMatrix& m) {
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(m);
  qr.setThreshold(1e-10);
  return qr.rank();
}

DenseMatrix select_rows(const DenseMatrix& m, const std::vector<Index>& rows) {
  DenseMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

DenseMatrix select_cols(const DenseMatrix& m, const std::vector<Index>& cols) {
  DenseMatrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    out.col(static_cast<Index>(j)) = m.col(cols[j]);
  return out;
}

// The shared skeleton behind the dense and kernel-lazy faster variants:
// identical draw streams and identical arithmetic on the delivered blocks,
// so the two paths agree bit for bit at equal seed.
CurFactors cur_faster_core(
    Index m, Index n, Index c, Index r, Index p_c, Index p_r,
    std::uint64_t seed, CurSampler sampler,
    const std::function<DenseMatrix(const std::vector<Index>&)>& get_cols,
    const std::function<DenseMatrix(const std::vector<Index>&)>& get_rows,
    const std::function<DenseMatrix(const std::vector<Index>&,
                                    const std::vector<Index>&)>& get_block) {
  require(c >= 1 && c <= n, "cur: c out of [1, n]");
  require(r >= 1 && r <= m, "cur: r out of [1, m]");
  if (p_c == 0) p_c = std::min<Index>(2 * (c + r), m);
  if (p_r == 0) p_r = std::min<Index>(2 * (c + r), n);
  require(p_c >= 1 && p_c <= m, "cur: p_c out of [1, m]");
  require(p_r >= 1 && p_r <= n, "cur: p_r out of [1, n]");

  CurFactors out;
  {
    Rng rng = make_rng(derive_seed(seed, 1));
    out.col_indices = sample_without_replacement(n, c, rng);
  }
  {
    Rng rng = make_rng(derive_seed(seed, 2));
    out.row_indices = sample_without_replacement(m, r, rng);
  }
  out.C = get_cols(out.col_indices);
  out.R = get_rows(out.row_indices);

  std::vector<Index> pc_idx, pr_idx;
  if (sampler == CurSampler::kUniform) {
    Rng rng_pc = make_rng(derive_seed(seed, 3));
    Rng rng_pr = make_rng(derive_seed(seed, 4));
    pc_idx = sample_without_replacement(m, p_c, rng_pc);
    pr_idx = sample_without_replacement(n, p_r, rng_pr);
  } else {
    const Vector lev_rows = leverage_scores(out.C.transpose());
    const Vector lev_cols = leverage_scores(out.R);
    Rng rng_pc = make_rng(derive_seed(seed, 3));
    Rng rng_pr = make_rng(derive_seed(seed, 4));
    pc_idx = sample_with_replacement(lev_rows, p_c, rng_pc);
    pr_idx = sample_with_replacement(lev_cols, p_r, rng_pr);
    std::sort(pc_idx.begin(), pc_idx.end());
    pc_idx.erase(std::unique(pc_idx.begin(), pc_idx.end()), pc_idx.end());
    std::sort(pr_idx.begin(), pr_idx.end());
    pr_idx.erase(std::unique(pr_idx.begin(), pr_idx.end()), pr_idx.end());
  }
  out.secondary_rows = sorted_union(std::move(pc_idx), out.row_indices);
  out.secondary_cols = sorted_union(std::move(pr_idx), out.col_indices);

  const DenseMatrix c_sub = select_rows(out.C, out.secondary_rows);
  const DenseMatrix r_sub = select_cols(out.R, out.secondary_cols);
  const DenseMatrix block = get_block(out.secondary_rows, out.secondary_cols);
  out.flagged =
      numerical_rank(c_sub) < std::min(c_sub.rows(), c_sub.cols()) ||
      numerical_rank(r_sub) < std::min(r_sub.rows(), r_sub.cols());
  out.U = pseudo_inverse(c_sub) * block * pseudo_inverse(r_sub);
  return out;
}

// RBF cross-kernel via the inner-product expansion with squared norms
// cached over the full datasets; bit-identical to rbf_kernel entries.
class CrossKernel {
 public:
  CrossKernel(const DenseMatrix& x1, const DenseMatrix& x2, double sigma)
      : x1_(x1), x2_(x2), inv_(1.0 / (sigma * sigma)) {
    require(sigma > 0.0, "cur_faster_kernel: sigma <= 0");
    require(x1.cols() == x2.cols(), "cur_faster_kernel: dimension mismatch");
    sq1_.resize(x1.rows());
    for (Index i = 0; i < x1.rows(); ++i) sq1_(i) = x1.row(i).dot(x1.row(i));
    sq2_.resize(x2.rows());
    for (Index j = 0; j < x2.rows(); ++j) sq2_(j) = x2.row(j).dot(x2.row(j));
  }

  double entry(Index i, Index j) const {
    ++count_;
    return std::exp(
        (x1_.row(i).dot(x2_.row(j)) - 0.5 * (sq1_(i) + sq2_(j))) * inv_);
  }

  DenseMatrix block(const std::vector<Index>& rows,
                    const std::vector<Index>& cols) const {
    DenseMatrix out(static_cast<Index>(rows.size()),
                    static_cast<Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        out(static_cast<Index>(i), static_cast<Index>(j)) =
            entry(rows[i], cols[j]);
    return out;
  }

  long entries_evaluated() const { return count_; }

 private:
  const DenseMatrix& x1_;
  const DenseMatrix& x2_;
  double inv_;
  Vector sq1_, sq2_;
  mutable long count_ = 0;
};

}  // namespace

CurFactors cur_prototype(const DenseMatrix& a, Index c, Index r,
                         std::uint64_t seed) {
  const Index m = a.rows();
  const Index n = a.cols();
  require(c >= 1 && c <= n, "cur_prototype: c out of [1, n]");
  require(r >= 1 && r <= m, "cur_prototype: r out of [1, m]");
  CurFactors out;
  {
    Rng rng = make_rng(derive_seed(seed, 1));
    out.col_indices = sample_without_replacement(n, c, rng);
  }
  {
    Rng rng = make_rng(derive_seed(seed, 2));
    out.row_indices = sample_without_replacement(m, r, rng);
  }
  out.C = select_cols(a, out.col_indices);
  out.R = select_rows(a, out.row_indices);
  out.flagged =
      numerical_rank(out.C) < std::min(out.C.rows(), out.C.cols()) ||
      numerical_rank(out.R) < std::min(out.R.rows(), out.R.cols());
  out.U = pseudo_inverse(out.C) * a * pseudo_inverse(out.R);
  return out;
}

CurFactors cur_faster(const DenseMatrix& a, Index c, Index r, Index p_c,
                      Index p_r, std::uint64_t seed, CurSampler sampler) {
  return cur_faster_core(
      a.rows(), a.cols(), c, r, p_c, p_r, seed, sampler,
      [&a](const std::vector<Index>& cols) { return select_cols(a, cols); },
      [&a](const std::vector<Index>& rows) { return select_rows(a, rows); },
      [&a](const std::vector<Index>& rows, const std::vector<Index>& cols) {
        DenseMatrix out(static_cast<Index>(rows.size()),
                        static_cast<Index>(cols.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) =
                a(rows[i], cols[j]);
        return out;
      });
}

CurFactors cur_faster_kernel(const DenseMatrix& xtest,
                             const DenseMatrix& xtrain, double sigma, Index c,
                             Index r, std::uint64_t seed) {
  const Index m = xtest.rows();
  const Index n = xtrain.rows();
  CrossKernel kernel(xtest, xtrain, sigma);
  std::vector<Index> all_rows(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) all_rows[static_cast<std::size_t>(i)] = i;
  std::vector<Index> all_cols(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) all_cols[static_cast<std::size_t>(j)] = j;

  CurFactors out = cur_faster_core(
      m, n, c, r, 0, 0, seed, CurSampler::kUniform,
      [&](const std::vector<Index>& cols) {
        return kernel.block(all_rows, cols);
      },
      [&](const std::vector<Index>& rows) {
        return kernel.block(rows, all_cols);
      },
      [&](const std::vector<Index>& rows, const std::vector<Index>& cols) {
        return kernel.block(rows, cols);
      });
  out.entries_visited = kernel.entries_evaluated();
  return out;
}

}  // namespace randnla
