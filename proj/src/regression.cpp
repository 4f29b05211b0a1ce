#include "randnla/regression.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "randnla/core.hpp"
#include "randnla/rng.hpp"

namespace randnla {

namespace {

// S^T M for the row sketch described by `spec` (columns of M^T are rows
// of M).
DenseMatrix sketch_rows(const DenseMatrix& m, const SketchSpec& spec) {
  return apply_sketch(m.transpose(), spec).transpose();
}

Index numerical_rank(const DenseMatrix& m) {
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(m);
  qr.setThreshold(1e-10);
  return qr.rank();
}

}  // namespace

LsrSolution lsr_exact(const DenseMatrix& a, const Vector& b) {
  require(a.rows() >= a.cols(), "lsr_exact: n < d");
  require(a.rows() == b.size(), "lsr_exact: dimension mismatch");
  LsrSolution sol;
  sol.x = pseudo_inverse(a) * b;
  sol.objective = (a * sol.x - b).squaredNorm();
  return sol;
}

LsrSolution lsr_cg(const DenseMatrix& a, const Vector& b, double tol,
                   int maxit) {
  require(a.rows() >= a.cols(), "lsr_cg: n < d");
  require(a.rows() == b.size(), "lsr_cg: dimension mismatch");
  LsrSolution sol;
  const Index d = a.cols();
  Vector x = Vector::Zero(d);
  Vector r = a.transpose() * b;  // residual of the normal equations
  const double target = tol * r.norm();
  Vector p = r;
  double rs = r.squaredNorm();
  int it = 0;
  sol.converged = (std::sqrt(rs) <= target);
  while (it < maxit && std::sqrt(rs) > target) {
    const Vector ap = a.transpose() * (a * p);
    const double alpha = rs / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
    ++it;
    sol.converged = (std::sqrt(rs) <= target);
  }
  sol.x = x;
  sol.iterations = it;
  sol.objective = (a * x - b).squaredNorm();
  return sol;
}

LsrSolution lsr_sketched(const DenseMatrix& a, const Vector& b,
                         const SketchSpec& spec) {
  const Index n = a.rows();
  const Index d = a.cols();
  require(n == b.size(), "lsr_sketched: dimension mismatch");
  require(spec.s >= d, "lsr_sketched: s < d");

  // Sketch [A, b] jointly in one pass, then split.
  DenseMatrix stacked(n, d + 1);
  stacked.leftCols(d) = a;
  stacked.col(d) = b;
  const DenseMatrix sk = sketch_rows(stacked, spec);
  const DenseMatrix a_sk = sk.leftCols(d);
  const Vector b_sk = sk.col(d);

  LsrSolution sol;
  if (numerical_rank(a_sk) < d) {
    sol.x = pseudo_inverse(a_sk) * b_sk;
    sol.flagged = true;
  } else {
    sol.x = a_sk.colPivHouseholderQr().solve(b_sk);
  }
  sol.objective = (a * sol.x - b).squaredNorm();
  return sol;
}

LsrSolution lsr_preconditioned(const DenseMatrix& a, const Vector& b,
                               double eps, std::uint64_t seed,
                               const PreconditionedOptions& opts) {
  const Index n = a.rows();
  const Index d = a.cols();
  require(n >= d, "lsr_preconditioned: n < d");
  require(n == b.size(), "lsr_preconditioned: dimension mismatch");
  require(eps > 0.0 && eps < 1.0, "lsr_preconditioned: eps out of (0,1)");

  Index s = opts.sketch_size;
  if (s == 0) s = std::min(d * d, 20 * d);
  s = std::min(s, n);
  require(s >= d, "lsr_preconditioned: sketch size < d");

  DenseMatrix stacked(n, d + 1);
  stacked.leftCols(d) = a;
  stacked.col(d) = b;

  // R_Y singular: resample once with a derived seed, then hard error.
  DenseMatrix q_y, r_y;
  Vector sb;
  std::uint64_t draw_seed = seed;
  for (int attempt = 0;; ++attempt) {
    SketchSpec spec;
    spec.kind = opts.sketch_kind;
    spec.s = s;
    spec.seed = draw_seed;
    const DenseMatrix sk = sketch_rows(stacked, spec);
    const DenseMatrix y = sk.leftCols(d);
    const QrFactors qr = thin_qr(y);
    const double dmin = qr.R.diagonal().cwiseAbs().minCoeff();
    const double dmax = qr.R.diagonal().cwiseAbs().maxCoeff();
    if (dmax > 0.0 && dmin > 1e-12 * dmax) {
      q_y = qr.Q;
      r_y = qr.R;
      sb = sk.col(d);
      break;
    }
    if (attempt >= 1)
      throw std::runtime_error("lsr_preconditioned: sketched matrix singular");
    draw_seed = derive_seed(seed, 0x5e5a);
  }

  // T = R_Y^{-1}, applied by triangular solves; A*T is never formed on the
  // iteration path.
  const auto apply_t = [&r_y](const Vector& v) -> Vector {
    return r_y.triangularView<Eigen::Upper>().solve(v);
  };
  const auto apply_tt = [&r_y](const Vector& v) -> Vector {
    return r_y.triangularView<Eigen::Upper>().transpose().solve(v);
  };

  Vector z = q_y.transpose() * sb;  // z^(0)
  const int budget =
      static_cast<int>(std::ceil(10.0 * std::log10(1.0 / eps)));
  const double grad_scale = apply_tt(a.transpose() * b).norm();
  const double grad_tol = std::max(1e-15 * grad_scale, 1e-300);

  int it = 0;
  LsrSolution sol;
  if (!opts.use_cg) {
    // Gradient descent with unit step; kappa(AT) <= 2 keeps it contractive.
    // A stalled gradient norm means the rounding noise floor was reached.
    double prev_norm = std::numeric_limits<double>::infinity();
    for (; it < budget; ++it) {
      const Vector resid = b - a * apply_t(z);
      const Vector grad = apply_tt(a.transpose() * resid);
      z += grad;
      const double gn = grad.norm();
      if (gn <= grad_tol || gn >= 0.9 * prev_norm) {
        ++it;
        break;
      }
      prev_norm = gn;
    }
  } else {
    // CG on the normal equations of (AT)z = b.
    Vector r = apply_tt(a.transpose() * (b - a * apply_t(z)));
    Vector p = r;
    double rs = r.squaredNorm();
    for (; it < budget && std::sqrt(rs) > grad_tol; ++it) {
      const Vector atp = a * apply_t(p);
      const Vector ap = apply_tt(a.transpose() * atp);
      const double alpha = rs / p.dot(ap);
      z += alpha * p;
      r -= alpha * ap;
      const double rs_new = r.squaredNorm();
      p = r + (rs_new / rs) * p;
      rs = rs_new;
    }
  }

  sol.x = apply_t(z);
  sol.iterations = it;
  sol.objective = (a * sol.x - b).squaredNorm();
  {
    // Diagnostic only; desk scale.
    Eigen::BDCSVD<DenseMatrix> svd(
        a * r_y.triangularView<Eigen::Upper>().solve(
                DenseMatrix::Identity(d, d)));
    const Vector& sv = svd.singularValues();
    sol.kappa_estimate = sv(0) / sv(sv.size() - 1);
  }
  return sol;
}

DenseMatrix cx_regression(const DenseMatrix& a, const DenseMatrix& c, Index s,
                          const SketchSpec& spec) {
  require(a.rows() == c.rows(), "cx_regression: row mismatch");
  require(s >= c.cols(), "cx_regression: s < c");
  SketchSpec row_spec = spec;
  row_spec.s = s;

  // One operator draw for both C and A.
  DenseMatrix stacked(a.rows(), c.cols() + a.cols());
  stacked.leftCols(c.cols()) = c;
  stacked.rightCols(a.cols()) = a;
  const DenseMatrix sk = sketch_rows(stacked, row_spec);
  return pseudo_inverse(sk.leftCols(c.cols())) * sk.rightCols(a.cols());
}

DenseMatrix cur_core_regression(const DenseMatrix& c, const DenseMatrix& r,
                                const DenseMatrix& a, Index s_c, Index s_r,
                                std::uint64_t seed, RowSampler sampler,
                                bool* flagged) {
  const Index m = a.rows();
  const Index n = a.cols();
  require(c.rows() == m && r.cols() == n, "cur_core_regression: shape mismatch");
  require(s_c >= 1 && s_c <= m && s_r >= 1 && s_r <= n,
          "cur_core_regression: sample sizes out of range");

  std::vector<Index> rows_idx, cols_idx;
  if (sampler == RowSampler::kUniform) {
    Rng rng_c = make_rng(derive_seed(seed, 1));
    Rng rng_r = make_rng(derive_seed(seed, 2));
    rows_idx = sample_without_replacement(m, s_c, rng_c);
    cols_idx = sample_without_replacement(n, s_r, rng_r);
  } else {
    const Vector lev_rows = leverage_scores(c.transpose());
    const Vector lev_cols = leverage_scores(r);
    Rng rng_c = make_rng(derive_seed(seed, 1));
    Rng rng_r = make_rng(derive_seed(seed, 2));
    rows_idx = sample_with_replacement(lev_rows, s_c, rng_c);
    cols_idx = sample_with_replacement(lev_cols, s_r, rng_r);
    std::sort(rows_idx.begin(), rows_idx.end());
    rows_idx.erase(std::unique(rows_idx.begin(), rows_idx.end()),
                   rows_idx.end());
    std::sort(cols_idx.begin(), cols_idx.end());
    cols_idx.erase(std::unique(cols_idx.begin(), cols_idx.end()),
                   cols_idx.end());
  }

  DenseMatrix c_sub(static_cast<Index>(rows_idx.size()), c.cols());
  for (std::size_t i = 0; i < rows_idx.size(); ++i)
    c_sub.row(static_cast<Index>(i)) = c.row(rows_idx[i]);
  DenseMatrix r_sub(r.rows(), static_cast<Index>(cols_idx.size()));
  for (std::size_t j = 0; j < cols_idx.size(); ++j)
    r_sub.col(static_cast<Index>(j)) = r.col(cols_idx[j]);
  DenseMatrix a_sub(static_cast<Index>(rows_idx.size()),
                    static_cast<Index>(cols_idx.size()));
  for (std::size_t i = 0; i < rows_idx.size(); ++i)
    for (std::size_t j = 0; j < cols_idx.size(); ++j)
      a_sub(static_cast<Index>(i), static_cast<Index>(j)) =
          a(rows_idx[i], cols_idx[j]);

  if (flagged != nullptr) {
    *flagged = numerical_rank(c_sub) < std::min(c_sub.rows(), c_sub.cols()) ||
               numerical_rank(r_sub) < std::min(r_sub.rows(), r_sub.cols());
  }
  return pseudo_inverse(c_sub) * a_sub * pseudo_inverse(r_sub);
}

}  // namespace randnla
