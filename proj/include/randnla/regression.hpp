#pragma once

#include <cstdint>
#include <optional>

#include "randnla/sketch.hpp"
#include "randnla/types.hpp"

namespace randnla {

struct LsrSolution {
  Vector x;
  double objective = 0.0;  // |Ax - b|_2^2
  int iterations = 0;      // 0 for direct solvers
  std::optional<double> kappa_estimate;
  bool converged = true;
  bool flagged = false;  // rank-deficiency fallback taken
};

/// x = A^+ b (closed form).
LsrSolution lsr_exact(const DenseMatrix& a, const Vector& b);

/// Conjugate gradient on the normal equations A'Ax = A'b without forming
/// A'A. Converged when |A'(Ax-b)| <= tol * |A'b|.
LsrSolution lsr_cg(const DenseMatrix& a, const Vector& b, double tol,
                   int maxit);

/// Sketched inexact LSR: sketch the stacked [A, b] jointly in one pass,
/// then solve the small problem. Falls back to a pseudo-inverse solve
/// (flagged) when S'A is rank deficient.
LsrSolution lsr_sketched(const DenseMatrix& a, const Vector& b,
                         const SketchSpec& spec);

struct PreconditionedOptions {
  Index sketch_size = 0;  // 0: min(d^2, 20 d) capped at n
  bool use_cg = false;    // default: gradient descent with unit step
  SketchKind sketch_kind = SketchKind::kCountSketch;
};

/// Sketch-and-precondition LSR: T = R_Y^{-1} from the QR of Y = S'A,
/// z0 = Q_Y' S'b, then O(log 1/eps) iterations on |(AT)z - b|^2. The
/// product A*T is never materialized on the iteration path; T and A are
/// applied as two multiplies. kappa_estimate reports kappa(A T) via SVD
/// at desk scale.
LsrSolution lsr_preconditioned(const DenseMatrix& a, const Vector& b,
                               double eps, std::uint64_t seed,
                               const PreconditionedOptions& opts = {});

/// CX regression: Xtilde = (S'C)^+ (S'A) with the sketch applied to rows.
DenseMatrix cx_regression(const DenseMatrix& a, const DenseMatrix& c, Index s,
                          const SketchSpec& spec);

enum class RowSampler { kUniform, kLeverage };

/// CUR-type core regression:
/// Xtilde = (Sc'C)^+ (Sc' A Sr) (R Sr)^+ with uniform or leverage sampling
/// of the rows of C and the columns of R.
DenseMatrix cur_core_regression(const DenseMatrix& c, const DenseMatrix& r,
                                const DenseMatrix& a, Index s_c, Index s_r,
                                std::uint64_t seed, RowSampler sampler,
                                bool* flagged = nullptr);

}  // namespace randnla
