#pragma once

#include <optional>
#include <string>

#include "liesoliton/metric_geometry.hpp"

namespace liesoliton {

enum class SolitonVerdict { nilsoliton, left_invariant_field, einstein, infeasible, ambiguous };

enum class SolitonType { expanding, steady, shrinking, trivial };

inline const char* to_string(SolitonVerdict v) {
  switch (v) {
    case SolitonVerdict::nilsoliton: return "nilsoliton";
    case SolitonVerdict::left_invariant_field: return "left-invariant-field";
    case SolitonVerdict::einstein: return "einstein";
    case SolitonVerdict::infeasible: return "infeasible";
    case SolitonVerdict::ambiguous: return "ambiguous";
  }
  return "?";
}

inline const char* to_string(SolitonType t) {
  switch (t) {
    case SolitonType::expanding: return "expanding";
    case SolitonType::steady: return "steady";
    case SolitonType::shrinking: return "shrinking";
    case SolitonType::trivial: return "trivial";
  }
  return "?";
}

/// Soliton-type classification from the flow convention sigma(t) = 1 + 2*lambda*t:
/// expanding for lambda > 0, shrinking for lambda < 0, steady otherwise.
struct TypeClassification {
  SolitonType type = SolitonType::steady;
  bool consistent = true;  // sign rule sign(R0) == -sign(lambda), at tolerance
};

inline TypeClassification classify_soliton_type(double scalar0, double lambda) {
  TypeClassification out;
  const int s_lam = lambda > tol::rank ? 1 : (lambda < -tol::rank ? -1 : 0);
  const int s_r = scalar0 > tol::rank ? 1 : (scalar0 < -tol::rank ? -1 : 0);
  out.type = s_lam > 0 ? SolitonType::expanding
                       : (s_lam < 0 ? SolitonType::shrinking : SolitonType::steady);
  out.consistent = (s_r == -s_lam);
  return out;
}

/// Feasibility verdict for the algebraic soliton systems, with the data that
/// witnesses it. `residual` is the minimum Frobenius residual of the solve;
/// verdicts at or below tol::sol() are feasible, above 10*tol::sol() infeasible,
/// and the margin in between is reported as ambiguous rather than silently
/// classified.
struct SolitonCertificate {
  SolitonVerdict verdict = SolitonVerdict::infeasible;
  double c = 0.0;                       // nilsoliton constant in Ric = c*I + D
  Matrix derivation;                    // D, when verdict == nilsoliton
  Vector field;                         // X, for the left-invariant-field system
  double lambda = 0.0;                  // soliton constant, lambda = -c for nilsolitons
  double residual = 0.0;
  double scalar0 = 0.0;                 // scalar curvature of the input metric
  std::optional<SolitonType> soliton_type;
  bool sign_consistent = true;
};

namespace detail {
inline Vector vec(const Matrix& M) {
  return Eigen::Map<const Vector>(M.data(), M.size());
}
}  // namespace detail

/// Decides the nilsoliton equation Ric = c*I + D, D a derivation, by linear
/// least squares over (c, derivation coefficients). Requires a nilpotent algebra.
inline SolitonCertificate solve_nilsoliton(const MetricLieAlgebra& mla) {
  if (!is_nilpotent(mla.algebra()))
    throw precondition_error("nilsoliton equation requires nilpotent algebra");
  const int n = mla.dim();
  const CurvaturePackage curv = curvature(mla);

  SolitonCertificate cert;
  cert.scalar0 = curv.scalar;
  cert.derivation = Matrix::Zero(n, n);
  cert.field = Vector::Zero(n);

  if (std::sqrt(curv.ricci_norm_sq) <= tol::alg) {
    // Ricci-flat metric: Ric = 0 = 0*I + 0, a trivial (steady, Einstein) soliton.
    cert.verdict = SolitonVerdict::einstein;
    cert.c = 0.0;
    cert.lambda = 0.0;
    cert.residual = std::sqrt(curv.ricci_norm_sq);
    cert.soliton_type = SolitonType::trivial;
    return cert;
  }

  const DerivationSpace der = derivation_algebra(mla.algebra());
  Matrix A(n * n, 1 + der.dimension);
  A.col(0) = detail::vec(Matrix(Matrix::Identity(n, n)));
  for (int m = 0; m < der.dimension; ++m) A.col(1 + m) = detail::vec(der.basis[m]);
  auto [x, residual] = linalg::least_squares(A, detail::vec(curv.ricci_endo));

  cert.residual = residual;
  cert.c = x(0);
  for (int m = 0; m < der.dimension; ++m) cert.derivation += x(1 + m) * der.basis[m];
  cert.lambda = -cert.c;

  if (residual <= tol::sol()) {
    cert.verdict = SolitonVerdict::nilsoliton;
    const auto cls = classify_soliton_type(curv.scalar, cert.lambda);
    cert.soliton_type = cls.type;
    cert.sign_consistent = cls.consistent;
  } else if (residual > 10.0 * tol::sol()) {
    cert.verdict = SolitonVerdict::infeasible;
  } else {
    cert.verdict = SolitonVerdict::ambiguous;
  }
  return cert;
}

/// Solves -2 Ric = 2 lambda g + L_X g in the unknowns (X, lambda) over the
/// left-invariant fields. A feasible solve with an essentially zero (or
/// Killing) field is the Einstein case, not a genuine soliton field.
inline SolitonCertificate solve_left_invariant_field(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  const CurvaturePackage curv = curvature(mla);
  const Matrix& g = mla.metric();

  Matrix A(n * n, n + 1);
  for (int j = 0; j < n; ++j)
    A.col(j) = detail::vec(lie_derivative_metric(mla, Vector(Vector::Unit(n, j))));
  A.col(n) = detail::vec(Matrix(2.0 * g));
  auto [x, residual] = linalg::least_squares(A, detail::vec(Matrix(-2.0 * curv.ricci_form)));

  SolitonCertificate cert;
  cert.scalar0 = curv.scalar;
  cert.derivation = Matrix::Zero(n, n);
  cert.field = x.head(n);
  cert.lambda = x(n);
  cert.residual = residual;

  if (residual <= tol::sol()) {
    const Matrix lie_d = lie_derivative_metric(mla, cert.field);
    const double metric_scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    const bool field_moves_metric = lie_d.cwiseAbs().maxCoeff() > tol::alg * metric_scale;
    const bool nontrivial = cert.field.norm() > tol::rank && field_moves_metric;
    if (nontrivial) {
      cert.verdict = SolitonVerdict::left_invariant_field;
    } else {
      // X is zero or Killing: the metric itself satisfies Ric = -lambda g.
      cert.verdict = SolitonVerdict::einstein;
      cert.field = Vector::Zero(n);
      cert.lambda = -curv.scalar / n;
      cert.residual = (-2.0 * curv.ricci_form - 2.0 * cert.lambda * g).norm();
    }
    const auto cls = classify_soliton_type(curv.scalar, cert.lambda);
    cert.soliton_type = cls.type;
    cert.sign_consistent = cls.consistent;
    if (cert.verdict == SolitonVerdict::einstein && std::sqrt(curv.ricci_norm_sq) <= tol::alg)
      cert.soliton_type = SolitonType::trivial;  // Ricci-flat
  } else if (residual > 10.0 * tol::sol()) {
    cert.verdict = SolitonVerdict::infeasible;
  } else {
    cert.verdict = SolitonVerdict::ambiguous;
  }
  return cert;
}

/// Milnor frame of a 3-dimensional nonunimodular metric Lie algebra:
/// an orthonormal basis with [e1,e2] = alpha e2 + beta e3,
/// [e1,e3] = gamma e2 + delta e3, [e2,e3] = 0, alpha+delta != 0 and
/// alpha*gamma + beta*delta = 0.
struct MilnorFrame {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
  Matrix frame;  // columns are the frame vectors in the input basis
};

inline MilnorFrame milnor_frame(const MetricLieAlgebra& mla) {
  if (mla.dim() != 3) throw precondition_error("Milnor frame requires a 3-dimensional algebra");
  const LieAlgebra& alg = mla.algebra();
  if (is_unimodular(alg))
    throw precondition_error("Milnor frame requires a nonunimodular algebra");
  const Matrix& g = mla.metric();

  // Trace functional tau(x) = tr(ad x); its 2-dimensional kernel U is an
  // abelian ideal, and e1 is the g-unit normal of U.
  Vector tau(3);
  for (int i = 0; i < 3; ++i) tau(i) = alg.ad(i).trace();
  Vector e1 = mla.inv_sqrt_metric() * mla.inv_sqrt_metric() * tau;  // g^{-1} tau
  e1 /= std::sqrt(double(e1.transpose() * g * e1));                 // tau(e1) > 0 automatically

  // Deterministic basis of U = ker tau, eliminating against the largest
  // component, then g-orthonormalised in ascending index order.
  int p = 0;
  tau.cwiseAbs().maxCoeff(&p);
  Matrix U(3, 2);
  int col = 0;
  for (int q = 0; q < 3; ++q) {
    if (q == p) continue;
    U.col(col) = Vector::Unit(3, q) - (tau(q) / tau(p)) * Vector::Unit(3, p);
    ++col;
  }
  Matrix ub = linalg::metric_orthonormalize(U, g);
  if (ub.cols() != 2)
    throw internal_inconsistency("Milnor frame: unimodular kernel is not 2-dimensional");

  // ad(e1) restricted to U, as a 2x2 matrix L in the basis (u1, u2).
  Matrix L(2, 2);
  for (int b = 0; b < 2; ++b) {
    Vector img = alg.bracket(e1, Vector(ub.col(b)));
    for (int a = 0; a < 2; ++a) L(a, b) = double(ub.col(a).transpose() * g * img);
  }

  // Rotate (u1, u2) to make the columns of L orthogonal (diagonalise L^T L);
  // in the resulting frame L = [[alpha, gamma], [beta, delta]], so this is
  // exactly the alpha*gamma + beta*delta = 0 normalisation. Signs are fixed
  // lexicographically: first nonnegligible component positive.
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(L.transpose() * L));
  Matrix R = es.eigenvectors();
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r) {
      if (std::abs(R(r, c)) <= 1e-12) continue;
      if (R(r, c) < 0) R.col(c) = -R.col(c);
      break;
    }
  Matrix frame(3, 3);
  frame.col(0) = e1;
  frame.col(1) = ub * R.col(0);
  frame.col(2) = ub * R.col(1);

  MilnorFrame out;
  out.frame = frame;
  auto coeff = [&](int target, const Vector& img) {
    return double(frame.col(target).transpose() * g * img);
  };
  Vector b12 = alg.bracket(Vector(frame.col(0)), Vector(frame.col(1)));
  Vector b13 = alg.bracket(Vector(frame.col(0)), Vector(frame.col(2)));
  Vector b23 = alg.bracket(Vector(frame.col(1)), Vector(frame.col(2)));
  out.alpha = coeff(1, b12);
  out.beta = coeff(2, b12);
  out.gamma = coeff(1, b13);
  out.delta = coeff(2, b13);

  if (b23.norm() > tol::alg)
    throw internal_inconsistency("Milnor frame: [e2, e3] != 0 in the constructed frame");
  if (std::abs(out.alpha + out.delta) <= tol::rank)
    throw internal_inconsistency("Milnor frame: alpha + delta vanished");
  if (std::abs(out.alpha * out.gamma + out.beta * out.delta) > tol::alg)
    throw internal_inconsistency("Milnor frame: alpha*gamma + beta*delta != 0");
  return out;
}

/// Obstructions to a gradient soliton structure: a nondegenerate Ricci tensor
/// rules one out, and so does the absence of a flat factor. The flat-factor
/// dimension is the left-invariant proxy from euclidean_factor.
struct GradientObstruction {
  bool ricci_nondegenerate = false;
  int flat_factor_dim = 0;
  bool not_gradient = false;  // verdict: true = not-gradient, false = inconclusive
};

inline GradientObstruction gradient_obstruction(const MetricLieAlgebra& mla) {
  const CurvaturePackage curv = curvature(mla);
  Eigen::SelfAdjointEigenSolver<Matrix> es(curv.ricci_frame, Eigen::EigenvaluesOnly);
  GradientObstruction out;
  out.ricci_nondegenerate = es.eigenvalues().cwiseAbs().minCoeff() > tol::rank;
  out.flat_factor_dim = static_cast<int>(euclidean_factor(mla).cols());
  out.not_gradient = out.ricci_nondegenerate || out.flat_factor_dim == 0;
  return out;
}

}  // namespace liesoliton
