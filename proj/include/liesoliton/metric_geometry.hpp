#pragma once

#include <cmath>
#include <vector>

#include "liesoliton/lie_algebra.hpp"

namespace liesoliton {

/// A Lie algebra with a positive-definite inner product on the same basis,
/// i.e. a left-invariant metric on the simply connected group.
/// The spectral square root of g and the structure constants in a
/// g-orthonormal frame are precomputed; everything downstream is a pure
/// function of this immutable state.
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(LieAlgebra alg, Matrix metric)
      : alg_(std::move(alg)), g_(std::move(metric)) {
    if (g_.rows() != alg_.dim() || g_.cols() != alg_.dim())
      throw validation_error("metric dimension does not match the algebra");
    linalg::require_spd(g_, "metric");
    auto [sqrt_g, inv_sqrt_g] = linalg::spd_sqrt_and_inverse_sqrt(g_);
    sqrt_g_ = std::move(sqrt_g);
    inv_sqrt_g_ = std::move(inv_sqrt_g);
    // Frame f_a = sum_i (g^{-1/2})_{ia} e_i is g-orthonormal; its adjoint maps
    // in frame coordinates are  ad'_a = g^{1/2} ad(f_a) g^{-1/2}.
    const int n = alg_.dim();
    frame_ad_.reserve(n);
    for (int a = 0; a < n; ++a)
      frame_ad_.push_back(sqrt_g_ * alg_.ad(Vector(inv_sqrt_g_.col(a))) * inv_sqrt_g_);
  }

  const LieAlgebra& algebra() const { return alg_; }
  const Matrix& metric() const { return g_; }
  int dim() const { return alg_.dim(); }
  const Matrix& sqrt_metric() const { return sqrt_g_; }
  const Matrix& inv_sqrt_metric() const { return inv_sqrt_g_; }

  /// Structure constant c'[a][b][d] of the g-orthonormal frame.
  double frame_c(int a, int b, int d) const { return frame_ad_[a](d, b); }
  const Matrix& frame_ad(int a) const { return frame_ad_[a]; }

  /// Rescaled metric c*g on the same algebra.
  MetricLieAlgebra scaled(double c) const { return MetricLieAlgebra(alg_, c * g_); }

 private:
  LieAlgebra alg_;
  Matrix g_;
  Matrix sqrt_g_, inv_sqrt_g_;
  std::vector<Matrix> frame_ad_;
};

/// Connection and curvature data of a metric Lie algebra. `gamma[i]` holds the
/// Levi-Civita coefficients in the input basis: column j of gamma[i] is the
/// coordinate vector of nabla_{e_i} e_j. The full Riemann tensor is only
/// materialised transiently; its largest orthonormal-frame component survives
/// as `riemann_max_abs` for flatness decisions.
struct CurvaturePackage {
  std::vector<Matrix> gamma;
  Matrix ricci_form;    // Ric(e_i, e_j), symmetric
  Matrix ricci_endo;    // g^{-1} Ric, g-self-adjoint
  Matrix ricci_frame;   // Ric in a g-orthonormal frame, symmetric; same spectrum as ricci_endo
  double scalar = 0.0;
  double ricci_norm_sq = 0.0;
  double riemann_max_abs = 0.0;
};

/// Koszul formula on left-invariant fields (frame inner products are constant):
/// 2 <nabla_{e_i} e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>.
inline std::vector<Matrix> levi_civita(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  const Matrix& g = mla.metric();
  const LieAlgebra& alg = mla.algebra();
  Matrix g_inv = mla.inv_sqrt_metric() * mla.inv_sqrt_metric();
  std::vector<Matrix> gamma(n, Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector rhs(n);
      Vector g_bij = g * alg.ad(i).col(j);
      for (int k = 0; k < n; ++k) {
        const Vector g_bjk = g * alg.ad(j).col(k);
        const Vector g_bki = g * alg.ad(k).col(i);
        rhs(k) = g_bij(k) - g_bjk(i) + g_bki(j);
      }
      gamma[i].col(j) = 0.5 * (g_inv * rhs);
    }
  }
  return gamma;
}

namespace detail {
/// Levi-Civita coefficients of the g-orthonormal frame (plain index gymnastics,
/// since the frame metric is the identity).
inline std::vector<Matrix> frame_levi_civita(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  std::vector<Matrix> G(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        G[a](c, b) = 0.5 * (mla.frame_c(a, b, c) - mla.frame_c(b, c, a) + mla.frame_c(c, a, b));
  return G;
}

/// Ricci form in the g-orthonormal frame; tracks the largest Riemann component
/// when a sink is provided.
inline Matrix frame_ricci(const MetricLieAlgebra& mla, double* riemann_max_abs = nullptr) {
  const int n = mla.dim();
  const std::vector<Matrix> G = frame_levi_civita(mla);
  Matrix ric = Matrix::Zero(n, n);
  double riemann_max = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Matrix M = G[a] * G[b] - G[b] * G[a];
      for (int m = 0; m < n; ++m) M -= mla.frame_c(a, b, m) * G[m];
      if (riemann_max_abs) riemann_max = std::max(riemann_max, M.cwiseAbs().maxCoeff());
      // <R(f_a, f_b) f_c, f_a> = M(a, c)
      ric.row(b) += M.row(a);
    }
  }
  if (riemann_max_abs) *riemann_max_abs = riemann_max;
  return (0.5 * (ric + ric.transpose())).eval();  // kill roundoff skew
}
}  // namespace detail

/// Curvature through the g-orthonormal frame: R(x,y)z = [nabla_x, nabla_y] z
/// - nabla_{[x,y]} z evaluated on the frame, Ric(x,y) = sum_a <R(f_a,x)y, f_a>.
inline CurvaturePackage curvature(const MetricLieAlgebra& mla) {
  CurvaturePackage out;
  Matrix ric_frame = detail::frame_ricci(mla, &out.riemann_max_abs);
  out.gamma = levi_civita(mla);
  out.ricci_frame = ric_frame;
  out.ricci_form = mla.sqrt_metric() * ric_frame * mla.sqrt_metric();
  out.ricci_endo = mla.inv_sqrt_metric() * ric_frame * mla.sqrt_metric();
  out.scalar = ric_frame.trace();
  out.ricci_norm_sq = ric_frame.squaredNorm();
  return out;
}

/// Ricci bilinear form alone (the Ricci flow right-hand side needs nothing else).
inline Matrix ricci_form(const MetricLieAlgebra& mla) {
  Matrix ric_frame = detail::frame_ricci(mla);
  return mla.sqrt_metric() * ric_frame * mla.sqrt_metric();
}

/// Constant divergence of the left-invariant field X:
/// div X = sum_a <nabla_{f_a} X, f_a> over a g-orthonormal frame.
inline double divergence_left_invariant(const MetricLieAlgebra& mla, const Vector& X) {
  const std::vector<Matrix> G = detail::frame_levi_civita(mla);
  const Vector xf = mla.sqrt_metric() * X;  // frame coordinates
  double div = 0.0;
  for (int a = 0; a < mla.dim(); ++a) div += (G[a] * xf)(a);
  return div;
}

/// (L_X g)(e_i, e_j) for the left-invariant extension of X. Computed through
/// the connection and through brackets; the two routes must agree.
inline Matrix lie_derivative_metric(const MetricLieAlgebra& mla, const Vector& X) {
  const int n = mla.dim();
  const Matrix& g = mla.metric();
  const std::vector<Matrix> gamma = levi_civita(mla);
  Matrix Q(n, n);  // Q.col(i) = g * nabla_{e_i} X
  for (int i = 0; i < n; ++i) Q.col(i) = g * (gamma[i] * X);
  Matrix via_connection = Q + Q.transpose();
  Matrix M = g * mla.algebra().ad(X);
  Matrix via_brackets = -(M + M.transpose());
  const double scale = std::max(1.0, via_connection.cwiseAbs().maxCoeff());
  if ((via_connection - via_brackets).cwiseAbs().maxCoeff() > tol::alg * scale)
    throw internal_inconsistency("lie_derivative_metric: connection and bracket routes disagree");
  return via_connection;
}

/// Left-invariant parallel fields: the common nullspace of z -> nabla_{e_i} z.
/// This is a proxy for the flat de Rham factor, hence the name used in reports:
/// "left-invariant flat factor".
inline Matrix euclidean_factor(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  const std::vector<Matrix> gamma = levi_civita(mla);
  Matrix stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.middleRows(i * n, n) = gamma[i];
  return linalg::nullspace(stacked);
}

}  // namespace liesoliton
