#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "liesoliton/soliton.hpp"

namespace liesoliton {

/// Orthogonal splitting n = z + v of a 2-step nilpotent metric Lie algebra
/// (z the center, v its g-orthogonal complement) together with the maps
/// j(z): v -> v defined by <j(z)x, y> = <z, [x,y]>. Each j(z) is skew.
struct TwoStepDecomposition {
  Matrix z_basis;               // columns: g-orthonormal basis of the center
  Matrix v_basis;               // columns: g-orthonormal basis of v
  std::vector<Matrix> j_maps;   // j(z_r) in the v-basis, one per z-basis column
};

inline TwoStepDecomposition decompose_two_step(const MetricLieAlgebra& mla) {
  const auto series = lower_central_series(mla.algebra());
  if (!series.nilpotent || series.nilpotency_class != 2)
    throw precondition_error("two-step decomposition requires nilpotency class 2");
  const LieAlgebra& alg = mla.algebra();
  const Matrix& g = mla.metric();
  const int n = mla.dim();

  Matrix z_coord = center(alg);
  TwoStepDecomposition out;
  out.z_basis = linalg::metric_orthonormalize(z_coord, g);

  // v = g-orthogonal complement of the center.
  Matrix constraints = out.z_basis.transpose() * g;  // rows z_r^T g
  out.v_basis = linalg::metric_orthonormalize(linalg::nullspace(constraints), g);
  const int dz = static_cast<int>(out.z_basis.cols());
  const int dv = static_cast<int>(out.v_basis.cols());
  if (dz + dv != n)
    throw internal_inconsistency("two-step decomposition: center + complement != algebra");

  out.j_maps.assign(dz, Matrix::Zero(dv, dv));
  for (int b = 0; b < dv; ++b)
    for (int a = 0; a < dv; ++a) {
      // <j(z_r) v_b, v_a> = <z_r, [v_b, v_a]>
      Vector bracket_ba = alg.bracket(Vector(out.v_basis.col(b)), Vector(out.v_basis.col(a)));
      Vector pairing = out.z_basis.transpose() * g * bracket_ba;
      for (int r = 0; r < dz; ++r) out.j_maps[r](a, b) = pairing(r);
    }
  return out;
}

namespace detail {
/// Deterministic unit-sphere sample in dimension m (low-discrepancy for m <= 3,
/// a fixed-seed generator above that; the catalog never exceeds m = 3).
inline std::vector<Vector> unit_sphere_points(int m, int count) {
  std::vector<Vector> pts;
  if (m == 1) {
    pts.push_back(Vector::Constant(1, 1.0));
    return pts;
  }
  pts.reserve(count);
  if (m == 2) {
    for (int k = 0; k < count; ++k) {
      const double th = std::numbers::pi * (k + 0.5) / count;  // half circle; j is linear in z
      Vector p(2);
      p << std::cos(th), std::sin(th);
      pts.push_back(std::move(p));
    }
  } else if (m == 3) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * k;
      Vector p(3);
      p << r * std::cos(phi), r * std::sin(phi), z;
      pts.push_back(std::move(p));
    }
  } else {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state;
    };
    auto uniform = [&]() { return double(next() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < count; ++k) {
      Vector p(m);
      for (int i = 0; i < m; i += 2) {
        const double u1 = std::max(uniform(), 1e-300), u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        p(i) = rad * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < m) p(i + 1) = rad * std::sin(2.0 * std::numbers::pi * u2);
      }
      if (p.norm() < 1e-12) continue;
      pts.push_back(p / p.norm());
    }
  }
  return pts;
}
}  // namespace detail

/// Nonsingularity: j(z) invertible for every nonzero z. Decided on the z-basis
/// plus a 1000-point deterministic sample of the unit sphere in z.
inline bool is_nonsingular(const TwoStepDecomposition& dec) {
  const int dz = static_cast<int>(dec.j_maps.size());
  if (dz == 0) return false;
  auto min_singular_value = [&](const Vector& zeta) {
    Matrix J = Matrix::Zero(dec.j_maps[0].rows(), dec.j_maps[0].cols());
    for (int r = 0; r < dz; ++r) J += zeta(r) * dec.j_maps[r];
    Eigen::JacobiSVD<Matrix> svd(J);
    return svd.singularValues().minCoeff();
  };
  for (int r = 0; r < dz; ++r)
    if (min_singular_value(Vector(Vector::Unit(dz, r))) <= tol::rank) return false;
  for (const Vector& zeta : detail::unit_sphere_points(dz, 1000))
    if (min_singular_value(zeta) <= tol::rank) return false;
  return true;
}

/// Generalised Heisenberg (H-type) test via the polarised Clifford identity:
/// j(z_a) j(z_b) + j(z_b) j(z_a) = -2 <z_a, z_b> Id on v.
inline bool is_htype(const TwoStepDecomposition& dec) {
  const int dz = static_cast<int>(dec.j_maps.size());
  if (dz == 0) return false;
  const Eigen::Index dv = dec.j_maps[0].rows();
  for (int a = 0; a < dz; ++a)
    for (int b = a; b < dz; ++b) {
      Matrix anti = dec.j_maps[a] * dec.j_maps[b] + dec.j_maps[b] * dec.j_maps[a];
      if (a == b) anti += 2.0 * Matrix::Identity(dv, dv);
      if (anti.cwiseAbs().maxCoeff() > tol::alg) return false;
    }
  return true;
}

/// Kernel of the Ricci tensor of a 2-step algebra, computed as {z : j(z) = 0}
/// and cross-validated against the curvature route.
struct RicciKernel {
  Matrix basis;       // columns, algebra coordinates, inside the center
  bool consistent = true;
};

inline RicciKernel ricci_kernel_two_step(const TwoStepDecomposition& dec,
                                         const MetricLieAlgebra& mla) {
  const int dz = static_cast<int>(dec.j_maps.size());
  const Eigen::Index dv = dec.j_maps.empty() ? 0 : dec.j_maps[0].rows();
  Matrix stacked(dv * dv, dz);
  for (int r = 0; r < dz; ++r)
    stacked.col(r) = Eigen::Map<const Vector>(dec.j_maps[r].data(), dv * dv);
  Matrix zeta_kernel = linalg::nullspace(stacked);

  RicciKernel out;
  out.basis = dec.z_basis * zeta_kernel;

  // Independent route: nullspace of the Ricci form.
  const CurvaturePackage curv = curvature(mla);
  Matrix ric_kernel = linalg::nullspace(curv.ricci_form);
  if (ric_kernel.cols() != out.basis.cols()) {
    out.consistent = false;
    return out;
  }
  if (out.basis.cols() > 0) {
    // Same subspace iff the orthogonal projectors agree. The j-route basis is
    // g-orthonormal, the curvature route coordinate-orthonormal; compare
    // projectors of coordinate-orthonormalised bases.
    Matrix b1 = linalg::column_space(out.basis);
    Matrix diff = linalg::projector(b1) - linalg::projector(ric_kernel);
    if (diff.cwiseAbs().maxCoeff() > tol::rank) out.consistent = false;
  }
  return out;
}

/// Rank-one standard metric solvable extension s = R H + n with H a g-unit
/// vector orthogonal to n (appended as the last basis vector) and
/// [H, x] = s * D x. Requires D to be a derivation, otherwise Jacobi fails.
struct SolvableExtension {
  Matrix derivation;
  double scale = 1.0;
  MetricLieAlgebra extended;
};

inline SolvableExtension solvable_extension(const MetricLieAlgebra& base, const Matrix& D,
                                            double s) {
  if (s <= 0) throw precondition_error("solvable extension requires scale s > 0");
  if (!is_nilpotent(base.algebra()))
    throw precondition_error("solvable extension requires a nilpotent base");
  if (derivation_residual(base.algebra(), D) > tol::alg)
    throw precondition_error("extension matrix is not a derivation of the base algebra");
  const int n = base.dim();
  std::vector<BracketEntry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (base.algebra().c(i, j, k) != 0.0)
          entries.push_back({i, j, k, base.algebra().c(i, j, k)});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (D(k, j) != 0.0) entries.push_back({n, j, k, s * D(k, j)});
  LieAlgebra ext = LieAlgebra::from_brackets(n + 1, entries);
  require_jacobi(ext);
  Matrix g_ext = Matrix::Identity(n + 1, n + 1);
  g_ext.topLeftCorner(n, n) = base.metric();
  return SolvableExtension{D, s, MetricLieAlgebra(std::move(ext), std::move(g_ext))};
}

/// Einstein test: Ric = (R/dim) g to within tol::sol().
struct EinsteinReport {
  bool einstein = false;
  double lambda = 0.0;    // R / dim
  double residual = 0.0;  // || ricci_form - (R/dim) g ||_F
};

inline EinsteinReport is_einstein(const MetricLieAlgebra& mla) {
  const CurvaturePackage curv = curvature(mla);
  EinsteinReport out;
  out.lambda = curv.scalar / mla.dim();
  out.residual = (curv.ricci_form - out.lambda * mla.metric()).norm();
  out.einstein = out.residual <= tol::sol();
  return out;
}

/// Scans s in (0, s_max] for an Einstein extension, refining the best bracket
/// by golden-section search. s = 1 is accepted immediately when it already
/// works (flat bases admit a whole family, and 1 is the canonical pick).
struct EinsteinScale {
  double s = 1.0;
  double residual = 0.0;
  bool found = false;
};

inline EinsteinScale find_einstein_scale(const MetricLieAlgebra& base, const Matrix& D,
                                         double s_max = 4.0) {
  auto residual_at = [&](double s) {
    return is_einstein(solvable_extension(base, D, s).extended).residual;
  };
  EinsteinScale out;
  const double r1 = residual_at(1.0);
  if (r1 <= tol::sol()) {
    out.s = 1.0;
    out.residual = r1;
    out.found = true;
    return out;
  }
  const int grid = 400;
  double best_s = 1.0, best_r = r1;
  for (int k = 1; k <= grid; ++k) {
    const double s = s_max * k / grid;
    const double r = residual_at(s);
    if (r < best_r) {
      best_r = r;
      best_s = s;
    }
  }
  double lo = std::max(best_s - s_max / grid, s_max / grid * 1e-6);
  double hi = std::min(best_s + s_max / grid, s_max);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = residual_at(x1), f2 = residual_at(x2);
  for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = residual_at(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = residual_at(x2);
    }
  }
  out.s = f1 < f2 ? x1 : x2;
  out.residual = std::min(f1, f2);
  if (best_r < out.residual) {
    out.s = best_s;
    out.residual = best_r;
  }
  out.found = out.residual <= tol::sol();
  return out;
}

}  // namespace liesoliton
