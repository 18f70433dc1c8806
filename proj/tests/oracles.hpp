// Independent test oracles. Everything here recomputes quantities the library
// also computes, by a deliberately different route: closed-form 3D Ricci
// curvatures, hand-rolled RREF nullspaces, and projection-based least squares.
// None of it calls into the production solve paths it is used to check.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "liesoliton/liesoliton.hpp"

namespace oracles {

using liesoliton::LieAlgebra;
using liesoliton::Matrix;
using liesoliton::MetricLieAlgebra;
using liesoliton::Vector;

/// Principal Ricci curvatures of a 3D unimodular metric Lie algebra given in
/// the diagonal frame [e2,e3] = l1 e1, [e3,e1] = l2 e2, [e1,e2] = l3 e3 with
/// an orthonormal basis: r_i = 2 mu_j mu_k where mu_i = (l1+l2+l3)/2 - l_i.
inline Eigen::Vector3d milnor_unimodular_ricci(double l1, double l2, double l3) {
  const double half_sum = 0.5 * (l1 + l2 + l3);
  const double m1 = half_sum - l1, m2 = half_sum - l2, m3 = half_sum - l3;
  return {2.0 * m2 * m3, 2.0 * m1 * m3, 2.0 * m1 * m2};
}

/// Diagonal Ricci form of the 3D nonunimodular family in Milnor-frame form
/// ([e1,e2] = a e2 + b e3, [e1,e3] = c e2 + d e3, orthonormal basis,
/// constraints a+d != 0 and ac+bd = 0).
inline Eigen::Vector3d milnor_nonunimodular_ricci(double a, double b, double c, double d) {
  return {-a * a - d * d - 0.5 * (b + c) * (b + c),
          -a * (a + d) + 0.5 * (c * c - b * b),
          -d * (a + d) + 0.5 * (b * b - c * c)};
}

/// Reduced row echelon form with partial pivoting. Returns pivot columns.
inline std::vector<int> rref(Matrix& A, double eps = 1e-10) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < A.cols() && row < A.rows(); ++col) {
    int best = row;
    for (int r = row + 1; r < A.rows(); ++r)
      if (std::abs(A(r, col)) > std::abs(A(best, col))) best = r;
    if (std::abs(A(best, col)) <= eps) continue;
    A.row(best).swap(A.row(row));
    A.row(row) /= A(row, col);
    for (int r = 0; r < A.rows(); ++r)
      if (r != row && std::abs(A(r, col)) > 0) A.row(r) -= A(r, col) * A.row(row);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Nullspace basis via RREF free variables (not orthonormal, but independent).
inline std::vector<Vector> rref_nullspace(Matrix A, double eps = 1e-10) {
  const int n = static_cast<int>(A.cols());
  std::vector<int> pivots = rref(A, eps);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v = Vector::Zero(n);
    v(free) = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = -A(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Derivation constraint rows assembled from scratch over ALL ordered pairs
/// (redundant on purpose; the production path uses i < j only).
inline Matrix derivation_constraints(const LieAlgebra& alg) {
  const int n = alg.dim();
  Matrix L = Matrix::Zero(n * n * n, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row)
        for (int m = 0; m < n; ++m) {
          L(row, k * n + m) += alg.c(i, j, m);
          L(row, m * n + i) -= alg.c(m, j, k);
          L(row, m * n + j) -= alg.c(i, m, k);
        }
  return L;
}

/// Brute-force nilsoliton residual: min over (c, D in Der) of
/// ||ricci_endo - c I - D||_F, computed by projecting onto the RREF-derived
/// derivation span and minimising the explicit quadratic in c. A coarse grid
/// scan over c cross-checks the closed-form minimiser.
inline double nilsoliton_residual_oracle(const MetricLieAlgebra& mla) {
  const int n = mla.dim();
  const Matrix ric = liesoliton::curvature(mla).ricci_endo;
  std::vector<Vector> der = rref_nullspace(derivation_constraints(mla.algebra()));

  // The constraint solver indexes D(k, m) at k*n + m; flatten everything into
  // that same layout explicitly.
  Matrix B(n * n, static_cast<Eigen::Index>(der.size()));
  for (std::size_t m = 0; m < der.size(); ++m) B.col(static_cast<Eigen::Index>(m)) = der[m];
  Vector b(n * n), u(n * n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      b(k * n + m) = ric(k, m);
      u(k * n + m) = (k == m) ? 1.0 : 0.0;
    }

  // Orthogonal projector onto span(B) through the Gram matrix.
  auto project_out = [&](const Vector& v) -> Vector {
    if (B.cols() == 0) return v;
    Eigen::LDLT<Matrix> gram(Matrix(B.transpose() * B));
    return v - B * gram.solve(B.transpose() * v);
  };
  const Vector pb = project_out(b);
  const Vector pu = project_out(u);
  double c_star = 0.0;
  if (pu.squaredNorm() > 1e-14) c_star = pu.dot(pb) / pu.squaredNorm();
  const double best = (pb - c_star * pu).norm();

  // Grid scan: the parabola residual^2(c) must not undercut the minimiser.
  double grid_best = std::numeric_limits<double>::infinity();
  for (int k = -2000; k <= 2000; ++k) {
    const double c = 0.005 * k;
    grid_best = std::min(grid_best, (pb - c * pu).norm());
  }
  return std::min(best, grid_best);
}

/// Deterministic random SPD matrix with eigenvalues bounded away from zero.
inline Matrix random_spd(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
  return Matrix(A.transpose() * A + 0.5 * Matrix::Identity(n, n));
}

inline Vector random_vector(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

/// Structure constants conjugated by a basis permutation.
inline LieAlgebra permuted(const LieAlgebra& alg, const std::vector<int>& perm) {
  const int n = alg.dim();
  std::vector<liesoliton::BracketEntry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (alg.c(i, j, k) != 0.0) entries.push_back({perm[i], perm[j], perm[k], alg.c(i, j, k)});
  return LieAlgebra::from_brackets(n, entries);
}

/// Structure constants in the basis f_a = T e_a (columns of T).
inline LieAlgebra change_of_basis(const LieAlgebra& alg, const Matrix& T) {
  const int n = alg.dim();
  const Matrix T_inv = T.inverse();
  std::vector<std::vector<std::vector<double>>> c(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vector img = T_inv * alg.bracket(Vector(T.col(a)), Vector(T.col(b)));
      for (int k = 0; k < n; ++k) {
        c[a][b][k] = img(k);
        c[b][a][k] = -img(k);
      }
    }
  return LieAlgebra::from_structure(n, c);
}

/// Deterministic well-conditioned basis change.
inline Matrix random_basis_change(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 0.35);
  Matrix T = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T(i, j) += gauss(rng);
  if (std::abs(T.determinant()) < 0.2) return random_basis_change(n, rng);
  return T;
}

}  // namespace oracles
