#pragma once

#include <Eigen/Dense>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace liesoliton {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Input failed a validity gate (bad file, non-SPD metric, Jacobi violation, ...).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation called outside its domain (non-nilpotent algebra, wrong dimension, ...).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal cross-check between two algebraic routes disagreed.
struct internal_inconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double alg = 1e-9;   // residual acceptance for algebraic identities
inline constexpr double rank = 1e-8;  // relative singular-value cutoff for rank decisions
inline constexpr double flow = 1e-4;  // ODE verification tolerance

/// Feasibility-solve residual tolerance. LIESOLITON_TOL overrides it (test-only knob).
inline double sol() {
  if (const char* env = std::getenv("LIESOLITON_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e-7;
}
}  // namespace tol

namespace linalg {

/// Orthonormal basis (columns) of the nullspace of A, with singular values below
/// rank_tol * sigma_max treated as zero. A zero matrix yields the full space.
inline Matrix nullspace(const Matrix& A, double rank_tol = tol::rank) {
  const Eigen::Index n = A.cols();
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax <= rank_tol) return Matrix::Identity(n, n);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rank_tol * smax) ++r;
  return svd.matrixV().rightCols(n - r);
}

inline Eigen::Index rank(const Matrix& A, double rank_tol = tol::rank) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax <= rank_tol) return 0;
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rank_tol * smax) ++r;
  return r;
}

/// Orthonormal basis of the column space of A.
inline Matrix column_space(const Matrix& A, double rank_tol = tol::rank) {
  if (A.cols() == 0) return Matrix(A.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax <= rank_tol) return Matrix(A.rows(), 0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rank_tol * smax) ++r;
  return svd.matrixU().leftCols(r);
}

inline bool is_symmetric(const Matrix& A, double eps = tol::alg) {
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= eps;
}

inline void require_spd(const Matrix& g, const std::string& what) {
  if (g.rows() != g.cols()) throw validation_error(what + ": matrix is not square");
  if (!is_symmetric(g)) throw validation_error(what + ": matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0)
    throw validation_error(what + ": matrix is not positive definite");
}

/// Spectral square root and inverse square root of an SPD matrix.
inline std::pair<Matrix, Matrix> spd_sqrt_and_inverse_sqrt(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  Vector lam = es.eigenvalues();
  const Matrix& Q = es.eigenvectors();
  Vector rt = lam.cwiseSqrt();
  Matrix sqrt_g = Q * rt.asDiagonal() * Q.transpose();
  Matrix inv_sqrt_g = Q * rt.cwiseInverse().asDiagonal() * Q.transpose();
  return {sqrt_g, inv_sqrt_g};
}

/// Gram-Schmidt columns of C against the inner product <u,v> = u^T g v.
/// Columns that fall below rank_tol of their original g-norm are dropped.
inline Matrix metric_orthonormalize(const Matrix& C, const Matrix& g,
                                    double rank_tol = tol::rank) {
  Matrix out(C.rows(), C.cols());
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < C.cols(); ++j) {
    Vector v = C.col(j);
    const double n0 = std::sqrt(std::max(0.0, double(v.transpose() * g * v)));
    for (Eigen::Index k = 0; k < kept; ++k)
      v -= double(out.col(k).transpose() * g * v) * out.col(k);
    const double n1 = std::sqrt(std::max(0.0, double(v.transpose() * g * v)));
    if (n1 <= rank_tol * std::max(1.0, n0)) continue;
    out.col(kept++) = v / n1;
  }
  return out.leftCols(kept);
}

/// Orthogonal projector onto the span of the (orthonormal) columns of B.
inline Matrix projector(const Matrix& B) { return B * B.transpose(); }

/// Minimal-norm least-squares solution of A x = b and its residual norm.
inline std::pair<Vector, double> least_squares(const Matrix& A, const Vector& b,
                                               double rank_tol = tol::rank) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rank_tol);
  Vector x = svd.solve(b);
  double residual = (A * x - b).norm();
  return {x, residual};
}

}  // namespace linalg
}  // namespace liesoliton
