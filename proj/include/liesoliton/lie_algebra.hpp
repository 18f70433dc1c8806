#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liesoliton/linalg.hpp"

namespace liesoliton {

/// One structure-constant assignment c[i][j][k] = value (0-based indices),
/// meaning the e_k coefficient of [e_i, e_j]. Antisymmetric completion implied.
struct BracketEntry {
  int i, j, k;
  double value;
};

/// A real Lie algebra presented by structure constants in a fixed basis:
/// [e_i, e_j] = sum_k c[i][j][k] e_k. Immutable after construction.
///
/// Antisymmetry c[i][j][k] = -c[j][i][k] is enforced at construction; the
/// Jacobi identity is a separate gate (check_jacobi) so that invalid inputs
/// can be reported with the offending triple instead of rejected blindly.
class LieAlgebra {
 public:
  /// Build from bracket entries; entries with i == j or out-of-range indices throw.
  static LieAlgebra from_brackets(int dim, const std::vector<BracketEntry>& entries) {
    if (dim <= 0) throw validation_error("lie algebra dimension must be positive");
    std::vector<Matrix> ad(dim, Matrix::Zero(dim, dim));
    for (const auto& e : entries) {
      if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
        throw validation_error("bracket index out of range: c[" + std::to_string(e.i + 1) +
                               "][" + std::to_string(e.j + 1) + "][" + std::to_string(e.k + 1) +
                               "] with dim " + std::to_string(dim));
      if (e.i == e.j)
        throw validation_error("bracket entry [e_i, e_i] must vanish: c[" +
                               std::to_string(e.i + 1) + "][" + std::to_string(e.j + 1) + "][" +
                               std::to_string(e.k + 1) + "]");
      ad[e.i](e.k, e.j) += e.value;
      ad[e.j](e.k, e.i) -= e.value;
    }
    return LieAlgebra(std::move(ad));
  }

  /// Build from a dense tensor c(i, j, k); antisymmetry violations are rejected
  /// with the offending entry.
  static LieAlgebra from_structure(int dim,
                                   const std::vector<std::vector<std::vector<double>>>& c) {
    if (dim <= 0) throw validation_error("lie algebra dimension must be positive");
    std::vector<Matrix> ad(dim, Matrix::Zero(dim, dim));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          const double v = c.at(i).at(j).at(k);
          if (std::abs(v + c.at(j).at(i).at(k)) > tol::alg)
            throw validation_error("antisymmetry violated at c[" + std::to_string(i + 1) + "][" +
                                   std::to_string(j + 1) + "][" + std::to_string(k + 1) + "]");
          ad[i](k, j) = v;
        }
    return LieAlgebra(std::move(ad));
  }

  int dim() const { return static_cast<int>(ad_.size()); }

  /// Structure constant c[i][j][k].
  double c(int i, int j, int k) const { return ad_[i](k, j); }

  /// Matrix of ad(e_i): column j holds the coordinates of [e_i, e_j].
  const Matrix& ad(int i) const { return ad_[i]; }

  /// Matrix of ad(x) for x given by coordinates.
  Matrix ad(const Vector& x) const {
    Matrix m = Matrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) m += x(i) * ad_[i];
    return m;
  }

  /// Coordinates of [x, y].
  Vector bracket(const Vector& x, const Vector& y) const { return ad(x) * y; }

 private:
  explicit LieAlgebra(std::vector<Matrix> ad) : ad_(std::move(ad)) {}
  std::vector<Matrix> ad_;
};

struct JacobiReport {
  double max_residual = 0.0;
  std::array<int, 3> worst_triple{0, 0, 0};  // 0-based basis indices
};

/// Max over basis triples of || [[x,y],z] + [[y,z],x] + [[z,x],y] ||.
/// The input is a valid Lie algebra iff this is <= tol::alg.
inline JacobiReport check_jacobi(const LieAlgebra& alg) {
  const int n = alg.dim();
  JacobiReport rep;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j), ek = Vector::Unit(n, k);
        Vector r = alg.bracket(alg.bracket(ei, ej), ek) + alg.bracket(alg.bracket(ej, ek), ei) +
                   alg.bracket(alg.bracket(ek, ei), ej);
        const double nr = r.norm();
        if (nr > rep.max_residual) {
          rep.max_residual = nr;
          rep.worst_triple = {i, j, k};
        }
      }
  return rep;
}

/// Throws validation_error when the Jacobi residual exceeds tol::alg.
inline void require_jacobi(const LieAlgebra& alg) {
  const auto rep = check_jacobi(alg);
  if (rep.max_residual > tol::alg)
    throw validation_error(
        "Jacobi identity violated: residual " + std::to_string(rep.max_residual) +
        " on basis triple (e" + std::to_string(rep.worst_triple[0] + 1) + ", e" +
        std::to_string(rep.worst_triple[1] + 1) + ", e" + std::to_string(rep.worst_triple[2] + 1) +
        ")");
}

/// trace(ad x) = 0 for every basis vector.
inline bool is_unimodular(const LieAlgebra& alg) {
  for (int i = 0; i < alg.dim(); ++i)
    if (std::abs(alg.ad(i).trace()) > tol::alg) return false;
  return true;
}

struct LowerCentralSeries {
  std::vector<int> dims;        // dim g, dim [g,g], dim [g,[g,g]], ...
  bool nilpotent = false;
  int nilpotency_class = 0;     // meaningful only when nilpotent
};

namespace detail {
/// Orthonormal basis of [g, span(W columns)].
inline Matrix bracket_subspace(const LieAlgebra& alg, const Matrix& W) {
  const int n = alg.dim();
  Matrix gens(n, n * W.cols());
  for (int i = 0; i < n; ++i)
    for (Eigen::Index w = 0; w < W.cols(); ++w) gens.col(i * W.cols() + w) = alg.ad(i) * W.col(w);
  return linalg::column_space(gens);
}
}  // namespace detail

/// Dimensions of the descending series g >= [g,g] >= [g,[g,g]] >= ... .
/// The class is the first index at which the dimension reaches zero; a series
/// that stabilises at a nonzero dimension is reported as not nilpotent.
inline LowerCentralSeries lower_central_series(const LieAlgebra& alg) {
  LowerCentralSeries out;
  Matrix term = Matrix::Identity(alg.dim(), alg.dim());
  out.dims.push_back(alg.dim());
  while (true) {
    Matrix next = detail::bracket_subspace(alg, term);
    const int d = static_cast<int>(next.cols());
    if (d == out.dims.back()) {
      out.nilpotent = false;  // stabilised above zero
      return out;
    }
    out.dims.push_back(d);
    if (d == 0) {
      out.nilpotent = true;
      out.nilpotency_class = static_cast<int>(out.dims.size()) - 1;
      return out;
    }
    term = next;
  }
}

inline bool is_nilpotent(const LieAlgebra& alg) { return lower_central_series(alg).nilpotent; }

/// Solvability via the derived series g >= [g,g] >= [[g,g],[g,g]] >= ... .
inline bool is_solvable(const LieAlgebra& alg) {
  Matrix term = Matrix::Identity(alg.dim(), alg.dim());
  int d = alg.dim();
  while (d > 0) {
    const int n = alg.dim();
    Matrix gens(n, term.cols() * term.cols());
    for (Eigen::Index a = 0; a < term.cols(); ++a)
      for (Eigen::Index b = 0; b < term.cols(); ++b)
        gens.col(a * term.cols() + b) = alg.bracket(term.col(a), term.col(b));
    Matrix next = linalg::column_space(gens);
    if (next.cols() == d) return false;
    d = static_cast<int>(next.cols());
    term = next;
  }
  return true;
}

/// Orthonormal basis (standard coordinate inner product) of the center:
/// the common nullspace of all ad(e_i).
inline Matrix center(const LieAlgebra& alg) {
  const int n = alg.dim();
  Matrix stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.middleRows(i * n, n) = alg.ad(i);
  return linalg::nullspace(stacked);
}

/// Basis of the derivation algebra Der(g).
struct DerivationSpace {
  std::vector<Matrix> basis;
  int dimension = 0;
};

namespace detail {
/// Rows of the linear operator whose kernel is Der(g):
/// D [e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0 for i < j, all components k.
/// Unknown is vec(D) with D(k, m) at index k*n + m.
inline Matrix derivation_operator(const LieAlgebra& alg) {
  const int n = alg.dim();
  const int pairs = n * (n - 1) / 2;
  Matrix L = Matrix::Zero(pairs * n, n * n);
  int row0 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, row0 += n)
      for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          L(row0 + k, k * n + m) += alg.c(i, j, m);       // D [e_i,e_j]
          L(row0 + k, m * n + i) -= alg.c(m, j, k);       // [D e_i, e_j]
          L(row0 + k, m * n + j) -= alg.c(i, m, k);       // [e_i, D e_j]
        }
      }
  return L;
}
}  // namespace detail

inline DerivationSpace derivation_algebra(const LieAlgebra& alg) {
  const int n = alg.dim();
  Matrix null = linalg::nullspace(detail::derivation_operator(alg));
  DerivationSpace out;
  out.dimension = static_cast<int>(null.cols());
  out.basis.reserve(out.dimension);
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix D(n, n);
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) D(k, m) = null(k * n + m, c);
    out.basis.push_back(std::move(D));
  }
  return out;
}

/// Residual of the derivation identity for a single candidate matrix.
inline double derivation_residual(const LieAlgebra& alg, const Matrix& D) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector bij = alg.ad(i).col(j);
      Vector r = D * bij - alg.bracket(D.col(i), Vector::Unit(n, j)) -
                 alg.bracket(Vector::Unit(n, i), D.col(j));
      worst = std::max(worst, r.norm());
    }
  return worst;
}

}  // namespace liesoliton
