#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "liesoliton/catalog.hpp"
#include "liesoliton/metric_geometry.hpp"
#include "oracles.hpp"

using namespace liesoliton;

namespace {

Vector sorted_ricci_eigenvalues(const MetricLieAlgebra& mla) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(curvature(mla).ricci_frame, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

void check_connection_invariants(const MetricLieAlgebra& mla) {
  const auto gamma = levi_civita(mla);
  const Matrix& g = mla.metric();
  const LieAlgebra& alg = mla.algebra();
  const int n = mla.dim();
  for (int i = 0; i < n; ++i) {
    // metric compatibility: <nabla_i e_j, e_k> + <e_j, nabla_i e_k> = 0
    Matrix compat = g * gamma[i] + (g * gamma[i]).transpose();
    CHECK(compat.cwiseAbs().maxCoeff() <= 1e2 * tol::alg);
    // torsion freeness: nabla_i e_j - nabla_j e_i = [e_i, e_j]
    for (int j = 0; j < n; ++j) {
      Vector torsion = gamma[i].col(j) - gamma[j].col(i) - alg.ad(i).col(j);
      CHECK(torsion.cwiseAbs().maxCoeff() <= 1e2 * tol::alg);
    }
  }
}

}  // namespace

TEST_CASE("metric validation") {
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(MetricLieAlgebra(catalog::heis3().algebra(), bad), validation_error);
  Matrix asym = Matrix::Identity(3, 3);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(MetricLieAlgebra(catalog::heis3().algebra(), asym), validation_error);
}

TEST_CASE("levi_civita pins the hand-computed coefficients") {
  SECTION("abelian: everything vanishes") {
    const auto gamma = levi_civita(catalog::abelian(4));
    for (const auto& m : gamma) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("heis3") {
    const auto gamma = levi_civita(catalog::heis3());
    CHECK(gamma[0](2, 1) == Catch::Approx(0.5).margin(tol::alg));    // nabla_1 e_2 = e_3/2
    CHECK(gamma[0](1, 2) == Catch::Approx(-0.5).margin(tol::alg));   // nabla_1 e_3 = -e_2/2
    CHECK(gamma[2](1, 0) == Catch::Approx(-0.5).margin(tol::alg));   // nabla_3 e_1 = -e_2/2
    CHECK(gamma[0](0, 0) == Catch::Approx(0.0).margin(tol::alg));
  }
  SECTION("sol3") {
    const auto gamma = levi_civita(catalog::sol3());
    CHECK(gamma[0](2, 0) == Catch::Approx(1.0).margin(tol::alg));    // nabla_1 e_1 = e_3
    CHECK(gamma[1](2, 1) == Catch::Approx(-1.0).margin(tol::alg));   // nabla_2 e_2 = -e_3
    CHECK(gamma[2].cwiseAbs().maxCoeff() <= tol::alg);               // nabla_3 . = 0
  }
}

TEST_CASE("connection invariants hold on the catalog and on random metrics") {
  for (const auto& entry : catalog::entries()) check_connection_invariants(entry.build());
  std::mt19937 rng(77001);
  for (const char* name : {"heis3", "nil4", "sol3"}) {
    const LieAlgebra alg = catalog::build(name).algebra();
    for (int trial = 0; trial < 3; ++trial)
      check_connection_invariants(MetricLieAlgebra(alg, oracles::random_spd(alg.dim(), rng)));
  }
}

TEST_CASE("heis3 curvature: hand values and the Milnor-frame oracle") {
  const auto curv = curvature(catalog::heis3());
  CHECK(curv.ricci_endo(0, 0) == Catch::Approx(-0.5).margin(tol::alg));
  CHECK(curv.ricci_endo(1, 1) == Catch::Approx(-0.5).margin(tol::alg));
  CHECK(curv.ricci_endo(2, 2) == Catch::Approx(0.5).margin(tol::alg));
  Matrix expected = Vector(Eigen::Vector3d(-0.5, -0.5, 0.5)).asDiagonal();
  CHECK((curv.ricci_endo - expected).cwiseAbs().maxCoeff() <= tol::alg);
  CHECK(curv.scalar == Catch::Approx(-0.5).margin(tol::alg));
  CHECK(curv.ricci_norm_sq == Catch::Approx(0.75).margin(tol::alg));

  // Independent oracle: heis3 is the unimodular frame (l1,l2,l3) = (0,0,1).
  const Eigen::Vector3d oracle = oracles::milnor_unimodular_ricci(0, 0, 1);
  for (int i = 0; i < 3; ++i)
    CHECK(curv.ricci_endo(i, i) == Catch::Approx(oracle(i)).margin(tol::alg));
}

TEST_CASE("sol3 and e2 curvature against hand values and the oracle") {
  const auto sol = curvature(catalog::sol3());
  Vector ev = sorted_ricci_eigenvalues(catalog::sol3());
  CHECK(ev(0) == Catch::Approx(-2.0).margin(tol::alg));
  CHECK(ev(1) == Catch::Approx(0.0).margin(tol::alg));
  CHECK(ev(2) == Catch::Approx(0.0).margin(tol::alg));
  CHECK(sol.scalar == Catch::Approx(-2.0).margin(tol::alg));
  // In the rotated orthonormal frame sol3 is unimodular-diagonal with
  // (l1,l2,l3) = (-1,1,0); the spectrum must match the oracle.
  Eigen::Vector3d oracle = oracles::milnor_unimodular_ricci(-1, 1, 0);
  std::sort(oracle.data(), oracle.data() + 3);
  for (int i = 0; i < 3; ++i) CHECK(ev(i) == Catch::Approx(oracle(i)).margin(tol::alg));

  const auto flat = curvature(catalog::e2());
  CHECK(flat.riemann_max_abs <= tol::alg);
  CHECK(flat.scalar == Catch::Approx(0.0).margin(tol::alg));
}

TEST_CASE("sl2r curvature spectrum against the oracle") {
  Vector ev = sorted_ricci_eigenvalues(catalog::sl2r());
  // Rotated frame (e', f', h) is unimodular-diagonal with (l1,l2,l3) = (-2,2,-1).
  Eigen::Vector3d oracle = oracles::milnor_unimodular_ricci(-2, 2, -1);
  std::sort(oracle.data(), oracle.data() + 3);
  for (int i = 0; i < 3; ++i) CHECK(ev(i) == Catch::Approx(oracle(i)).margin(tol::alg));
  CHECK(curvature(catalog::sl2r()).scalar == Catch::Approx(-8.5).margin(tol::alg));
}

TEST_CASE("nonunimodular Milnor family Ricci matches the closed form") {
  for (auto [a, b, c, d] : {std::array<double, 4>{1, 0, 0, 1}, std::array<double, 4>{1, 0, 0, 2},
                            std::array<double, 4>{2, 2, 1, -1}}) {
    const auto curv = curvature(catalog::milnor(a, b, c, d));
    const Eigen::Vector3d oracle = oracles::milnor_nonunimodular_ricci(a, b, c, d);
    for (int i = 0; i < 3; ++i)
      CHECK(curv.ricci_form(i, i) == Catch::Approx(oracle(i)).margin(1e2 * tol::alg));
    CHECK(curv.ricci_form(0, 1) == Catch::Approx(0.0).margin(1e2 * tol::alg));
    CHECK(curv.ricci_form(0, 2) == Catch::Approx(0.0).margin(1e2 * tol::alg));
    CHECK(curv.ricci_form(1, 2) == Catch::Approx(0.0).margin(1e2 * tol::alg));
  }
}

TEST_CASE("curvature package internal identities") {
  std::mt19937 rng(424242);
  for (const auto& entry : catalog::entries()) {
    const MetricLieAlgebra mla = entry.build();
    const auto curv = curvature(mla);
    CHECK(linalg::is_symmetric(curv.ricci_form, 1e2 * tol::alg));
    // ricci_endo is g-self-adjoint: g * endo symmetric.
    CHECK(linalg::is_symmetric(Matrix(mla.metric() * curv.ricci_endo), 1e2 * tol::alg));
    CHECK(curv.scalar == Catch::Approx(curv.ricci_endo.trace()).margin(tol::alg));
  }
  // Same identities under a random non-diagonal metric.
  const LieAlgebra heis = catalog::heis3().algebra();
  for (int trial = 0; trial < 3; ++trial) {
    const MetricLieAlgebra mla(heis, oracles::random_spd(3, rng));
    const auto curv = curvature(mla);
    CHECK(linalg::is_symmetric(curv.ricci_form, 1e2 * tol::alg));
    CHECK(curv.scalar == Catch::Approx(curv.ricci_endo.trace()).margin(1e2 * tol::alg));
  }
}

TEST_CASE("scaling covariance: Ric(c g) = Ric(g), R(c g) = R(g)/c") {
  for (double c : {2.0, 5.0}) {
    for (const char* name : {"heis3", "sol3", "sl2r", "nil4"}) {
      const MetricLieAlgebra mla = catalog::build(name);
      const auto base = curvature(mla);
      const auto scaled = curvature(mla.scaled(c));
      CHECK((scaled.ricci_form - base.ricci_form).cwiseAbs().maxCoeff() <= 1e2 * tol::alg);
      CHECK(scaled.scalar == Catch::Approx(base.scalar / c).margin(1e2 * tol::alg));
    }
  }
}

TEST_CASE("divergence of left-invariant fields") {
  SECTION("unimodular algebras are divergence free") {
    for (const char* name : {"heis3", "heis5", "nil4", "sol3", "sl2r", "e2", "abelian3"}) {
      const MetricLieAlgebra mla = catalog::build(name);
      for (int i = 0; i < mla.dim(); ++i)
        CHECK(std::abs(divergence_left_invariant(mla, Vector(Vector::Unit(mla.dim(), i)))) <=
              tol::alg);
    }
  }
  SECTION("Milnor frame divergences: div e1 = -(a+d), div e2 = div e3 = 0") {
    const MetricLieAlgebra mla = catalog::milnor(1, 0, 0, 1);
    CHECK(divergence_left_invariant(mla, Vector(Vector::Unit(3, 0))) ==
          Catch::Approx(-2.0).margin(tol::alg));
    CHECK(divergence_left_invariant(mla, Vector(Vector::Unit(3, 1))) ==
          Catch::Approx(0.0).margin(tol::alg));
    CHECK(divergence_left_invariant(mla, Vector(Vector::Unit(3, 2))) ==
          Catch::Approx(0.0).margin(tol::alg));
  }
}

TEST_CASE("lie derivative of the metric") {
  SECTION("abelian: vanishes for every field") {
    const MetricLieAlgebra mla = catalog::abelian(3);
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 4; ++trial) {
      const Vector x = oracles::random_vector(3, rng);
      CHECK(lie_derivative_metric(mla, x).cwiseAbs().maxCoeff() <= tol::alg);
    }
  }
  SECTION("Milnor family, X = a e1: the known diagonal block") {
    const double a = 1.5, alpha = 1, beta = 0.25, gam = -0.5, delta = 2;
    const MetricLieAlgebra mla = catalog::milnor(alpha, beta, gam, delta);
    const Matrix L = lie_derivative_metric(mla, Vector(a * Vector::Unit(3, 0)));
    CHECK(L(0, 0) == Catch::Approx(0.0).margin(tol::alg));
    CHECK(L(1, 1) == Catch::Approx(-2 * a * alpha).margin(tol::alg));
    CHECK(L(2, 2) == Catch::Approx(-2 * a * delta).margin(tol::alg));
    CHECK(L(1, 2) == Catch::Approx(-a * (gam + beta)).margin(tol::alg));
    CHECK(L(0, 1) == Catch::Approx(0.0).margin(tol::alg));
    CHECK(L(0, 2) == Catch::Approx(0.0).margin(tol::alg));
    // trace identity: trace_g(L_X g) = 2 div X
    const double tr = (mla.metric().inverse() * L).trace();
    CHECK(tr == Catch::Approx(-2 * a * (alpha + delta)).margin(1e2 * tol::alg));
    CHECK(tr == Catch::Approx(2 * divergence_left_invariant(mla, Vector(a * Vector::Unit(3, 0))))
                    .margin(1e2 * tol::alg));
  }
  SECTION("linearity in X") {
    std::mt19937 rng(9090);
    for (const char* name : {"heis3", "sol3", "milnor(1,0,0,2)"}) {
      const MetricLieAlgebra mla = catalog::build(name);
      const Vector x = oracles::random_vector(3, rng), y = oracles::random_vector(3, rng);
      const Matrix lhs = lie_derivative_metric(mla, Vector(2.0 * x - 3.0 * y));
      const Matrix rhs =
          2.0 * lie_derivative_metric(mla, x) - 3.0 * lie_derivative_metric(mla, y);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e2 * tol::alg);
    }
  }
  SECTION("trace identity holds with random metrics and fields") {
    std::mt19937 rng(31337);
    for (const char* name : {"heis3", "sol3", "milnor(1,0,0,1)"}) {
      const LieAlgebra alg = catalog::build(name).algebra();
      const MetricLieAlgebra mla(alg, oracles::random_spd(3, rng));
      const Vector x = oracles::random_vector(3, rng);
      const double tr = (mla.metric().inverse() * lie_derivative_metric(mla, x)).trace();
      CHECK(tr ==
            Catch::Approx(2 * divergence_left_invariant(mla, x)).margin(1e3 * tol::alg));
    }
  }
}

TEST_CASE("euclidean factor (left-invariant parallel fields)") {
  CHECK(euclidean_factor(catalog::abelian(5)).cols() == 5);
  CHECK(euclidean_factor(catalog::heis3()).cols() == 0);
  CHECK(euclidean_factor(catalog::heis3xr()).cols() == 1);
  const Matrix basis = euclidean_factor(catalog::heis3xr());
  CHECK(std::abs(std::abs(basis(3, 0)) - 1.0) <= tol::alg);  // the flat line is e4
  CHECK(euclidean_factor(catalog::sol3()).cols() == 0);
}

TEST_CASE("basis-change equivariance: the geometry of an isometric presentation") {
  // (alg, g) and (alg in basis T, T^T g T) present the same metric group, so
  // Ric'_form = T^T Ric_form T, the scalar curvature, |Ric|^2, flat-factor
  // dimension and left-invariant divergences all coincide.
  std::mt19937 rng(271828);
  for (const char* name : {"heis3", "nil4", "sol3", "sl2r", "milnor(1,0,0,2)"}) {
    const MetricLieAlgebra mla = catalog::build(name);
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix T = oracles::random_basis_change(mla.dim(), rng);
      const LieAlgebra alg2 = oracles::change_of_basis(mla.algebra(), T);
      REQUIRE(check_jacobi(alg2).max_residual <= 1e2 * tol::alg);
      const MetricLieAlgebra mla2(alg2, Matrix(T.transpose() * mla.metric() * T));

      const auto curv = curvature(mla);
      const auto curv2 = curvature(mla2);
      const Matrix pulled_back = T.transpose() * curv.ricci_form * T;
      const double scale = std::max(1.0, pulled_back.cwiseAbs().maxCoeff());
      CHECK((curv2.ricci_form - pulled_back).cwiseAbs().maxCoeff() <= 1e3 * tol::alg * scale);
      CHECK(curv2.scalar == Catch::Approx(curv.scalar).margin(1e3 * tol::alg));
      CHECK(curv2.ricci_norm_sq == Catch::Approx(curv.ricci_norm_sq).margin(1e3 * tol::alg));
      CHECK(euclidean_factor(mla2).cols() == euclidean_factor(mla).cols());

      const Vector x = oracles::random_vector(mla.dim(), rng);
      CHECK(divergence_left_invariant(mla2, Vector(T.inverse() * x)) ==
            Catch::Approx(divergence_left_invariant(mla, x)).margin(1e3 * tol::alg));
    }
  }
}

TEST_CASE("solvable catalog entries: flat or strictly negative scalar curvature") {
  for (const auto& entry : catalog::entries()) {
    const MetricLieAlgebra mla = entry.build();
    if (!is_solvable(mla.algebra())) continue;
    const auto curv = curvature(mla);
    const bool flat = curv.riemann_max_abs <= tol::alg;
    CHECK((flat || curv.scalar < -tol::alg));
  }
}
