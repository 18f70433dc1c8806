#include <catch2/catch_amalgamated.hpp>

#include "liesoliton/catalog.hpp"
#include "liesoliton/flow.hpp"
#include "liesoliton/soliton.hpp"
#include "liesoliton/two_step.hpp"

using namespace liesoliton;

TEST_CASE("abelian flow is constant") {
  const auto traj = integrate_flow(catalog::abelian(3), 1.0, 1e-2);
  REQUIRE_FALSE(traj.broke_down);
  for (const auto& g : traj.metrics)
    CHECK((g - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  for (double r : traj.scalars) CHECK(std::abs(r) <= 1e-12);
  const auto ev = verify_soliton_evolution(traj, 0.0);
  CHECK(ev.degenerate);
  CHECK(ev.max_deviation <= 1e-12);
  const auto heat = verify_heat_law(traj);  // both sides identically zero
  CHECK(heat.max_residual <= 1e-12);
  CHECK(heat.scalar_nondecreasing);
  CHECK(verify_self_similarity(traj, catalog::abelian(3).algebra()) == 0.0);
}

TEST_CASE("heis3 flow follows the soliton closed form") {
  const auto traj = integrate_flow(catalog::heis3(), 1.0, 1e-3);
  REQUIRE_FALSE(traj.broke_down);
  REQUIRE(traj.size() == 1001);

  // R(t) = R0 / (1 + 3t): R(1) = -1/8.
  CHECK(traj.scalars.back() == Catch::Approx(-0.125).margin(1e-9));

  // forward difference at t = 0 approximates dR/dt = 2|Ric|^2 = 3/2
  const double fd = (traj.scalars[1] - traj.scalars[0]) / 1e-3;
  CHECK(fd == Catch::Approx(1.5).margin(1e-2));
  CHECK(traj.ricci_norms.front() == Catch::Approx(0.75).margin(1e-9));

  const auto ev = verify_soliton_evolution(traj, 1.5);
  CHECK_FALSE(ev.degenerate);
  CHECK(ev.max_deviation <= 1e-4);

  const auto heat = verify_heat_law(traj);
  CHECK(heat.max_residual <= 1e-4);
  CHECK(heat.scalar_nondecreasing);
  CHECK(traj.scalars.front() < traj.scalars.back());

  CHECK(verify_self_similarity(traj, catalog::heis3().algebra()) <= 1e-4);
}

TEST_CASE("volume evolution: dV/dt = -R V and d(det g)/dt = -2 R det g") {
  const auto traj = integrate_flow(catalog::heis3(), 0.5, 1e-3);
  for (std::size_t k = 1; k + 1 < traj.size(); k += 50) {
    const double h = traj.times[1] - traj.times[0];
    const double dv = (traj.volumes[k + 1] - traj.volumes[k - 1]) / (2 * h);
    CHECK(dv == Catch::Approx(-traj.scalars[k] * traj.volumes[k]).margin(10 * tol::flow));
    const double det0 = traj.volumes[k - 1] * traj.volumes[k - 1];
    const double det2 = traj.volumes[k + 1] * traj.volumes[k + 1];
    const double ddet = (det2 - det0) / (2 * h);
    const double det1 = traj.volumes[k] * traj.volumes[k];
    CHECK(ddet == Catch::Approx(-2.0 * traj.scalars[k] * det1).margin(10 * tol::flow));
  }
}

TEST_CASE("wrong lambda is rejected by the evolution check") {
  const auto traj = integrate_flow(catalog::sol3(), 0.5, 1e-3);
  const auto wrong = verify_soliton_evolution(traj, 1.0);
  CHECK(wrong.max_deviation > 0.05);  // O(1) failure
  // sol3 is itself a soliton with lambda = 2: R(t) = -2/(1+4t).
  const auto right = verify_soliton_evolution(traj, 2.0);
  CHECK(right.max_deviation <= 1e-4);
}

TEST_CASE("heat law residual drops by >= 8x when dt halves (4th order)") {
  const auto coarse = integrate_flow(catalog::heis3(), 1.0, 1e-3);
  const auto fine = integrate_flow(catalog::heis3(), 1.0, 5e-4);
  const double rc = verify_heat_law(coarse).max_residual;
  const double rf = verify_heat_law(fine).max_residual;
  CHECK(rc > 0.0);
  CHECK(rc / rf >= 8.0);
}

TEST_CASE("R V^(2/n) is monotone increasing off the Einstein locus") {
  for (const char* name : {"heis3", "sol3"}) {
    const auto traj = integrate_flow(catalog::build(name), 0.5, 1e-3);
    REQUIRE_FALSE(traj.broke_down);
    const auto rv = verify_rv_monotonicity(traj);
    CHECK(rv.min_slope > 0.0);
    CHECK(rv.max_relative_mismatch <= 1e-3);
  }
  const auto traj = integrate_flow(catalog::sl2r(), 0.2, 1e-3);
  REQUIRE_FALSE(traj.broke_down);
  const auto rv = verify_rv_monotonicity(traj);
  CHECK(rv.min_slope > 0.0);
  CHECK(rv.max_relative_mismatch <= 1e-3);
}

TEST_CASE("R V^(2/n) is constant on an Einstein metric (hyperbolic extension)") {
  const auto ext = solvable_extension(catalog::abelian(2), Matrix::Identity(2, 2), 1.0);
  const auto traj = integrate_flow(ext.extended, 1.0, 1e-3);
  REQUIRE_FALSE(traj.broke_down);
  const auto rv = verify_rv_monotonicity(traj);
  CHECK(rv.max_slope_abs <= 1e-6);
  // Einstein flow is pure rescaling: R(t) = R0 / (1 + 2 lambda t), lambda = 2.
  const auto ev = verify_soliton_evolution(traj, 2.0);
  CHECK(ev.max_deviation <= 1e-8);
}

TEST_CASE("R is strictly monotone on non-Einstein trajectories (no periodic orbits)") {
  for (const char* name : {"heis3", "sol3", "sl2r", "nil4", "heis5"}) {
    const auto traj = integrate_flow(catalog::build(name), 0.2, 1e-3);
    REQUIRE_FALSE(traj.broke_down);
    for (std::size_t k = 0; k + 1 < traj.size(); ++k)
      CHECK(traj.scalars[k + 1] > traj.scalars[k]);
  }
}

TEST_CASE("diagonal algebras keep off-diagonal metric entries at zero") {
  for (const char* name : {"heis3", "sol3"}) {
    const auto traj = integrate_flow(catalog::build(name), 1.0, 1e-3);
    for (const auto& g : traj.metrics) {
      Matrix off = g;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() <= tol::flow);
    }
  }
}

TEST_CASE("self-similarity holds for a perturbed heis3 metric (soliton uniqueness)") {
  Matrix g = Vector(Eigen::Vector3d(1, 2, 1)).asDiagonal();
  const auto traj = integrate_flow(MetricLieAlgebra(catalog::heis3().algebra(), g), 1.0, 1e-3);
  REQUIRE_FALSE(traj.broke_down);
  CHECK(verify_self_similarity(traj, catalog::heis3().algebra()) <= 1e-3);
}

TEST_CASE("backward flow reaches the shrinking blow-up of heis3") {
  // Closed form: the v-directions scale like (1+3t)^(1/3), vanishing at t = -1/3.
  const auto safe = integrate_flow(catalog::heis3(), -0.3, 1e-3);
  REQUIRE_FALSE(safe.broke_down);
  CHECK(verify_soliton_evolution(safe, 1.5).max_deviation <= 1e-3);

  const auto traj = integrate_flow(catalog::heis3(), -0.4, 1e-3);
  CHECK(traj.broke_down);
  CHECK(traj.t_star == Catch::Approx(-1.0 / 3.0).margin(0.02));
  CHECK(traj.note.find("blow-up") != std::string::npos);
}

TEST_CASE("flow guards") {
  CHECK_THROWS_AS(integrate_flow(catalog::heis3(), 1.0, 0.0), precondition_error);
  CHECK_THROWS_AS(integrate_flow(catalog::heis3(), 0.0, 1e-3), precondition_error);
}
