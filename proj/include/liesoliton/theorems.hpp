#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "liesoliton/catalog.hpp"
#include "liesoliton/flow.hpp"
#include "liesoliton/report.hpp"
#include "liesoliton/soliton.hpp"
#include "liesoliton/two_step.hpp"

namespace liesoliton {

/// One theorem-instance check: a named structural statement evaluated on one
/// catalog algebra.
struct TheoremRow {
  std::string theorem;
  std::string instance;
  bool pass = false;
  std::string detail;
};

struct TheoremSuiteResult {
  std::vector<TheoremRow> rows;
  bool all_pass = true;
  std::string warning;
};

struct TheoremSuiteOptions {
  /// Fault-injection self-test: feeds a wrong-sign Ricci into the H-type
  /// classification so the expanding-soliton check must fail.
  bool flip_ricci_sign = false;
  double flow_t_end = 0.2;
  double flow_dt = 1e-3;
};

namespace theorems_detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline bool feasible(const SolitonCertificate& c) {
  return c.verdict == SolitonVerdict::nilsoliton ||
         c.verdict == SolitonVerdict::left_invariant_field ||
         c.verdict == SolitonVerdict::einstein;
}

}  // namespace theorems_detail

/// Runs the structural checks the theorem table is made of. Rows come out in
/// catalog order regardless of evaluation order.
inline TheoremSuiteResult run_theorem_suite(const std::vector<catalog::Entry>& entries,
                                            const TheoremSuiteOptions& options = {}) {
  using theorems_detail::feasible;
  using theorems_detail::fmt;
  TheoremSuiteResult result;
  if (entries.empty()) {
    result.warning = "theorem suite ran on an empty catalog: zero rows";
    return result;
  }
  auto add = [&](const std::string& theorem, const std::string& instance, bool pass,
                 const std::string& detail) {
    result.rows.push_back({theorem, instance, pass, detail});
    result.all_pass = result.all_pass && pass;
  };

  for (const auto& entry : entries) {
    const MetricLieAlgebra mla = entry.build();
    const LieAlgebra& alg = mla.algebra();
    const CurvaturePackage curv = curvature(mla);
    const bool unimod = is_unimodular(alg);
    const auto series = lower_central_series(alg);
    const bool solvable = is_solvable(alg);

    // Unimodular groups: every left-invariant field is divergence free.
    if (unimod) {
      double worst = 0.0;
      for (int i = 0; i < mla.dim(); ++i)
        worst = std::max(worst,
                         std::abs(divergence_left_invariant(mla, Vector(Vector::Unit(mla.dim(), i)))));
      add("unimodular-divergence-free", entry.name, worst <= tol::alg,
          "max |div e_i| = " + fmt(worst));
    }

    // The soliton system has no nontrivial left-invariant solution on
    // unimodular groups, nor on 3-dimensional nonunimodular ones.
    if (unimod || mla.dim() == 3) {
      const auto cert = solve_left_invariant_field(mla);
      const bool no_nontrivial = cert.verdict != SolitonVerdict::left_invariant_field &&
                                 cert.verdict != SolitonVerdict::ambiguous;
      const bool margin_ok =
          cert.verdict != SolitonVerdict::infeasible || cert.residual > 1e-6;
      add("no-left-invariant-soliton-field", entry.name, no_nontrivial && margin_ok,
          std::string(to_string(cert.verdict)) + ", residual = " + fmt(cert.residual));
    }

    // Solvable groups: flat or strictly negative scalar curvature, so any
    // soliton structure on them is expanding.
    if (solvable) {
      const bool flat = curv.riemann_max_abs <= tol::alg;
      const bool sign_ok = flat || curv.scalar < -tol::alg;
      add("solvable-scalar-sign", entry.name, sign_ok,
          "scalar = " + fmt(curv.scalar) + (flat ? " (flat)" : ""));
      if (series.nilpotent) {
        const auto cert = solve_nilsoliton(mla);
        if (cert.verdict == SolitonVerdict::nilsoliton)
          add("solvable-soliton-expanding", entry.name,
              cert.soliton_type == SolitonType::expanding,
              "lambda = " + fmt(cert.lambda));
      }
    }

    // Steady-soliton nonexistence proxy: a feasible certificate on a
    // nonflat metric must pair lambda and R0 with opposite signs.
    {
      SolitonCertificate cert =
          series.nilpotent ? solve_nilsoliton(mla) : solve_left_invariant_field(mla);
      if (feasible(cert)) {
        const bool flat = std::abs(cert.scalar0) <= tol::alg;
        const bool ok = flat || (cert.lambda * cert.scalar0 < 0 && std::abs(cert.lambda) > tol::rank);
        add("steady-soliton-nonexistence", entry.name, ok,
            "lambda = " + fmt(cert.lambda) + ", R0 = " + fmt(cert.scalar0));
      }
    }

    // Two-step structure: H-type forces nonsingularity, nonsingularity forces
    // a trivial Ricci kernel and rules out gradient soliton structure; H-type
    // algebras carry an expanding nongradient nilsoliton.
    if (series.nilpotent && series.nilpotency_class == 2) {
      const auto dec = decompose_two_step(mla);
      const bool htype = is_htype(dec);
      const bool nonsingular = is_nonsingular(dec);
      const auto kern = ricci_kernel_two_step(dec, mla);
      if (htype)
        add("htype-implies-nonsingular", entry.name, nonsingular, nonsingular ? "ok" : "violated");
      if (nonsingular) {
        const auto grad = gradient_obstruction(mla);
        add("nonsingular-not-gradient", entry.name,
            kern.basis.cols() == 0 && kern.consistent && grad.not_gradient,
            "ricci kernel dim = " + std::to_string(kern.basis.cols()));
      }
      if (htype) {
        auto cert = solve_nilsoliton(mla);
        double lambda = cert.lambda, scalar0 = cert.scalar0;
        if (options.flip_ricci_sign) {  // fault injection for the self-test
          lambda = -lambda;
          scalar0 = -scalar0;
        }
        const auto cls = classify_soliton_type(scalar0, lambda);
        const auto grad = gradient_obstruction(mla);
        const bool ok = cert.verdict == SolitonVerdict::nilsoliton &&
                        cls.type == SolitonType::expanding && grad.not_gradient;
        add("htype-expanding-nongradient", entry.name, ok,
            std::string(to_string(cert.verdict)) + ", type = " + to_string(cls.type) +
                ", residual = " + fmt(cert.residual));
      }
    }

    // Scale invariance of nilsoliton feasibility: c -> c/2 and D -> D/2 under
    // g -> 2g.
    if (series.nilpotent) {
      const auto cert = solve_nilsoliton(mla);
      if (cert.verdict == SolitonVerdict::nilsoliton) {
        const auto scaled = solve_nilsoliton(mla.scaled(2.0));
        const bool ok = scaled.verdict == SolitonVerdict::nilsoliton &&
                        std::abs(scaled.c - cert.c / 2.0) <= 10 * tol::sol() &&
                        (scaled.derivation - cert.derivation / 2.0).norm() <= 10 * tol::sol();
        add("soliton-scale-invariance", entry.name, ok,
            "c = " + fmt(cert.c) + " -> " + fmt(scaled.c));
      }
    }
  }

  // Flow-level checks on a fixed selection of trajectories.
  auto has = [&](const std::string& name) {
    for (const auto& e : entries)
      if (e.name == name) return true;
    return false;
  };
  for (const std::string name : {"heis3", "sol3", "sl2r"}) {
    if (!has(name)) continue;
    const MetricLieAlgebra mla = catalog::build(name);
    const auto traj = integrate_flow(mla, options.flow_t_end, options.flow_dt);
    const auto rv = verify_rv_monotonicity(traj);
    add("rv-monotone-increasing", name,
        !traj.broke_down && rv.min_slope > 0 && rv.max_relative_mismatch <= 1e-3,
        "min slope = " + fmt(rv.min_slope) + ", slope mismatch = " +
            fmt(rv.max_relative_mismatch));
    // Strict monotonicity of R rules out periodic orbits.
    bool strict = true;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k)
      strict = strict && traj.scalars[k + 1] > traj.scalars[k];
    add("no-periodic-orbits", name, strict, "R strictly increasing");
  }
  if (has("heis3")) {
    const MetricLieAlgebra mla = catalog::build("heis3");
    const auto cert = solve_nilsoliton(mla);
    const auto traj = integrate_flow(mla, 1.0, options.flow_dt);
    const auto evolution = verify_soliton_evolution(traj, cert.lambda);
    add("soliton-scalar-evolution", "heis3",
        !evolution.degenerate && evolution.max_deviation <= tol::flow,
        "max deviation = " + fmt(evolution.max_deviation));
    const double shape = verify_self_similarity(traj, mla.algebra());
    add("soliton-self-similarity", "heis3", shape <= tol::flow,
        "spectrum deviation = " + fmt(shape));
  }
  if (has("abelian3")) {
    // Einstein trajectory: R V^(2/n) stays constant. Hyperbolic H^3 as the
    // solvable extension of abelian(2) by the identity derivation.
    const auto ext = solvable_extension(catalog::abelian(2), Matrix::Identity(2, 2), 1.0);
    const auto traj = integrate_flow(ext.extended, options.flow_t_end, options.flow_dt);
    const auto rv = verify_rv_monotonicity(traj);
    add("rv-constant-on-einstein", "hyperbolic3", rv.max_slope_abs <= 1e-6,
        "max |slope| = " + fmt(rv.max_slope_abs));
  }
  return result;
}

inline TheoremSuiteResult run_theorem_suite_default(const TheoremSuiteOptions& options = {}) {
  return run_theorem_suite(catalog::entries(), options);
}

}  // namespace liesoliton
