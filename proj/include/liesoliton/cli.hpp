#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liesoliton/liesoliton.hpp"

namespace liesoliton::cli {

// Exit-code contract: 0 ok, 1 theorem-suite failure, 2 input validation,
// 3 flow breakdown, 4 precondition violation.
inline constexpr int exit_ok = 0;
inline constexpr int exit_theorem_failure = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_flow_breakdown = 3;
inline constexpr int exit_precondition = 4;

namespace detail {

inline std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline Matrix read_metric_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open metric file '" + path + "'");
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(in >> g(i, j)))
        throw validation_error("metric file '" + path + "' needs " + std::to_string(dim) + "x" +
                               std::to_string(dim) + " numbers");
  return g;
}

/// Resolves a CLI input to (name, metric Lie algebra): an existing file is
/// parsed as an algebra spec file, anything else as a catalog name.
inline std::pair<std::string, MetricLieAlgebra> resolve_input(const std::string& input,
                                                              const std::string& metric_path) {
  std::string name = input;
  std::optional<MetricLieAlgebra> mla;
  if (std::filesystem::exists(input) && std::filesystem::is_regular_file(input)) {
    AlgebraSpecFile spec = specfile::parse_file(input);
    name = spec.name;
    mla = specfile::realize(spec);
  } else {
    mla = catalog::build(input);
  }
  if (!metric_path.empty()) {
    Matrix g = read_metric_file(metric_path, mla->dim());
    mla = MetricLieAlgebra(mla->algebra(), g);
  }
  return {name, *mla};
}

inline void banner(std::ostream& os, bool no_banner, const std::string& format) {
  if (!no_banner && format == "text") os << "liesoliton 1.0.0\n";
}

inline void write_flow_csv(const FlowTrajectory& traj, std::ostream& os) {
  const int n = traj.dim();
  os << "t";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) os << ",g_" << (i + 1) << "_" << (j + 1);
  os << ",R,ricci_norm_sq,V,rv_invariant\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << num17(traj.times[k]);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) os << "," << num17(traj.metrics[k](i, j));
    os << "," << num17(traj.scalars[k]) << "," << num17(traj.ricci_norms[k]) << ","
       << num17(traj.volumes[k]) << "," << num17(traj.rv_invariant[k]) << "\n";
  }
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"left-invariant Ricci soliton toolkit"};
  app.require_subcommand(1);

  bool no_banner = false;
  std::string format = "text";
  app.add_flag("--no-banner", no_banner, "suppress the human-readable header line");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  std::string input, metric_path;
  double t_end = 1.0, dt = 1e-3, scale = 1.0;
  double lambda_override = 0.0;
  bool have_lambda = false, auto_scale = false, have_scale = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "full report for one algebra");
  analyze_cmd->add_option("input", input, "catalog name or algebra file")->required();
  analyze_cmd->add_option("--metric", metric_path, "file with a dim x dim metric");

  auto* flow_cmd = app.add_subcommand("flow", "integrate the Ricci flow ODE, emit CSV");
  flow_cmd->add_option("input", input, "catalog name or algebra file")->required();
  flow_cmd->add_option("--metric", metric_path, "file with a dim x dim metric");
  flow_cmd->add_option("--t-end", t_end, "integration end time (negative flows backward)")
      ->capture_default_str();
  flow_cmd->add_option("--dt", dt, "fixed RK4 step size")->capture_default_str();
  flow_cmd->add_option("--lambda", lambda_override,
                       "soliton constant for the evolution check (default: from certificate)")
      ->each([&](const std::string&) { have_lambda = true; });

  auto* extend_cmd = app.add_subcommand("extend", "Einstein solvable extension of a nilsoliton");
  extend_cmd->add_option("input", input, "catalog name or algebra file")->required();
  extend_cmd->add_option("--metric", metric_path, "file with a dim x dim metric");
  auto* scale_opt = extend_cmd->add_option("--scale", scale, "extension scale s");
  scale_opt->each([&](const std::string&) { have_scale = true; });
  extend_cmd->add_flag("--auto", auto_scale, "search the Einstein scale");

  auto* theorems_cmd = app.add_subcommand("theorems", "run the structural checks over the catalog");
  (void)theorems_cmd;

  auto* catalog_cmd = app.add_subcommand("catalog", "list the named algebras");
  std::string catalog_action = "list";
  catalog_cmd->add_option("action", catalog_action, "list")->check(CLI::IsMember({"list"}));

  // Global flags may also follow the subcommand.
  for (auto* sub : {analyze_cmd, flow_cmd, extend_cmd, theorems_cmd, catalog_cmd})
    sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("liesoliton");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    if (catalog_cmd->parsed()) {
      detail::banner(out, no_banner, format);
      if (format == "csv") {
        out << "name,description\n";
        for (const auto& e : catalog::entries())
          out << report_detail::csv_field(e.name) << ","
              << report_detail::csv_field(e.description) << "\n";
      } else {
        for (const auto& e : catalog::entries())
          out << "  " << e.name << "  -  " << e.description << "\n";
        out << "  abelianN  -  abelian algebra R^N\n";
        out << "  milnor(a,b,c,d)  -  nonunimodular 3D family\n";
      }
      return exit_ok;
    }

    if (theorems_cmd->parsed()) {
      detail::banner(out, no_banner, format);
      const auto suite = run_theorem_suite_default();
      if (!suite.warning.empty()) err << "warning: " << suite.warning << "\n";
      if (format == "csv") {
        out << "theorem,instance,pass,detail\n";
        for (const auto& row : suite.rows)
          out << row.theorem << "," << report_detail::csv_field(row.instance) << ","
              << (row.pass ? "pass" : "FAIL") << "," << report_detail::csv_field(row.detail)
              << "\n";
      } else {
        for (const auto& row : suite.rows)
          out << (row.pass ? "[pass] " : "[FAIL] ") << row.theorem << " @ " << row.instance
              << "  (" << row.detail << ")\n";
        out << (suite.all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
      }
      return suite.all_pass ? exit_ok : exit_theorem_failure;
    }

    if (analyze_cmd->parsed()) {
      auto [name, mla] = detail::resolve_input(input, metric_path);
      const AnalysisReport rep = analyze(name, mla);
      detail::banner(out, no_banner, format);
      if (format == "csv")
        emit_csv(rep, out);
      else
        emit_text(rep, out);
      return exit_ok;
    }

    if (flow_cmd->parsed()) {
      auto [name, mla] = detail::resolve_input(input, metric_path);
      double lambda = lambda_override;
      bool lambda_known = have_lambda;
      if (!lambda_known) {
        SolitonCertificate cert = is_nilpotent(mla.algebra()) ? solve_nilsoliton(mla)
                                                              : solve_left_invariant_field(mla);
        if (cert.verdict == SolitonVerdict::nilsoliton ||
            cert.verdict == SolitonVerdict::einstein ||
            cert.verdict == SolitonVerdict::left_invariant_field) {
          lambda = cert.lambda;
          lambda_known = true;
        }
      }
      const FlowTrajectory traj = integrate_flow(mla, t_end, dt);
      std::ostream& summary = (format == "csv") ? err : out;
      detail::banner(summary, no_banner, format);
      if (format == "csv") detail::write_flow_csv(traj, out);
      summary << "flow " << name << ": " << traj.size() << " states, t in [0, "
              << traj.times.back() << "]\n";
      if (traj.size() >= 3) {
        const auto heat = verify_heat_law(traj);
        summary << "heat law max |dR/dt - 2|Ric|^2| = " << heat.max_residual
                << (heat.scalar_nondecreasing ? "" : "  (R not monotone!)") << "\n";
        const auto rv = verify_rv_monotonicity(traj);
        summary << "R V^(2/n) min slope = " << rv.min_slope
                << ", slope vs 2|Ric - (R/n)g|^2 V^(2/n) mismatch = "
                << rv.max_relative_mismatch << "\n";
        if (lambda_known) {
          const auto ev = verify_soliton_evolution(traj, lambda);
          if (ev.degenerate)
            summary << "soliton evolution: " << ev.note
                    << "; max |R - R0| = " << ev.max_deviation << "\n";
          else
            summary << "soliton evolution (lambda = " << lambda
                    << "): max |R(t)(1+2 lambda t)/R0 - 1| = " << ev.max_deviation << "\n";
          summary << "self-similarity: normalized Ricci spectrum deviation = "
                  << verify_self_similarity(traj, mla.algebra()) << "\n";
        }
      }
      if (traj.broke_down) {
        err << "flow stopped early: " << traj.note << "\n";
        return exit_flow_breakdown;
      }
      return exit_ok;
    }

    if (extend_cmd->parsed()) {
      auto [name, mla] = detail::resolve_input(input, metric_path);
      if (!auto_scale && !have_scale)
        throw precondition_error("extend requires --scale S or --auto");
      if (!is_nilpotent(mla.algebra()))
        throw precondition_error("no nilsoliton structure found: algebra is not nilpotent");
      const SolitonCertificate cert = solve_nilsoliton(mla);
      if (cert.verdict != SolitonVerdict::nilsoliton && cert.verdict != SolitonVerdict::einstein)
        throw precondition_error("no nilsoliton structure found: verdict " +
                                 std::string(to_string(cert.verdict)) + ", residual " +
                                 std::to_string(cert.residual));
      const Matrix& g = mla.metric();
      Matrix g_inv = mla.inv_sqrt_metric() * mla.inv_sqrt_metric();
      Matrix d_sym = 0.5 * (cert.derivation + g_inv * cert.derivation.transpose() * g);
      if (d_sym.norm() <= tol::rank) d_sym = Matrix::Identity(mla.dim(), mla.dim());
      detail::banner(out, no_banner, format);
      double s = scale;
      double residual;
      bool found;
      if (auto_scale) {
        const auto best = find_einstein_scale(mla, d_sym);
        s = best.s;
        residual = best.residual;
        found = best.found;
      } else {
        residual = is_einstein(solvable_extension(mla, d_sym, s).extended).residual;
        found = residual <= tol::sol();
      }
      const auto ext = solvable_extension(mla, d_sym, s);
      const auto ein = is_einstein(ext.extended);
      if (format == "csv") {
        out << "name,s,einstein,lambda_einstein,residual\n";
        out << report_detail::csv_field(name) << "," << detail::num17(s) << ","
            << (found ? "true" : "false") << "," << detail::num17(ein.lambda) << ","
            << detail::num17(ein.residual) << "\n";
      } else {
        out << "extension of " << name << " by the certificate derivation, s = " << s << "\n";
        if (found)
          out << "Einstein: lambda_e = " << ein.lambda << ", residual = " << ein.residual << "\n";
        else
          out << "no Einstein extension at this D: best residual = " << residual << "\n";
      }
      return exit_ok;
    }
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const internal_inconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return exit_theorem_failure;
  }
  return exit_ok;
}

}  // namespace liesoliton::cli
