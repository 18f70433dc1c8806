#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "liesoliton/catalog.hpp"
#include "liesoliton/flow.hpp"
#include "liesoliton/soliton.hpp"
#include "liesoliton/two_step.hpp"

namespace liesoliton {

/// One decided quantity in an analysis report: every numeric field carries the
/// tolerance at which it was decided (empty for exact/derived text fields).
struct ReportRow {
  std::string section;
  std::string field;
  std::string value;
  std::string tolerance;
};

struct AnalysisReport {
  std::string name;
  std::vector<ReportRow> rows;
};

namespace report_detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string num_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string tol_str(double t) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(0) << t;
  return os.str();
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string spectrum_string(const Matrix& ricci_frame) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(ricci_frame, Eigen::EigenvaluesOnly);
  Vector ev = es.eigenvalues();
  std::ostringstream os;
  os << std::setprecision(12) << "[";
  for (Eigen::Index i = 0; i < ev.size(); ++i) os << (i ? ", " : "") << ev(i);
  os << "]";
  return os.str();
}

inline std::string diag_string(const Matrix& m) {
  std::ostringstream os;
  os << std::setprecision(12) << "diag[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) os << (i ? ", " : "") << m(i, i);
  os << "]";
  return os.str();
}

}  // namespace report_detail

/// Full analysis of one metric Lie algebra: algebraic invariants, curvature,
/// soliton feasibility, gradient obstructions, two-step data when the class
/// is 2, and an Einstein extension when a nilsoliton certificate exists.
inline AnalysisReport analyze(const std::string& name, const MetricLieAlgebra& mla) {
  using report_detail::diag_string;
  using report_detail::num;
  using report_detail::spectrum_string;
  using report_detail::tol_str;
  AnalysisReport rep;
  rep.name = name;
  auto add = [&](const std::string& sec, const std::string& field, const std::string& value,
                 double tolerance = 0.0) {
    rep.rows.push_back(
        {sec, field, value, tolerance > 0 ? report_detail::tol_str(tolerance) : std::string()});
  };

  const LieAlgebra& alg = mla.algebra();
  add("algebra", "dim", std::to_string(mla.dim()));
  const auto jac = check_jacobi(alg);
  add("algebra", "jacobi_residual", num(jac.max_residual), tol::alg);
  add("algebra", "unimodular", is_unimodular(alg) ? "true" : "false", tol::alg);
  const auto series = lower_central_series(alg);
  {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < series.dims.size(); ++i) os << (i ? ", " : "") << series.dims[i];
    os << "]";
    add("algebra", "lower_central_dims", os.str(), tol::rank);
  }
  add("algebra", "nilpotency_class",
      series.nilpotent ? std::to_string(series.nilpotency_class) : "not nilpotent", tol::rank);
  add("algebra", "solvable", is_solvable(alg) ? "true" : "false", tol::rank);
  add("algebra", "center_dim", std::to_string(center(alg).cols()), tol::rank);
  add("algebra", "derivation_dim", std::to_string(derivation_algebra(alg).dimension), tol::rank);

  const CurvaturePackage curv = curvature(mla);
  add("curvature", "ricci_spectrum", spectrum_string(curv.ricci_frame), tol::alg);
  add("curvature", "scalar", num(curv.scalar), tol::alg);
  add("curvature", "ricci_norm_sq", num(curv.ricci_norm_sq), tol::alg);
  add("curvature", "flat", curv.riemann_max_abs <= tol::alg ? "true" : "false", tol::alg);
  add("curvature", "left_invariant_flat_factor_dim",
      std::to_string(euclidean_factor(mla).cols()), tol::rank);

  const auto ein = is_einstein(mla);
  add("curvature", "einstein", ein.einstein ? "true" : "false", tol::sol());
  if (ein.einstein) add("curvature", "einstein_lambda", num(ein.lambda), tol::sol());

  SolitonCertificate nil_cert;
  bool have_nil_cert = false;
  if (series.nilpotent) {
    nil_cert = solve_nilsoliton(mla);
    have_nil_cert = true;
    add("nilsoliton", "verdict", to_string(nil_cert.verdict), tol::sol());
    add("nilsoliton", "residual", num(nil_cert.residual), tol::sol());
    if (nil_cert.verdict == SolitonVerdict::nilsoliton) {
      add("nilsoliton", "c", num(nil_cert.c), tol::sol());
      add("nilsoliton", "lambda", num(nil_cert.lambda), tol::sol());
      add("nilsoliton", "derivation_diag", diag_string(nil_cert.derivation), tol::sol());
      add("nilsoliton", "soliton_type", to_string(*nil_cert.soliton_type), tol::rank);
      add("nilsoliton", "sign_consistent", nil_cert.sign_consistent ? "true" : "false", tol::rank);
    }
  }

  const SolitonCertificate li = solve_left_invariant_field(mla);
  add("left_invariant_field", "verdict", to_string(li.verdict), tol::sol());
  add("left_invariant_field", "residual", num(li.residual), tol::sol());
  if (li.verdict == SolitonVerdict::einstein)
    add("left_invariant_field", "lambda", num(li.lambda), tol::sol());
  if (li.soliton_type)
    add("left_invariant_field", "soliton_type", to_string(*li.soliton_type), tol::rank);

  const auto grad = gradient_obstruction(mla);
  add("gradient", "ricci_nondegenerate", grad.ricci_nondegenerate ? "true" : "false", tol::rank);
  add("gradient", "left_invariant_flat_factor_dim", std::to_string(grad.flat_factor_dim),
      tol::rank);
  add("gradient", "verdict", grad.not_gradient ? "not-gradient" : "inconclusive", tol::rank);

  if (series.nilpotent && series.nilpotency_class == 2) {
    const auto dec = decompose_two_step(mla);
    add("two_step", "center_dim", std::to_string(dec.z_basis.cols()), tol::rank);
    add("two_step", "htype", is_htype(dec) ? "true" : "false", tol::alg);
    add("two_step", "nonsingular", is_nonsingular(dec) ? "true" : "false", tol::rank);
    const auto kern = ricci_kernel_two_step(dec, mla);
    add("two_step", "ricci_kernel_dim", std::to_string(kern.basis.cols()), tol::rank);
    add("two_step", "ricci_kernel_consistent", kern.consistent ? "true" : "false", tol::rank);
  }

  if (have_nil_cert && nil_cert.verdict == SolitonVerdict::nilsoliton) {
    const Matrix g = mla.metric();
    Matrix g_inv = mla.inv_sqrt_metric() * mla.inv_sqrt_metric();
    Matrix d_sym = 0.5 * (nil_cert.derivation + g_inv * nil_cert.derivation.transpose() * g);
    const auto scale = find_einstein_scale(mla, d_sym);
    add("extension", "einstein_scale_found", scale.found ? "true" : "false", tol::sol());
    add("extension", "s", num(scale.s), tol::sol());
    add("extension", "residual", num(scale.residual), tol::sol());
    if (scale.found) {
      const auto ext = solvable_extension(mla, d_sym, scale.s);
      add("extension", "lambda_einstein", num(is_einstein(ext.extended).lambda), tol::sol());
    }
  }
  return rep;
}

inline void emit_text(const AnalysisReport& rep, std::ostream& os) {
  os << "algebra: " << rep.name << "\n";
  std::string last_section;
  for (const auto& row : rep.rows) {
    if (row.section != last_section) {
      os << "[" << row.section << "]\n";
      last_section = row.section;
    }
    os << "  " << row.field << " = " << row.value;
    if (!row.tolerance.empty()) os << "   (tol " << row.tolerance << ")";
    os << "\n";
  }
}

inline void emit_csv(const AnalysisReport& rep, std::ostream& os) {
  using report_detail::csv_field;
  os << "algebra,section,field,value,tolerance\n";
  for (const auto& row : rep.rows)
    os << csv_field(rep.name) << "," << row.section << "," << row.field << ","
       << csv_field(row.value) << "," << row.tolerance << "\n";
}

}  // namespace liesoliton
