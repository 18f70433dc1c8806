#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liesoliton/metric_geometry.hpp"

namespace liesoliton {

/// On-disk description of a metric Lie algebra. Line-oriented UTF-8:
///
///   name heis3
///   dim 3
///   bracket 1 2 3 1        # c[1][2][3] = 1, antisymmetric completion implied
///   metric                 # optional; identity when absent
///   1 0 0
///   0 1 0
///   0 0 1
///   tag free-form metadata # optional, any number
///
/// Indices are 1-based. '#' starts a comment; blank lines are ignored.
/// write() emits the canonical form: brackets sorted with i < j, numbers in
/// shortest-exact decimal, metric always present. write(parse(f)) is
/// bit-identical for canonical files.
struct AlgebraSpecFile {
  std::string name;
  int dim = 0;
  std::vector<BracketEntry> brackets;  // 1-based indices as in the file
  std::optional<Matrix> metric;
  std::vector<std::string> tags;
};

namespace specfile {

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline AlgebraSpecFile parse(std::istream& in) {
  AlgebraSpecFile out;
  std::string line;
  int lineno = 0;
  bool seen_name = false, seen_dim = false;
  int metric_rows_pending = 0;
  auto fail = [&](const std::string& msg) {
    throw validation_error("algebra file, line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (metric_rows_pending > 0) {
      // Inside a metric block: this line must be a row of numbers.
      std::istringstream row(line);
      const int n = out.dim;
      const int r = n - metric_rows_pending;
      for (int j = 0; j < n; ++j)
        if (!(row >> (*out.metric)(r, j))) fail("metric row needs " + std::to_string(n) + " numbers");
      --metric_rows_pending;
      continue;
    }
    if (word == "name") {
      if (!(ls >> out.name)) fail("expected: name <identifier>");
      seen_name = true;
    } else if (word == "dim") {
      if (!(ls >> out.dim) || out.dim < 1) fail("expected: dim <positive integer>");
      seen_dim = true;
    } else if (word == "bracket") {
      if (!seen_dim) fail("bracket before dim");
      BracketEntry e{};
      if (!(ls >> e.i >> e.j >> e.k >> e.value)) fail("expected: bracket i j k value");
      if (e.i < 1 || e.i > out.dim || e.j < 1 || e.j > out.dim || e.k < 1 || e.k > out.dim)
        fail("bracket index out of range 1.." + std::to_string(out.dim));
      if (e.i == e.j) fail("bracket requires i != j");
      for (const auto& prev : out.brackets)
        if ((prev.i == e.i && prev.j == e.j && prev.k == e.k) ||
            (prev.i == e.j && prev.j == e.i && prev.k == e.k))
          fail("duplicate bracket entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
               ", " + std::to_string(e.k) + ")");
      out.brackets.push_back(e);
    } else if (word == "metric") {
      if (!seen_dim) fail("metric before dim");
      if (out.metric) fail("duplicate metric block");
      out.metric = Matrix::Zero(out.dim, out.dim);
      metric_rows_pending = out.dim;
    } else if (word == "tag") {
      std::string rest;
      std::getline(ls, rest);
      const auto first = rest.find_first_not_of(" \t");
      out.tags.push_back(first == std::string::npos ? "" : rest.substr(first));
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (metric_rows_pending > 0)
    throw validation_error("algebra file: metric block ended after " +
                           std::to_string(out.dim - metric_rows_pending) + " of " +
                           std::to_string(out.dim) + " rows");
  if (!seen_name || !seen_dim) throw validation_error("algebra file: missing name or dim");
  return out;
}

inline AlgebraSpecFile parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

inline AlgebraSpecFile parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open algebra file '" + path + "'");
  return parse(in);
}

/// Canonical serialisation; see AlgebraSpecFile.
inline void write(const AlgebraSpecFile& spec, std::ostream& os) {
  os << "name " << spec.name << "\n";
  os << "dim " << spec.dim << "\n";
  std::vector<BracketEntry> sorted = spec.brackets;
  for (auto& e : sorted)
    if (e.i > e.j) {
      std::swap(e.i, e.j);
      e.value = -e.value;
    }
  std::sort(sorted.begin(), sorted.end(), [](const BracketEntry& a, const BracketEntry& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  for (const auto& e : sorted)
    os << "bracket " << e.i << " " << e.j << " " << e.k << " " << format_number(e.value) << "\n";
  os << "metric\n";
  const Matrix g = spec.metric ? *spec.metric : Matrix(Matrix::Identity(spec.dim, spec.dim));
  for (int r = 0; r < spec.dim; ++r) {
    for (int c = 0; c < spec.dim; ++c) os << (c ? " " : "") << format_number(g(r, c));
    os << "\n";
  }
  for (const auto& t : spec.tags) os << "tag " << t << "\n";
}

inline std::string write_string(const AlgebraSpecFile& spec) {
  std::ostringstream os;
  write(spec, os);
  return os.str();
}

/// Validity gate: builds the metric Lie algebra, rejecting antisymmetry/Jacobi
/// violations and non-SPD metrics with the offending entry.
inline MetricLieAlgebra realize(const AlgebraSpecFile& spec) {
  std::vector<BracketEntry> zero_based;
  zero_based.reserve(spec.brackets.size());
  for (const auto& e : spec.brackets) zero_based.push_back({e.i - 1, e.j - 1, e.k - 1, e.value});
  LieAlgebra alg = LieAlgebra::from_brackets(spec.dim, zero_based);
  require_jacobi(alg);
  Matrix g = spec.metric ? *spec.metric : Matrix(Matrix::Identity(spec.dim, spec.dim));
  return MetricLieAlgebra(std::move(alg), std::move(g));
}

/// Spec-file view of a named catalog-style algebra (used by writers).
inline AlgebraSpecFile from_metric_lie_algebra(const std::string& name,
                                               const MetricLieAlgebra& mla) {
  AlgebraSpecFile out;
  out.name = name;
  out.dim = mla.dim();
  for (int i = 0; i < out.dim; ++i)
    for (int j = i + 1; j < out.dim; ++j)
      for (int k = 0; k < out.dim; ++k)
        if (mla.algebra().c(i, j, k) != 0.0)
          out.brackets.push_back({i + 1, j + 1, k + 1, mla.algebra().c(i, j, k)});
  out.metric = mla.metric();
  return out;
}

}  // namespace specfile
}  // namespace liesoliton
