#pragma once

#include <charconv>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "liesoliton/metric_geometry.hpp"

namespace liesoliton {

/// Named metric Lie algebras used throughout the test and theorem suites.
/// All default metrics are the identity on the stated basis.
namespace catalog {

inline MetricLieAlgebra abelian(int n) {
  return MetricLieAlgebra(LieAlgebra::from_brackets(n, {}), Matrix::Identity(n, n));
}

/// Heisenberg algebra: [e1,e2] = e3.
inline MetricLieAlgebra heis3() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}}),
                          Matrix::Identity(3, 3));
}

/// heis3 + a central flat line (e4).
inline MetricLieAlgebra heis3xr() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(4, {{0, 1, 2, 1.0}}),
                          Matrix::Identity(4, 4));
}

/// Five-dimensional Heisenberg algebra: [e1,e2] = e5, [e3,e4] = e5.
inline MetricLieAlgebra heis5() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(5, {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}}),
                          Matrix::Identity(5, 5));
}

/// Filiform nilpotent algebra: [e1,e2] = e3, [e1,e3] = e4 (3-step).
inline MetricLieAlgebra nil4() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}),
                          Matrix::Identity(4, 4));
}

/// Solvable algebra of Sol geometry: [e3,e1] = e1, [e3,e2] = -e2.
inline MetricLieAlgebra sol3() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(3, {{2, 0, 0, 1.0}, {2, 1, 1, -1.0}}),
                          Matrix::Identity(3, 3));
}

/// sl(2,R) in the standard basis [h,e] = 2e, [h,f] = -2f, [e,f] = h,
/// ordered (e1,e2,e3) = (h,e,f).
inline MetricLieAlgebra sl2r() {
  return MetricLieAlgebra(
      LieAlgebra::from_brackets(3, {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}}),
      Matrix::Identity(3, 3));
}

/// Euclidean motion algebra e(2): [e3,e1] = e2, [e3,e2] = -e1.
inline MetricLieAlgebra e2() {
  return MetricLieAlgebra(LieAlgebra::from_brackets(3, {{2, 0, 1, 1.0}, {2, 1, 0, -1.0}}),
                          Matrix::Identity(3, 3));
}

/// Three-dimensional nonunimodular family in Milnor-frame form:
/// [e1,e2] = a e2 + b e3, [e1,e3] = c e2 + d e3.
inline MetricLieAlgebra milnor(double a, double b, double c, double d) {
  std::vector<BracketEntry> entries;
  if (a != 0) entries.push_back({0, 1, 1, a});
  if (b != 0) entries.push_back({0, 1, 2, b});
  if (c != 0) entries.push_back({0, 2, 1, c});
  if (d != 0) entries.push_back({0, 2, 2, d});
  return MetricLieAlgebra(LieAlgebra::from_brackets(3, entries), Matrix::Identity(3, 3));
}

/// Quaternionic Heisenberg algebra (dim 7): v = span(e1..e4), z = span(e5..e7),
/// brackets given by quaternion multiplication so that j(z)^2 = -|z|^2 Id.
inline MetricLieAlgebra quatheis7() {
  std::vector<BracketEntry> entries = {
      {0, 1, 4, 1.0}, {0, 2, 5, 1.0}, {0, 3, 6, 1.0},
      {1, 2, 6, 1.0}, {1, 3, 5, -1.0}, {2, 3, 4, 1.0},
  };
  return MetricLieAlgebra(LieAlgebra::from_brackets(7, entries), Matrix::Identity(7, 7));
}

struct Entry {
  std::string name;
  std::string description;
  std::function<MetricLieAlgebra()> build;
};

/// The fixed catalog, in the order reports and suites iterate it.
inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"abelian3", "abelian algebra R^3 (pattern: abelianN)", [] { return abelian(3); }},
      {"heis3", "Heisenberg algebra, [e1,e2]=e3", heis3},
      {"heis3xr", "heis3 + central flat line", heis3xr},
      {"heis5", "Heisenberg algebra dim 5, [e1,e2]=[e3,e4]=e5", heis5},
      {"nil4", "filiform algebra, [e1,e2]=e3, [e1,e3]=e4", nil4},
      {"quatheis7", "quaternionic Heisenberg algebra, dim 7", quatheis7},
      {"sol3", "solvable Sol algebra, [e3,e1]=e1, [e3,e2]=-e2", sol3},
      {"e2", "Euclidean motion algebra, [e3,e1]=e2, [e3,e2]=-e1", e2},
      {"sl2r", "sl(2,R), [h,e]=2e, [h,f]=-2f, [e,f]=h", sl2r},
      {"milnor(1,0,0,1)", "nonunimodular hyperbolic-space algebra",
       [] { return milnor(1, 0, 0, 1); }},
      {"milnor(1,0,0,2)", "nonunimodular algebra with distinct weights",
       [] { return milnor(1, 0, 0, 2); }},
  };
  return list;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.name);
  out.push_back("abelianN (any N >= 1)");
  out.push_back("milnor(a,b,c,d)");
  return out;
}

/// Resolves a catalog name, including the abelianN and milnor(a,b,c,d) patterns.
/// Unknown names raise a validation_error listing valid names.
inline MetricLieAlgebra build(const std::string& name) {
  for (const auto& e : entries())
    if (e.name == name) return e.build();
  if (name.rfind("abelian", 0) == 0) {
    int n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 7, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size() && n >= 1 && n <= 64)
      return abelian(n);
  }
  if (name.rfind("milnor(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(7, name.size() - 8);
    for (char& ch : inner)
      if (ch == ',') ch = ' ';
    std::istringstream is(inner);
    double a, b, c, d;
    if (is >> a >> b >> c >> d) {
      std::string rest;
      if (!(is >> rest)) return milnor(a, b, c, d);
    }
  }
  std::string msg = "unknown catalog name '" + name + "'; valid names:";
  for (const auto& n : names()) msg += "\n  " + n;
  throw validation_error(msg);
}

}  // namespace catalog
}  // namespace liesoliton
