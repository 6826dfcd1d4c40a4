#pragma once

#include <memory>
#include <string>
#include <vector>

#include "infharm/expr.hpp"

namespace infharm {

enum class GeometryKind { Euclidean, Heisenberg, Nil, Sol, Custom };

// A coordinate patch with an exact metric and its exact inverse, both stored
// entrywise as exponential polynomials in the coordinates.  Construction
// always verifies symmetry and g * ginv == I, so a MetricSpec in hand is a
// proof that the inverse is right.
struct MetricSpec {
  std::string name;
  GeometryKind kind = GeometryKind::Custom;
  int dim = 0;
  VarTableRef coords;
  std::vector<ExpPoly> g;     // row-major dim x dim
  std::vector<ExpPoly> ginv;  // row-major dim x dim

  const ExpPoly& metric(int i, int j) const { return g[std::size_t(i) * dim + j]; }
  const ExpPoly& inverse(int i, int j) const { return ginv[std::size_t(i) * dim + j]; }
};

using MetricRef = std::shared_ptr<const MetricSpec>;

// Built-in catalogue: "euclidean:<n>" (n >= 1), "heisenberg", "nil", "sol".
// The model geometries carry coordinates (x, y, z); euclidean:<n> uses
// x1..xn.  Their stored inverses are additionally cross-checked against a
// cofactor inversion at construction time.
MetricRef builtin_geometry(const std::string& name);

// Build a metric from its lower triangle (entries[i][j], j <= i), computing
// the inverse by the adjugate.  The determinant must be a single term that
// divides every adjugate entry inside the class, else NonInvertibleInClass.
// Dimension is capped at 4.
MetricRef register_metric(const std::string& name, const std::vector<std::string>& coords,
                          const std::vector<std::vector<ExpPoly>>& lower_triangle);

// Structured text file: "name <id>", "coords <c1> <c2> ...", then one
// "g <i> <j> <expression>" line per lower-triangle entry (1-based indices).
// Blank lines and lines starting with '#' are ignored.
MetricRef load_metric_file(const std::string& path);

// Exact adjugate/determinant inverse used by register_metric; exposed for
// cross-checking the built-in catalogue.
std::vector<ExpPoly> cofactor_inverse(const std::vector<ExpPoly>& g, int dim);

}  // namespace infharm
