#pragma once

#include <vector>

#include "infharm/geometry.hpp"
#include "infharm/rat_matrix.hpp"

namespace infharm {

// Map between two metric spaces whose components are polynomials in the
// domain coordinates.  Linear maps (every component homogeneous of degree
// <= 1 with zero constant term) additionally carry their coefficient matrix.
struct PolyMap {
  MetricRef domain;
  MetricRef target;
  std::vector<ExpPoly> components;  // target->dim entries over domain coords
  bool linear = false;
  RatMatrix matrix;  // target->dim x domain->dim, valid iff linear

  static PolyMap from_matrix(MetricRef domain, MetricRef target, const RatMatrix& m);
  static PolyMap from_components(MetricRef domain, MetricRef target,
                                 std::vector<ExpPoly> components);
};

// Composition outer(inner(x)); inner.target must match outer.domain in
// dimension and coordinate names.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

}  // namespace infharm
