#include "infharm/polymap.hpp"

namespace infharm {

namespace {

void detect_linear(PolyMap& map) {
  const int n = map.target->dim;
  const int m = map.domain->dim;
  RatMatrix mat(n, m);
  for (int i = 0; i < n; ++i) {
    auto lin = map.components[i].linear_form();
    if (!lin) {
      map.linear = false;
      map.matrix = RatMatrix{};
      return;
    }
    for (int j = 0; j < m; ++j) mat.at(i, j) = (*lin)[j];
  }
  map.linear = true;
  map.matrix = std::move(mat);
}

}  // namespace

PolyMap PolyMap::from_matrix(MetricRef domain, MetricRef target, const RatMatrix& m) {
  if (m.rows != target->dim || m.cols != domain->dim)
    throw DimensionMismatch("matrix shape must be target-dim x domain-dim (" +
                            std::to_string(target->dim) + "x" + std::to_string(domain->dim) +
                            "), got " + std::to_string(m.rows) + "x" + std::to_string(m.cols));
  PolyMap map;
  map.domain = std::move(domain);
  map.target = std::move(target);
  map.components.reserve(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    ExpPoly c = ExpPoly::zero(map.domain->coords);
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0)
        c += ExpPoly::variable(map.domain->coords, j).scaled(m.at(i, j));
    map.components.push_back(std::move(c));
  }
  map.linear = true;
  map.matrix = m;
  return map;
}

PolyMap PolyMap::from_components(MetricRef domain, MetricRef target,
                                 std::vector<ExpPoly> components) {
  if (int(components.size()) != target->dim)
    throw DimensionMismatch("component count must equal the target dimension");
  for (const auto& c : components) {
    if (!same_vars(c.vars(), domain->coords))
      throw DimensionMismatch("component lives over the wrong coordinates");
    if (!c.is_polynomial())
      throw Error("map components must be polynomials in the domain coordinates");
  }
  PolyMap map;
  map.domain = std::move(domain);
  map.target = std::move(target);
  map.components = std::move(components);
  detect_linear(map);
  return map;
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (!same_vars(inner.target->coords, outer.domain->coords) ||
      inner.target->dim != outer.domain->dim)
    throw DimensionMismatch("inner map's target does not match outer map's domain");
  std::vector<ExpPoly> comps;
  comps.reserve(outer.components.size());
  for (const auto& c : outer.components)
    comps.push_back(c.substituted(inner.domain->coords, inner.components));
  return PolyMap::from_components(inner.domain, outer.target, std::move(comps));
}

}  // namespace infharm
