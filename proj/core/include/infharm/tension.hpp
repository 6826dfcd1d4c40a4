#pragma once

#include <span>
#include <vector>

#include "infharm/polymap.hpp"

namespace infharm {

// Everything the infinity-Laplacian criterion needs about one map, computed
// exactly.  tau[i] is the pairing of grad(phi^i) with grad of the energy
// density (no 1/2 factor); the map is infinity-harmonic iff every component
// vanishes identically.
struct TensionReport {
  ExpPoly energy;                        // |dphi|^2
  std::vector<ExpPoly> energy_gradient;  // contravariant components of grad |dphi|^2
  std::vector<ExpPoly> tau;              // one entry per target coordinate
  bool harmonic = false;                 // all tau[i].is_zero()
  bool constant_energy = false;          // all partials of energy vanish
};

// Contravariant gradient of a scalar on M: (grad f)^a = g^{ab} d_b f.
std::vector<ExpPoly> metric_gradient(const ExpPoly& f, const MetricSpec& M);

// |dphi|^2 = g^{ab} phi^i_a phi^j_b (h_ij o phi), exact.
ExpPoly energy_density(const PolyMap& phi);

// (phi^* h)_{ab} = phi^i_a phi^j_b (h_ij o phi), row-major domain-dim square.
std::vector<ExpPoly> pullback_metric(const PolyMap& phi);

TensionReport tau_infinity(const PolyMap& phi);

// Same quantity through the metric pairing g(grad phi^i, grad |dphi|^2).
// Algebraically identical to TensionReport::tau; kept as an independent
// route so the two derivations can be checked against each other.
std::vector<ExpPoly> tau_metric_pairing(const PolyMap& phi);

// phi^* h == g entrywise.
bool is_isometry(const PolyMap& phi);

// Numeric residual at a point: the energy is contracted from evaluated
// metric entries and the evaluated Jacobian, its gradient is taken by
// central differences with step h, and the contraction with dphi is numeric.
// Shares nothing with tau_infinity's energy or gradient derivation; the only
// symbolic operation is differentiating the given component polynomials.
std::vector<double> numeric_residual(const PolyMap& phi, std::span<const double> point,
                                     double h = 1e-5);

// tau_infinity of outer o inner.
TensionReport check_composition(const PolyMap& outer, const PolyMap& inner);

}  // namespace infharm
