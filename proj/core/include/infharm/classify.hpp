#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "infharm/tension.hpp"

namespace infharm {

// One solution family of the classification catalogue for a geometry pair:
// a named shape of coefficient matrices, an exact membership predicate, and
// a sampler producing random members with small integer free entries.
struct FamilyLabel {
  std::string id;
  std::string description;
  std::function<bool(const RatMatrix&)> member;
  std::function<RatMatrix(std::mt19937_64&)> sample;
};

// Catalogue for the five classified pairs:
//   heisenberg -> euclidean:n, euclidean:m -> heisenberg,
//   nil -> sol, sol -> nil, sol -> sol.
// Throws UnclassifiedPair for anything else.
std::vector<FamilyLabel> families(const MetricSpec& domain, const MetricSpec& target);

// Sorted ids of the families containing the matrix (set semantics: a matrix
// may lie in several families, e.g. the zero sol -> sol matrix lies in four
// of the six — every family whose shape does not pin an entry to +-1).
std::vector<std::string> classify_matrix(const RatMatrix& m, const MetricSpec& domain,
                                         const MetricSpec& target);

// ---------------------------------------------------------------------------
// Symbolic coefficient extraction.
//
// The tension components of a linear map with symbolic entries a_ij are
// exponential polynomials in the domain coordinates plus, for targets whose
// metric depends on a coordinate, the composed image coordinate (a formal
// variable whose chain-rule partials are the matching matrix row).  Setting
// the coefficient of every (frequency, monomial) basis element to zero gives
// the generic-case polynomial system in the entries.  Degenerate entry values
// can merge distinct frequencies; those cases are handled exactly by the
// per-matrix tension computation, never by this extraction.
// ---------------------------------------------------------------------------

struct SymbolicTension {
  VarTableRef ring;           // domain coords + formal image coords + entries
  VarTableRef geo_vars;       // prefix: domain coords + formal image coords
  VarTableRef entry_vars;     // suffix: a11 .. a<n><m>, row-major
  int rows = 0, cols = 0;     // entry matrix shape (n x m)
  ExpPoly energy;             // symbolic |dphi|^2 over `ring`
  std::vector<ExpPoly> tau;   // symbolic residual components over `ring`
};

SymbolicTension symbolic_tension(const MetricSpec& domain, const MetricSpec& target);

struct CoeffEquation {
  int component = 0;   // which tau component the equation came from
  Frequency freq;      // basis frequency over geo_vars
  Monomial mono;       // basis monomial over geo_vars
  ExpPoly poly;        // polynomial in the entries; vanishing required
};

struct CoefficientSystem {
  VarTableRef geo_vars;
  VarTableRef entry_vars;
  std::vector<CoeffEquation> equations;
  std::vector<std::pair<Frequency, Monomial>> basis;  // sorted, deduplicated

  // Human-readable "x^2*exp(2*zp)"-style name of a basis element.
  std::string basis_str(const Frequency& f, const Monomial& m) const;
};

// Generic-case system for a classified pair; throws UnclassifiedPair else.
CoefficientSystem coefficient_system(const MetricSpec& domain, const MetricSpec& target);

// ---------------------------------------------------------------------------
// Grid enumeration: brute-force cross-validation of the catalogue.
// ---------------------------------------------------------------------------

struct EquivalenceReport {
  std::string domain, target;
  std::vector<Rational> values;
  int rows = 0, cols = 0;
  std::uint64_t total = 0;
  std::uint64_t harmonic_count = 0;
  std::uint64_t classified_count = 0;
  struct Mismatch {
    RatMatrix matrix;
    bool harmonic = false;
    bool classified = false;
  };
  std::vector<Mismatch> mismatches;  // first-class output, never suppressed

  bool consistent() const { return mismatches.empty(); }
  std::string to_text() const;
};

// Every matrix with entries from `values` (shape target.dim x domain.dim) is
// tested exactly for harmonicity and for catalogue membership; any
// disagreement is reported verbatim.  Grids above 10^6 matrices are refused
// (GridTooLarge).  threads <= 0 means: INFHARM_THREADS if set, otherwise the
// hardware concurrency.
EquivalenceReport enumerate_equivalence(const MetricSpec& domain, const MetricSpec& target,
                                        const std::vector<Rational>& values, int threads = 0);

// Largest rank among the harmonic matrices of the grid.
int rank_audit(const MetricSpec& domain, const MetricSpec& target,
               const std::vector<Rational>& values, int threads = 0);

struct EnergyAudit {
  std::uint64_t total = 0;
  std::uint64_t harmonic_count = 0;
  int max_rank = 0;
  std::map<int, std::uint64_t> rank_counts;            // harmonic only
  std::map<int, std::uint64_t> constant_rank_counts;   // harmonic with constant energy
  std::vector<RatMatrix> rank2_constant_examples;
  std::vector<RatMatrix> rank3_constant_nonisometry_examples;
  std::string to_text() const;
};

// Rank and energy-constancy survey of the harmonic grid matrices.
EnergyAudit energy_constancy_audit(const MetricSpec& domain, const MetricSpec& target,
                                   const std::vector<Rational>& values, int threads = 0);

// diag(l, m, 1) with l*m != 0: the subgroup of sol -> sol forms closed under
// composition and inverse.
bool sol_subgroup_member(const RatMatrix& m);

}  // namespace infharm
