// Acceptance suite: one self-contained check per numbered criterion.
//
//   acceptance                 runs every criterion
//   acceptance --criterion N   runs criterion N alone (ctest entry point)
//
// Each criterion prints exactly one [PASS]/[FAIL] line (plus indented
// explanatory notes on failure) and the process exits nonzero if any
// selected criterion failed.  Failures are reported with the concrete
// counterexample; nothing is suppressed or weakened.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "infharm/classify.hpp"
#include "infharm/geometry.hpp"
#include "infharm/matrix_io.hpp"
#include "infharm/parser.hpp"
#include "infharm/polymap.hpp"
#include "infharm/tension.hpp"

using namespace infharm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void note(const std::string& text) { notes.push_back(text); }
};

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

ExpPoly coord(const MetricRef& g, std::size_t k) { return ExpPoly::variable(g->coords, k); }

PolyMap heis_to_nil_shear() {
  const MetricRef heis = builtin_geometry("heisenberg");
  const MetricRef nil = builtin_geometry("nil");
  const ExpPoly x = coord(heis, 0), y = coord(heis, 1), z = coord(heis, 2);
  return PolyMap::from_components(heis, nil, {x, y, z + (x * y).scaled(Rational(1, 2))});
}

struct Pair {
  std::string domain, target;
};

const std::vector<Pair> kClassifiedPairs = {
    {"heisenberg", "euclidean:2"}, {"euclidean:2", "heisenberg"}, {"nil", "sol"},
    {"sol", "nil"},                {"sol", "sol"},
};

// --------------------------------------------------------------------------
// 1. The three model metrics multiply with their stored inverses to the
//    identity, as exact expression identities.
// --------------------------------------------------------------------------
Outcome criterion1() {
  Outcome out;
  const auto start = Clock::now();
  for (const std::string& name : {"heisenberg", "nil", "sol"}) {
    const MetricRef g = builtin_geometry(name);
    const ExpPoly one = ExpPoly::constant(g->coords, Rational(1));
    const ExpPoly zero = ExpPoly::zero(g->coords);
    for (int i = 0; i < g->dim; ++i)
      for (int j = 0; j < g->dim; ++j) {
        ExpPoly sum = zero;
        for (int k = 0; k < g->dim; ++k) sum += g->metric(i, k) * g->inverse(k, j);
        out.require(sum == (i == j ? one : zero),
                    name + ": (g*ginv)[" + std::to_string(i) + "][" + std::to_string(j) +
                        "] = " + sum.str());
      }
  }
  out.require(ms_since(start) < 1000, "runtime bound of 1 s exceeded");
  return out;
}

// --------------------------------------------------------------------------
// 2. Equal-rows matrices (row i = (i,i,i)) from the heisenberg space into the
//    flat n-space have energy (1/4)S(x^2+y^2) + S(x-y) + 3S with
//    S = n(n+1)(2n+1)/6, for n = 1..5.
// --------------------------------------------------------------------------
Outcome criterion2() {
  Outcome out;
  const auto start = Clock::now();
  const MetricRef heis = builtin_geometry("heisenberg");
  const ExpPoly x = coord(heis, 0), y = coord(heis, 1);
  for (int n = 1; n <= 5; ++n) {
    RatMatrix m(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = Rational(i + 1);
    const Rational S(n * (n + 1) * (2 * n + 1), 6);
    const ExpPoly expected = (x * x + y * y).scaled(S / 4) + (x - y).scaled(S) +
                             ExpPoly::constant(heis->coords, 3 * S);
    const MetricRef target = builtin_geometry("euclidean:" + std::to_string(n));
    const ExpPoly energy = energy_density(PolyMap::from_matrix(heis, target, m));
    out.require(energy == expected, "n = " + std::to_string(n) + ": energy " + energy.str() +
                                        " differs from " + expected.str());
  }
  out.require(ms_since(start) < 1000, "runtime bound of 1 s exceeded");
  return out;
}

// --------------------------------------------------------------------------
// 3. The quadratic shear (x, y, z + xy/2) into the nil space pulls the target
//    metric back to the heisenberg metric, entry by entry.
// --------------------------------------------------------------------------
Outcome criterion3() {
  Outcome out;
  const auto start = Clock::now();
  const PolyMap sigma = heis_to_nil_shear();
  const std::vector<ExpPoly> pulled = pullback_metric(sigma);
  const MetricSpec& heis = *sigma.domain;
  for (int i = 0; i < heis.dim; ++i)
    for (int j = 0; j < heis.dim; ++j)
      out.require(pulled[std::size_t(i) * heis.dim + j] == heis.metric(i, j),
                  "pullback[" + std::to_string(i) + "][" + std::to_string(j) +
                      "] = " + pulled[std::size_t(i) * heis.dim + j].str());
  out.require(is_isometry(sigma), "is_isometry returned false for the shear");
  out.require(ms_since(start) < 1000, "runtime bound of 1 s exceeded");
  return out;
}

// --------------------------------------------------------------------------
// 4. Compositions of a first-column-zero linear map into the flat n-space
//    (n = 2, 3) with the shear of criterion 3 are claimed harmonic with
//    constant energy.  Harmonicity holds exactly; the constant-energy half
//    is refuted by the computed energy, which keeps a genuine x^2 term for
//    every degree-2 member of the shape.  The check is kept faithful to the
//    claim, so it fails and prints the counterexample energies.
// --------------------------------------------------------------------------
Outcome criterion4() {
  Outcome out;
  const auto start = Clock::now();
  const MetricRef nil = builtin_geometry("nil");
  const PolyMap sigma = heis_to_nil_shear();
  const std::vector<RatMatrix> outers = {
      RatMatrix::from_rows({{0, 1, 1}, {0, 2, 1}}),
      RatMatrix::from_rows({{0, 1, 1}, {0, 2, 1}, {0, 1, -1}}),
  };
  for (const RatMatrix& b : outers) {
    const MetricRef target = builtin_geometry("euclidean:" + std::to_string(b.rows));
    const TensionReport rep = check_composition(PolyMap::from_matrix(nil, target, b), sigma);
    const std::string label = "n = " + std::to_string(b.rows);
    out.require(rep.harmonic, label + ": composition is not harmonic");
    out.require(rep.constant_energy,
                label + ": energy " + rep.energy.str() + " is not constant");
  }
  out.require(ms_since(start) < 1000, "runtime bound of 1 s exceeded");
  return out;
}

// --------------------------------------------------------------------------
// 5. Exhaustive {-1,0,1} grids on all five classified pairs: the harmonic
//    matrices are exactly the catalogue members, with zero mismatches, each
//    run under 60 s.
// --------------------------------------------------------------------------
Outcome criterion5() {
  Outcome out;
  const std::vector<Rational> values = {Rational(-1), Rational(0), Rational(1)};
  for (const Pair& p : kClassifiedPairs) {
    const auto start = Clock::now();
    const EquivalenceReport rep =
        enumerate_equivalence(*builtin_geometry(p.domain), *builtin_geometry(p.target), values);
    const long elapsed = ms_since(start);
    const std::string label = p.domain + " -> " + p.target;
    out.require(rep.consistent(), label + ": " + std::to_string(rep.mismatches.size()) +
                                      " mismatches, first: " +
                                      (rep.mismatches.empty() ? std::string("-")
                                                              : rep.mismatches[0].matrix.str()));
    out.require(elapsed < 60000, label + ": took " + std::to_string(elapsed) + " ms (>= 60 s)");
    out.note(label + ": " + std::to_string(rep.total) + " matrices, " +
             std::to_string(rep.harmonic_count) + " harmonic = " +
             std::to_string(rep.classified_count) + " classified, " +
             std::to_string(elapsed) + " ms");
  }
  return out;
}

// --------------------------------------------------------------------------
// 6. 200 random members per catalogue family (entries in {-3..3}) pass the
//    membership predicate and are exactly harmonic; plus two fixed witnesses
//    of the third-coordinate-scaling and antidiagonal shapes.
// --------------------------------------------------------------------------
Outcome criterion6() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(2026);
  int family_count = 0;
  for (const Pair& p : kClassifiedPairs) {
    const MetricRef dom = builtin_geometry(p.domain);
    const MetricRef tgt = builtin_geometry(p.target);
    for (const FamilyLabel& fam : families(*dom, *tgt)) {
      ++family_count;
      for (int trial = 0; trial < 200; ++trial) {
        const RatMatrix m = fam.sample(rng);
        if (!fam.member(m)) {
          out.fail(fam.id + ": sampled matrix " + m.str() + " fails its own membership test");
          break;
        }
        if (!tau_infinity(PolyMap::from_matrix(dom, tgt, m)).harmonic) {
          out.fail(fam.id + ": sampled member " + m.str() + " is not harmonic");
          break;
        }
      }
    }
  }
  const MetricRef sol = builtin_geometry("sol");
  const RatMatrix scale3 = RatMatrix::diag({Rational(0), Rational(0), Rational(2)});
  const RatMatrix anti =
      RatMatrix::from_rows({{0, 2, 0}, {-3, 0, 0}, {0, 0, -1}});
  for (const auto& [m, id] :
       {std::pair{scale3, std::string("sol-a33-only")},
        std::pair{anti, std::string("sol-antidiag-a33-minus-one")}}) {
    const std::vector<std::string> ids = classify_matrix(m, *sol, *sol);
    const bool found = std::find(ids.begin(), ids.end(), id) != ids.end();
    out.require(found, m.str() + " is not classified as " + id);
    out.require(tau_infinity(PolyMap::from_matrix(sol, sol, m)).harmonic,
                m.str() + " is not harmonic");
  }
  out.note(std::to_string(family_count) + " families sampled, 200 members each");
  out.require(ms_since(start) < 10000, "runtime bound of 10 s exceeded");
  return out;
}

// --------------------------------------------------------------------------
// 7. Maximal rank among harmonic grid matrices: 2 for heisenberg -> flat 3-
//    space, flat 3-space -> heisenberg, nil -> sol, and sol -> nil; 3 for
//    sol -> sol.
// --------------------------------------------------------------------------
Outcome criterion7() {
  Outcome out;
  const std::vector<Rational> values = {Rational(-1), Rational(0), Rational(1)};
  const std::vector<std::pair<Pair, int>> expectations = {
      {{"heisenberg", "euclidean:3"}, 2}, {{"euclidean:3", "heisenberg"}, 2},
      {{"nil", "sol"}, 2},                {{"sol", "nil"}, 2},
      {{"sol", "sol"}, 3},
  };
  for (const auto& [p, expected] : expectations) {
    const int got =
        rank_audit(*builtin_geometry(p.domain), *builtin_geometry(p.target), values);
    out.require(got == expected, p.domain + " -> " + p.target + ": max rank " +
                                     std::to_string(got) + ", expected " +
                                     std::to_string(expected));
    out.note(p.domain + " -> " + p.target + ": max harmonic rank " + std::to_string(got));
  }
  return out;
}

// --------------------------------------------------------------------------
// 8. Energy-constancy survey.  (a) claims every rank-2 harmonic sol -> sol
//    grid matrix has non-constant energy; the grid refutes this with eight
//    diagonal/antidiagonal members of constant energy a^2 + b^2 + 1, listed
//    below, so the check fails honestly.  (b) the same claim for sol -> nil
//    holds.  (c) diag(2,3,1) has rank 3, constant energy 14, and is not an
//    isometry.
// --------------------------------------------------------------------------
Outcome criterion8() {
  Outcome out;
  const std::vector<Rational> values = {Rational(-1), Rational(0), Rational(1)};
  const MetricRef sol = builtin_geometry("sol");
  const MetricRef nil = builtin_geometry("nil");

  const EnergyAudit ss = energy_constancy_audit(*sol, *sol, values);
  if (!ss.rank2_constant_examples.empty()) {
    out.fail("sol -> sol: " + std::to_string(ss.rank2_constant_examples.size()) +
             " rank-2 harmonic grid matrices have constant energy:");
    for (const RatMatrix& m : ss.rank2_constant_examples) {
      const auto c = energy_density(PolyMap::from_matrix(sol, sol, m)).as_constant();
      out.note("  " + m.str() + "  (energy " + (c ? c->str() : std::string("?")) + ")");
    }
  }

  const EnergyAudit sn = energy_constancy_audit(*sol, *nil, values);
  out.require(sn.rank2_constant_examples.empty(),
              "sol -> nil: unexpected rank-2 constant-energy matrices");
  out.note("sol -> nil: every rank-2 harmonic grid matrix has non-constant energy");

  const RatMatrix witness = RatMatrix::diag({Rational(2), Rational(3), Rational(1)});
  const PolyMap phi = PolyMap::from_matrix(sol, sol, witness);
  const TensionReport rep = tau_infinity(phi);
  out.require(witness.rank() == 3, "diag(2,3,1) rank is not 3");
  out.require(rep.harmonic, "diag(2,3,1) is not harmonic");
  out.require(rep.energy.as_constant() == Rational(14),
              "diag(2,3,1) energy is " + rep.energy.str() + ", expected 14");
  out.require(!is_isometry(phi), "diag(2,3,1) is wrongly reported as an isometry");
  out.note("diag(2,3,1): rank 3, constant energy 14, not an isometry");
  return out;
}

// --------------------------------------------------------------------------
// 9. The diag(l, m, 1) matrices with l*m != 0 form a subgroup of the
//    harmonic sol -> sol maps: 100 random products and inverses stay members
//    and stay harmonic, exactly.
// --------------------------------------------------------------------------
Outcome criterion9() {
  Outcome out;
  std::mt19937_64 rng(97);
  const MetricRef sol = builtin_geometry("sol");
  auto nonzero_rational = [&rng]() {
    Rational r;
    do {
      r = testutil::random_rational(rng, 9, 9);
    } while (r == 0);
    return r;
  };
  auto member_and_harmonic = [&](const RatMatrix& m, const std::string& what) {
    out.require(sol_subgroup_member(m), what + " " + m.str() + " left the subgroup");
    out.require(tau_infinity(PolyMap::from_matrix(sol, sol, m)).harmonic,
                what + " " + m.str() + " is not harmonic");
  };
  for (int trial = 0; trial < 100; ++trial) {
    const RatMatrix a = RatMatrix::diag({nonzero_rational(), nonzero_rational(), Rational(1)});
    const RatMatrix b = RatMatrix::diag({nonzero_rational(), nonzero_rational(), Rational(1)});
    member_and_harmonic(a * b, "product");
    member_and_harmonic(a.inverse(), "inverse");
  }
  return out;
}

// --------------------------------------------------------------------------
// 10. The numeric finite-difference residual agrees with the evaluated
//     symbolic tension: 50 random matrices across the five pairs, 10 random
//     points each in [-2,2]^dim, relative error (guarded at 1) below 1e-6.
// --------------------------------------------------------------------------
Outcome criterion10() {
  Outcome out;
  std::mt19937_64 rng(4242);
  double worst = 0.0;
  for (const Pair& p : kClassifiedPairs) {
    const MetricRef dom = builtin_geometry(p.domain);
    const MetricRef tgt = builtin_geometry(p.target);
    for (int trial = 0; trial < 10; ++trial) {
      RatMatrix m(tgt->dim, dom->dim);
      for (auto& e : m.a) e = testutil::random_rational(rng, 3, 2);
      const PolyMap phi = PolyMap::from_matrix(dom, tgt, m);
      const TensionReport rep = tau_infinity(phi);
      for (int pt = 0; pt < 10; ++pt) {
        const std::vector<double> point = testutil::random_point(rng, dom->dim, -2.0, 2.0);
        const std::vector<double> numeric = numeric_residual(phi, point);
        for (int i = 0; i < tgt->dim; ++i) {
          const double symbolic = rep.tau[std::size_t(i)].evaluate(point);
          const double rel =
              std::abs(numeric[std::size_t(i)] - symbolic) / std::max(1.0, std::abs(symbolic));
          worst = std::max(worst, rel);
          if (rel > 1e-6)
            out.fail(p.domain + " -> " + p.target + " " + m.str() + ": component " +
                     std::to_string(i) + " numeric " + std::to_string(numeric[std::size_t(i)]) +
                     " vs symbolic " + std::to_string(symbolic));
        }
      }
    }
  }
  std::ostringstream o;
  o << "worst relative deviation " << worst;
  out.note(o.str());
  return out;
}

// --------------------------------------------------------------------------
// 11. Kernel property suite, 200 randomized cases each: ring axioms, the
//     derivation rule of partial differentiation, substitution as a ring
//     homomorphism, and the parse/render round trip.  All equalities exact.
// --------------------------------------------------------------------------
Outcome criterion11() {
  Outcome out;
  std::mt19937_64 rng(31337);
  const VarTableRef vars = make_vars({"x", "y", "z"});
  const ExpPoly one = ExpPoly::constant(vars, Rational(1));
  const ExpPoly zero = ExpPoly::zero(vars);

  for (int trial = 0; trial < 200 && out.pass; ++trial) {
    const ExpPoly a = testutil::random_expoly(vars, rng);
    const ExpPoly b = testutil::random_expoly(vars, rng);
    const ExpPoly c = testutil::random_expoly(vars, rng);
    out.require((a + b) + c == a + (b + c), "addition is not associative");
    out.require(a + b == b + a, "addition is not commutative");
    out.require((a * b) * c == a * (b * c), "multiplication is not associative");
    out.require(a * b == b * a, "multiplication is not commutative");
    out.require(a * (b + c) == a * b + a * c, "multiplication does not distribute");
    out.require(a + zero == a && a * one == a && a - a == zero, "identity laws fail");
  }

  for (int trial = 0; trial < 200 && out.pass; ++trial) {
    const ExpPoly a = testutil::random_expoly(vars, rng);
    const ExpPoly b = testutil::random_expoly(vars, rng);
    for (std::size_t k = 0; k < 3; ++k)
      out.require((a * b).derivative(k) == a.derivative(k) * b + a * b.derivative(k),
                  "derivation rule fails in coordinate " + std::to_string(k));
  }

  const VarTableRef uvw = make_vars({"u", "v", "w"});
  for (int trial = 0; trial < 200 && out.pass; ++trial) {
    std::vector<ExpPoly> assigns;
    for (int k = 0; k < 3; ++k) {
      ExpPoly linear = ExpPoly::zero(uvw);
      for (std::size_t j = 0; j < 3; ++j)
        linear += ExpPoly::variable(uvw, j).scaled(testutil::random_rational(rng, 2, 2));
      assigns.push_back(linear);
    }
    const ExpPoly a = testutil::random_expoly(vars, rng);
    const ExpPoly b = testutil::random_expoly(vars, rng);
    out.require((a + b).substituted(uvw, assigns) ==
                    a.substituted(uvw, assigns) + b.substituted(uvw, assigns),
                "substitution does not respect addition");
    out.require((a * b).substituted(uvw, assigns) ==
                    a.substituted(uvw, assigns) * b.substituted(uvw, assigns),
                "substitution does not respect multiplication");
  }

  for (int trial = 0; trial < 200 && out.pass; ++trial) {
    const ExpPoly a = testutil::random_expoly(vars, rng, 6);
    out.require(parse(a.str(), vars) == a, "round trip changed " + a.str());
  }
  return out;
}

struct Entry {
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Entry> kCriteria = {
    {"exact inverse identities g*ginv = I for heisenberg, nil, sol", criterion1},
    {"closed-form energy of the equal-rows maps into flat targets (n = 1..5)", criterion2},
    {"the quadratic shear into nil pulls the metric back to the heisenberg metric", criterion3},
    {"composed quadratic maps into flat targets: harmonic with constant energy", criterion4},
    {"grid enumeration matches the classification catalogue on all five pairs", criterion5},
    {"random catalogue-family members are members and exactly harmonic", criterion6},
    {"maximal harmonic rank over the {-1,0,1} grids", criterion7},
    {"energy constancy of rank-2 harmonic grid maps; the rank-3 diagonal witness", criterion8},
    {"diag(l,m,1) subgroup closed under products and inverses, staying harmonic", criterion9},
    {"numeric residual oracle agrees with the evaluated symbolic tension", criterion10},
    {"kernel ring axioms, derivation rule, substitution homomorphism, parse round trip",
     criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;  // 0 = all
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (selected < 0 || selected > int(kCriteria.size())) {
    std::fprintf(stderr, "no criterion %d (have 1..%zu)\n", selected, kCriteria.size());
    return 2;
  }

  bool all_pass = true;
  for (int n = 1; n <= int(kCriteria.size()); ++n) {
    if (selected != 0 && n != selected) continue;
    const Entry& entry = kCriteria[std::size_t(n - 1)];
    const auto start = Clock::now();
    const Outcome out = entry.run();
    const long elapsed = ms_since(start);
    std::printf("[%s] criterion %d: %s [%ld ms]\n", out.pass ? "PASS" : "FAIL", n,
                entry.title.c_str(), elapsed);
    for (const std::string& note : out.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
