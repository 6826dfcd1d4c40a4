#include "infharm/classify.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace infharm {

// ---------------------------------------------------------------------------
// Family catalogue
// ---------------------------------------------------------------------------

namespace {

int uniform_entry(std::mt19937_64& rng) {
  return int(rng() % 7) - 3;  // {-3..3}
}

int uniform_sign(std::mt19937_64& rng) {
  return int(rng() % 3) - 1;  // {-1, 0, 1}
}

// Fixed-shape family over 3x3 matrices: '0' forced zero, '1' forced one,
// 'm' forced minus one, '*' free.
FamilyLabel pattern_family(std::string id, std::string description,
                           std::array<std::array<char, 3>, 3> pat) {
  FamilyLabel fam;
  fam.id = std::move(id);
  fam.description = std::move(description);
  fam.member = [pat](const RatMatrix& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Rational& v = m.at(i, j);
        switch (pat[i][j]) {
          case '0':
            if (v != 0) return false;
            break;
          case '1':
            if (v != 1) return false;
            break;
          case 'm':
            if (v != -1) return false;
            break;
          default:
            break;
        }
      }
    return true;
  };
  fam.sample = [pat](std::mt19937_64& rng) {
    RatMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        switch (pat[i][j]) {
          case '0': m.at(i, j) = 0; break;
          case '1': m.at(i, j) = 1; break;
          case 'm': m.at(i, j) = -1; break;
          default: m.at(i, j) = uniform_entry(rng); break;
        }
      }
    return m;
  };
  return fam;
}

std::vector<Rational> column(const RatMatrix& m, int j) {
  std::vector<Rational> c(m.rows);
  for (int i = 0; i < m.rows; ++i) c[i] = m.at(i, j);
  return c;
}

std::vector<Rational> row(const RatMatrix& m, int i) {
  std::vector<Rational> r(m.cols);
  for (int j = 0; j < m.cols; ++j) r[j] = m.at(i, j);
  return r;
}

std::vector<FamilyLabel> heis_to_euclidean_families(int n) {
  std::vector<FamilyLabel> fams;
  {
    FamilyLabel f;
    f.id = "heis-euc-col3-zero";
    f.description = "third column zero: the map ignores the vertical coordinate";
    f.member = [](const RatMatrix& m) {
      for (int i = 0; i < m.rows; ++i)
        if (m.at(i, 2) != 0) return false;
      return true;
    };
    f.sample = [n](std::mt19937_64& rng) {
      RatMatrix m(n, 3);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = uniform_entry(rng);
      return m;
    };
    fams.push_back(std::move(f));
  }
  {
    FamilyLabel f;
    f.id = "heis-euc-columns-proportional";
    f.description = "all pairs of columns have vanishing 2x2 minors (rank at most one)";
    f.member = [](const RatMatrix& m) {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (!proportional(column(m, a), column(m, b))) return false;
      return true;
    };
    f.sample = [n](std::mt19937_64& rng) {
      RatMatrix m(n, 3);
      std::vector<int> v(n);
      for (auto& e : v) e = uniform_entry(rng);
      for (int j = 0; j < 3; ++j) {
        const int s = uniform_sign(rng);
        for (int i = 0; i < n; ++i) m.at(i, j) = v[i] * s;
      }
      return m;
    };
    fams.push_back(std::move(f));
  }
  return fams;
}

std::vector<FamilyLabel> euclidean_to_heis_families(int m_cols) {
  FamilyLabel f;
  f.id = "euc-heis-rows12-proportional";
  f.description = "first two rows have vanishing 2x2 minors; the vertical row is free";
  f.member = [](const RatMatrix& m) { return proportional(row(m, 0), row(m, 1)); };
  f.sample = [m_cols](std::mt19937_64& rng) {
    RatMatrix m(3, m_cols);
    std::vector<int> w(m_cols);
    for (auto& e : w) e = uniform_entry(rng);
    const int s1 = uniform_sign(rng), s2 = uniform_sign(rng);
    for (int j = 0; j < m_cols; ++j) {
      m.at(0, j) = w[j] * s1;
      m.at(1, j) = w[j] * s2;
      m.at(2, j) = uniform_entry(rng);
    }
    return m;
  };
  return {std::move(f)};
}

std::vector<FamilyLabel> nil_to_sol_families() {
  return {
      pattern_family("nil-sol-block-cols12", "upper 2x2 block in the first two columns",
                     {{{'*', '*', '0'}, {'*', '*', '0'}, {'0', '0', '0'}}}),
      pattern_family("nil-sol-block-cols23", "upper 2x2 block in the last two columns",
                     {{{'0', '*', '*'}, {'0', '*', '*'}, {'0', '0', '0'}}}),
      pattern_family("nil-sol-row3-cols12", "only the third row, first two columns",
                     {{{'0', '0', '0'}, {'0', '0', '0'}, {'*', '*', '0'}}}),
      pattern_family("nil-sol-row3-cols23", "only the third row, last two columns",
                     {{{'0', '0', '0'}, {'0', '0', '0'}, {'0', '*', '*'}}}),
  };
}

std::vector<FamilyLabel> sol_to_nil_families() {
  return {
      pattern_family("sol-nil-rows13-col3", "third column only, middle row zero",
                     {{{'0', '0', '*'}, {'0', '0', '0'}, {'0', '0', '*'}}}),
      pattern_family("sol-nil-rows13-cols12", "first two columns, middle row zero",
                     {{{'*', '*', '0'}, {'0', '0', '0'}, {'*', '*', '0'}}}),
      pattern_family("sol-nil-rows23-col3", "third column only, first row zero",
                     {{{'0', '0', '0'}, {'0', '0', '*'}, {'0', '0', '*'}}}),
      pattern_family("sol-nil-rows23-cols12", "first two columns, first row zero",
                     {{{'0', '0', '0'}, {'*', '*', '0'}, {'*', '*', '0'}}}),
  };
}

std::vector<FamilyLabel> sol_to_sol_families() {
  return {
      pattern_family("sol-a33-only", "scaling of the third coordinate only",
                     {{{'0', '0', '0'}, {'0', '0', '0'}, {'0', '0', '*'}}}),
      pattern_family("sol-antidiag-a33-minus-one",
                     "antidiagonal swap of the first two coordinates with a33 = -1",
                     {{{'0', '*', '0'}, {'*', '0', '0'}, {'0', '0', 'm'}}}),
      pattern_family("sol-block-top-left", "upper-left 2x2 block, third row and column zero",
                     {{{'*', '*', '0'}, {'*', '*', '0'}, {'0', '0', '0'}}}),
      pattern_family("sol-col3-only", "third column feeds the first two coordinates",
                     {{{'0', '0', '*'}, {'0', '0', '*'}, {'0', '0', '0'}}}),
      pattern_family("sol-diag-a33-plus-one",
                     "diagonal scaling of the first two coordinates with a33 = +1",
                     {{{'*', '0', '0'}, {'0', '*', '0'}, {'0', '0', '1'}}}),
      pattern_family("sol-row3-only", "first two coordinates feed the third",
                     {{{'0', '0', '0'}, {'0', '0', '0'}, {'*', '*', '0'}}}),
  };
}

}  // namespace

std::vector<FamilyLabel> families(const MetricSpec& domain, const MetricSpec& target) {
  const auto d = domain.kind, t = target.kind;
  if (d == GeometryKind::Heisenberg && t == GeometryKind::Euclidean)
    return heis_to_euclidean_families(target.dim);
  if (d == GeometryKind::Euclidean && t == GeometryKind::Heisenberg)
    return euclidean_to_heis_families(domain.dim);
  if (d == GeometryKind::Nil && t == GeometryKind::Sol) return nil_to_sol_families();
  if (d == GeometryKind::Sol && t == GeometryKind::Nil) return sol_to_nil_families();
  if (d == GeometryKind::Sol && t == GeometryKind::Sol) return sol_to_sol_families();
  throw UnclassifiedPair("no classification catalogue for " + domain.name + " -> " + target.name);
}

std::vector<std::string> classify_matrix(const RatMatrix& m, const MetricSpec& domain,
                                         const MetricSpec& target) {
  if (m.rows != target.dim || m.cols != domain.dim)
    throw DimensionMismatch("matrix shape must be target-dim x domain-dim");
  std::vector<std::string> ids;
  for (const auto& fam : families(domain, target))
    if (fam.member(m)) ids.push_back(fam.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------
// Symbolic tension with formal entries
// ---------------------------------------------------------------------------

SymbolicTension symbolic_tension(const MetricSpec& domain, const MetricSpec& target) {
  const int m = domain.dim, n = target.dim;
  if (n > 9 || m > 9) throw DimensionMismatch("symbolic entries support dimensions up to 9");

  // Which target coordinates the target metric actually mentions.
  std::vector<int> used;
  for (int k = 0; k < n; ++k) {
    bool found = false;
    for (const auto& entry : target.g) {
      for (const auto& [f, poly] : entry.terms()) {
        if (f.lambda[k] != 0) found = true;
        for (const auto& [mono, c] : poly)
          if (mono.exps[k]) found = true;
      }
      if (found) break;
    }
    if (found) used.push_back(k);
  }
  const int t = int(used.size());

  std::vector<std::string> names(*domain.coords);
  std::vector<std::string> geo_names = names;
  for (int k : used) {
    const std::string formal = (*target.coords)[k] + "p";
    names.push_back(formal);
    geo_names.push_back(formal);
  }
  std::vector<std::string> entry_names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) entry_names.push_back("a" + std::to_string(i) + std::to_string(j));
  names.insert(names.end(), entry_names.begin(), entry_names.end());
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw Error("coordinate name collision in symbolic ring");

  SymbolicTension st;
  st.ring = make_vars(names);
  st.geo_vars = make_vars(geo_names);
  st.entry_vars = make_vars(entry_names);
  st.rows = n;
  st.cols = m;

  auto entry = [&](int i, int j) {
    return ExpPoly::variable(st.ring, std::size_t(m + t) + std::size_t(i) * m + j);
  };

  // Domain coordinates keep their slots; lift the inverse metric.
  std::vector<ExpPoly> dom_assign;
  for (int k = 0; k < m; ++k) dom_assign.push_back(ExpPoly::variable(st.ring, k));
  std::vector<ExpPoly> ginv(std::size_t(m) * m, ExpPoly::zero(st.ring));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      ginv[std::size_t(a) * m + b] = domain.inverse(a, b).substituted(st.ring, dom_assign);

  // Target coordinates become their formal image slots (unused ones cannot
  // occur, any placeholder works).
  std::vector<ExpPoly> tgt_assign(n, ExpPoly::zero(st.ring));
  for (int u = 0; u < t; ++u) tgt_assign[used[u]] = ExpPoly::variable(st.ring, m + u);
  std::vector<ExpPoly> h(std::size_t(n) * n, ExpPoly::zero(st.ring));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h[std::size_t(i) * n + j] = target.metric(i, j).substituted(st.ring, tgt_assign);

  // Energy with symbolic partials phi^i_a = a_ia.
  ExpPoly energy = ExpPoly::zero(st.ring);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ExpPoly& hij = h[std::size_t(i) * n + j];
      if (hij.is_zero()) continue;
      ExpPoly s = ExpPoly::zero(st.ring);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          if (!ginv[std::size_t(a) * m + b].is_zero())
            s += ginv[std::size_t(a) * m + b] * entry(i, a) * entry(j, b);
      energy += hij * s;
    }
  st.energy = energy;

  // Total derivative along x_k: the formal image coordinates move with the
  // matching matrix row.
  auto total_derivative = [&](const ExpPoly& f, int k) {
    ExpPoly d = f.derivative(k);
    for (int u = 0; u < t; ++u) {
      ExpPoly df = f.derivative(std::size_t(m + u));
      if (!df.is_zero()) d += entry(used[u], k) * df;
    }
    return d;
  };

  std::vector<ExpPoly> de;
  for (int k = 0; k < m; ++k) de.push_back(total_derivative(energy, k));
  std::vector<ExpPoly> grad(m, ExpPoly::zero(st.ring));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (!ginv[std::size_t(a) * m + b].is_zero() && !de[b].is_zero())
        grad[a] += ginv[std::size_t(a) * m + b] * de[b];

  for (int i = 0; i < n; ++i) {
    ExpPoly tau = ExpPoly::zero(st.ring);
    for (int a = 0; a < m; ++a)
      if (!grad[a].is_zero()) tau += entry(i, a) * grad[a];
    st.tau.push_back(std::move(tau));
  }
  return st;
}

std::string CoefficientSystem::basis_str(const Frequency& f, const Monomial& m) const {
  return ExpPoly::term(geo_vars, f, m, Rational(1)).str();
}

CoefficientSystem coefficient_system(const MetricSpec& domain, const MetricSpec& target) {
  families(domain, target);  // throws UnclassifiedPair outside the catalogue
  const SymbolicTension st = symbolic_tension(domain, target);
  const int geo_dim = int(st.geo_vars->size());
  const int entry_dim = int(st.entry_vars->size());

  CoefficientSystem sys;
  sys.geo_vars = st.geo_vars;
  sys.entry_vars = st.entry_vars;

  std::map<std::pair<Frequency, Monomial>,
           std::map<int, ExpPoly>,
           bool (*)(const std::pair<Frequency, Monomial>&, const std::pair<Frequency, Monomial>&)>
      grouped([](const std::pair<Frequency, Monomial>& a, const std::pair<Frequency, Monomial>& b) {
        FrequencyLex fl;
        if (fl(a.first, b.first)) return true;
        if (fl(b.first, a.first)) return false;
        return MonomialGrlex{}(a.second, b.second);
      });

  for (int i = 0; i < int(st.tau.size()); ++i) {
    for (const auto& [f, poly] : st.tau[i].terms()) {
      Frequency geo_f(geo_dim);
      for (int k = 0; k < geo_dim; ++k) geo_f.lambda[k] = f.lambda[k];
      for (std::size_t k = geo_dim; k < f.lambda.size(); ++k)
        if (f.lambda[k] != 0) throw Error("entry variable escaped into a frequency");
      for (const auto& [mono, c] : poly) {
        Monomial geo_m(geo_dim), entry_m(entry_dim);
        for (int k = 0; k < geo_dim; ++k) geo_m.exps[k] = mono.exps[k];
        for (int k = 0; k < entry_dim; ++k) entry_m.exps[k] = mono.exps[geo_dim + k];
        auto& comp_map = grouped[{geo_f, geo_m}];
        auto it = comp_map.find(i);
        if (it == comp_map.end())
          it = comp_map.emplace(i, ExpPoly::zero(st.entry_vars)).first;
        it->second += ExpPoly::term(st.entry_vars, Frequency(entry_dim), entry_m, c);
      }
    }
  }

  for (const auto& [key, comp_map] : grouped) {
    sys.basis.push_back(key);
    for (const auto& [i, poly] : comp_map) {
      if (poly.is_zero()) continue;
      CoeffEquation eq;
      eq.component = i;
      eq.freq = key.first;
      eq.mono = key.second;
      eq.poly = poly;
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Grid enumeration
// ---------------------------------------------------------------------------

namespace {

int resolve_threads(int threads, std::uint64_t total) {
  if (threads <= 0) {
    if (const char* env = std::getenv("INFHARM_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) threads = v;
    }
  }
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  if (std::uint64_t(threads) > total) threads = int(total);
  return std::max(threads, 1);
}

struct ScanRow {
  bool harmonic = false;
  bool member = false;
  std::int8_t rank = -1;          // harmonic rows only
  bool constant_energy = false;   // harmonic rows only
  bool isometry = false;          // harmonic rows only
};

RatMatrix decode(std::uint64_t idx, int rows, int cols, const std::vector<Rational>& values) {
  RatMatrix m(rows, cols);
  const std::uint64_t v = values.size();
  for (int k = rows * cols - 1; k >= 0; --k) {
    m.a[k] = values[idx % v];
    idx /= v;
  }
  return m;
}

std::vector<ScanRow> grid_scan(const MetricSpec& domain, const MetricSpec& target,
                               const std::vector<Rational>& values, int threads,
                               const MetricRef& domain_ref, const MetricRef& target_ref,
                               bool want_isometry) {
  if (values.empty()) throw GridTooLarge("empty value list");
  const int rows = target.dim, cols = domain.dim;
  std::uint64_t total = 1;
  for (int k = 0; k < rows * cols; ++k) {
    total *= values.size();
    if (total > 1000000) throw GridTooLarge("grid exceeds 10^6 matrices");
  }

  const auto fams = families(domain, target);
  std::vector<ScanRow> out(total);
  const int nthreads = resolve_threads(threads, total);

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      const RatMatrix mat = decode(idx, rows, cols, values);
      ScanRow& r = out[idx];
      for (const auto& fam : fams)
        if (fam.member(mat)) {
          r.member = true;
          break;
        }
      const PolyMap phi = PolyMap::from_matrix(domain_ref, target_ref, mat);
      const TensionReport rep = tau_infinity(phi);
      r.harmonic = rep.harmonic;
      if (rep.harmonic) {
        r.rank = std::int8_t(mat.rank());
        r.constant_energy = rep.constant_energy;
        if (want_isometry) r.isometry = is_isometry(phi);
      }
    }
  };

  if (nthreads == 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (int tix = 0; tix < nthreads; ++tix) {
      const std::uint64_t lo = tix * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// The audits construct maps repeatedly; keep shareable metric handles.
MetricRef share(const MetricSpec& m) { return std::make_shared<const MetricSpec>(m); }

}  // namespace

EquivalenceReport enumerate_equivalence(const MetricSpec& domain, const MetricSpec& target,
                                        const std::vector<Rational>& values, int threads) {
  const MetricRef dref = share(domain), tref = share(target);
  const auto scan = grid_scan(domain, target, values, threads, dref, tref, false);

  EquivalenceReport rep;
  rep.domain = domain.name;
  rep.target = target.name;
  rep.values = values;
  rep.rows = target.dim;
  rep.cols = domain.dim;
  rep.total = scan.size();
  for (std::uint64_t idx = 0; idx < scan.size(); ++idx) {
    const ScanRow& r = scan[idx];
    rep.harmonic_count += r.harmonic;
    rep.classified_count += r.member;
    if (r.harmonic != r.member)
      rep.mismatches.push_back({decode(idx, rep.rows, rep.cols, values), r.harmonic, r.member});
  }
  return rep;
}

std::string EquivalenceReport::to_text() const {
  std::ostringstream os;
  os << "grid: " << domain << " -> " << target << ", shape " << rows << "x" << cols
     << ", values {";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i].str();
  os << "}\n";
  os << "matrices: " << total << "\n";
  os << "harmonic: " << harmonic_count << "\n";
  os << "classified: " << classified_count << "\n";
  os << "mismatches: " << mismatches.size() << "\n";
  for (const auto& mm : mismatches)
    os << "  " << (mm.harmonic ? "harmonic-but-unclassified" : "classified-but-not-harmonic")
       << ": " << mm.matrix.str() << "\n";
  return os.str();
}

int rank_audit(const MetricSpec& domain, const MetricSpec& target,
               const std::vector<Rational>& values, int threads) {
  const MetricRef dref = share(domain), tref = share(target);
  const auto scan = grid_scan(domain, target, values, threads, dref, tref, false);
  int max_rank = 0;
  for (const auto& r : scan)
    if (r.harmonic) max_rank = std::max(max_rank, int(r.rank));
  return max_rank;
}

EnergyAudit energy_constancy_audit(const MetricSpec& domain, const MetricSpec& target,
                                   const std::vector<Rational>& values, int threads) {
  const MetricRef dref = share(domain), tref = share(target);
  const auto scan = grid_scan(domain, target, values, threads, dref, tref, true);

  EnergyAudit audit;
  audit.total = scan.size();
  for (std::uint64_t idx = 0; idx < scan.size(); ++idx) {
    const ScanRow& r = scan[idx];
    if (!r.harmonic) continue;
    ++audit.harmonic_count;
    const int rank = int(r.rank);
    audit.max_rank = std::max(audit.max_rank, rank);
    ++audit.rank_counts[rank];
    if (r.constant_energy) {
      ++audit.constant_rank_counts[rank];
      if (rank == 2)
        audit.rank2_constant_examples.push_back(decode(idx, target.dim, domain.dim, values));
      if (rank == 3 && !r.isometry)
        audit.rank3_constant_nonisometry_examples.push_back(
            decode(idx, target.dim, domain.dim, values));
    }
  }
  return audit;
}

std::string EnergyAudit::to_text() const {
  std::ostringstream os;
  os << "matrices: " << total << ", harmonic: " << harmonic_count
     << ", max rank: " << max_rank << "\n";
  for (const auto& [rank, count] : rank_counts) {
    os << "rank " << rank << ": " << count << " harmonic";
    auto it = constant_rank_counts.find(rank);
    os << ", " << (it == constant_rank_counts.end() ? 0 : it->second) << " with constant energy\n";
  }
  for (const auto& m : rank2_constant_examples) os << "  rank-2 constant energy: " << m.str() << "\n";
  for (const auto& m : rank3_constant_nonisometry_examples)
    os << "  rank-3 constant energy, not an isometry: " << m.str() << "\n";
  return os.str();
}

bool sol_subgroup_member(const RatMatrix& m) {
  if (m.rows != 3 || m.cols != 3) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && m.at(i, j) != 0) return false;
  return m.at(2, 2) == 1 && m.at(0, 0) != 0 && m.at(1, 1) != 0;
}

}  // namespace infharm
