#include "infharm/geometry.hpp"

#include <fstream>
#include <sstream>

#include "infharm/parser.hpp"

namespace infharm {

namespace {

void verify_metric(const MetricSpec& M) {
  const int n = M.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (M.metric(i, j) != M.metric(j, i)) throw Error("metric '" + M.name + "' is not symmetric");
      if (M.inverse(i, j) != M.inverse(j, i))
        throw Error("inverse metric '" + M.name + "' is not symmetric");
    }
  // g * ginv == I, exactly.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExpPoly s = ExpPoly::zero(M.coords);
      for (int k = 0; k < n; ++k) s += M.metric(i, k) * M.inverse(k, j);
      const ExpPoly expect = ExpPoly::constant(M.coords, Rational(i == j ? 1 : 0));
      if (s != expect)
        throw Error("metric '" + M.name + "' times its stored inverse is not the identity");
    }
}

// Divide p by the single term c * x^m * exp(l.x).  Frequencies subtract
// freely; monomial exponents must not go negative.
ExpPoly divide_by_term(const ExpPoly& p, const Frequency& l, const Monomial& m, const Rational& c) {
  ExpPoly out = ExpPoly::zero(p.vars());
  const std::size_t d = p.dim();
  for (const auto& [f, poly] : p.terms()) {
    Frequency nf(d);
    for (std::size_t k = 0; k < d; ++k) nf.lambda[k] = f.lambda[k] - l.lambda[k];
    for (const auto& [mono, coeff] : poly) {
      Monomial nm(d);
      for (std::size_t k = 0; k < d; ++k) {
        if (mono.exps[k] < m.exps[k])
          throw NonInvertibleInClass("determinant does not divide an adjugate entry");
        nm.exps[k] = mono.exps[k] - m.exps[k];
      }
      out += ExpPoly::term(p.vars(), nf, nm, coeff / c);
    }
  }
  return out;
}

ExpPoly determinant(const std::vector<ExpPoly>& g, int n, const VarTableRef& vars,
                    std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return g[std::size_t(rows[0]) * n + cols[0]];
  ExpPoly sum = ExpPoly::zero(vars);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const ExpPoly& e = g[std::size_t(rows[0]) * n + cols[k]];
    if (e.is_zero()) continue;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    ExpPoly minor = determinant(g, n, vars, sub_rows, sub_cols);
    sum += (k % 2 ? -(e * minor) : e * minor);
  }
  return sum;
}

ExpPoly full_determinant(const std::vector<ExpPoly>& g, int n, const VarTableRef& vars) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return determinant(g, n, vars, idx, idx);
}

}  // namespace

std::vector<ExpPoly> cofactor_inverse(const std::vector<ExpPoly>& g, int dim) {
  if (dim < 1) throw DimensionMismatch("empty metric");
  const VarTableRef vars = g[0].vars();
  const ExpPoly det = full_determinant(g, dim, vars);
  if (det.is_zero()) throw NonInvertibleInClass("metric determinant vanishes identically");
  if (det.term_count() != 1)
    throw NonInvertibleInClass(
        "metric determinant is not a single term; the inverse leaves the class");
  const auto& [df, dpoly] = *det.terms().begin();
  const auto& [dm, dc] = *dpoly.begin();

  std::vector<ExpPoly> inv(std::size_t(dim) * dim, ExpPoly::zero(vars));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::vector<int> rows, cols;
      for (int k = 0; k < dim; ++k) {
        if (k != j) rows.push_back(k);  // adjugate: cofactor of (j, i)
        if (k != i) cols.push_back(k);
      }
      ExpPoly cof = dim == 1 ? ExpPoly::constant(vars, Rational(1))
                             : determinant(g, dim, vars, rows, cols);
      if ((i + j) % 2) cof = -cof;
      inv[std::size_t(i) * dim + j] = divide_by_term(cof, df, dm, dc);
    }
  return inv;
}

namespace {

MetricRef finish_metric(MetricSpec spec, bool crosscheck_cofactor) {
  verify_metric(spec);
  if (crosscheck_cofactor) {
    const auto inv = cofactor_inverse(spec.g, spec.dim);
    for (std::size_t k = 0; k < inv.size(); ++k)
      if (inv[k] != spec.ginv[k])
        throw Error("stored inverse of '" + spec.name + "' disagrees with cofactor inversion");
  }
  return std::make_shared<const MetricSpec>(std::move(spec));
}

MetricRef make_euclidean(int n) {
  if (n < 1) throw DimensionMismatch("euclidean dimension must be >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  MetricSpec spec;
  spec.name = "euclidean:" + std::to_string(n);
  spec.kind = GeometryKind::Euclidean;
  spec.dim = n;
  spec.coords = make_vars(std::move(names));
  spec.g.assign(std::size_t(n) * n, ExpPoly::zero(spec.coords));
  for (int i = 0; i < n; ++i)
    spec.g[std::size_t(i) * n + i] = ExpPoly::constant(spec.coords, Rational(1));
  spec.ginv = spec.g;
  return finish_metric(std::move(spec), true);
}

MetricRef make_model(const std::string& name, GeometryKind kind,
                     const std::vector<std::vector<const char*>>& lower,
                     const std::vector<std::vector<const char*>>& lower_inv) {
  MetricSpec spec;
  spec.name = name;
  spec.kind = kind;
  spec.dim = 3;
  spec.coords = make_vars({"x", "y", "z"});
  spec.g.assign(9, ExpPoly::zero(spec.coords));
  spec.ginv.assign(9, ExpPoly::zero(spec.coords));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) {
      spec.g[std::size_t(i) * 3 + j] = spec.g[std::size_t(j) * 3 + i] =
          parse(lower[i][j], spec.coords);
      spec.ginv[std::size_t(i) * 3 + j] = spec.ginv[std::size_t(j) * 3 + i] =
          parse(lower_inv[i][j], spec.coords);
    }
  return finish_metric(std::move(spec), true);
}

}  // namespace

MetricRef builtin_geometry(const std::string& name) {
  if (name.rfind("euclidean:", 0) == 0) {
    const std::string n = name.substr(10);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
      throw IoError("bad euclidean dimension in '" + name + "'");
    return make_euclidean(std::stoi(n));
  }
  if (name == "heisenberg") {
    // Left-invariant metric of the Heisenberg group in exponential
    // coordinates: dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2.
    return make_model(name, GeometryKind::Heisenberg,
                      {{"1+1/4*y^2"},
                       {"-1/4*x*y", "1+1/4*x^2"},
                       {"1/2*y", "-1/2*x", "1"}},
                      {{"1"},
                       {"0", "1"},
                       {"-1/2*y", "1/2*x", "1+1/4*(x^2+y^2)"}});
  }
  if (name == "nil") {
    // dx^2 + dy^2 + (dz - x dy)^2.
    return make_model(name, GeometryKind::Nil,
                      {{"1"},
                       {"0", "1+x^2"},
                       {"0", "-x", "1"}},
                      {{"1"},
                       {"0", "1"},
                       {"0", "x", "1+x^2"}});
  }
  if (name == "sol") {
    // e^{2z} dx^2 + e^{-2z} dy^2 + dz^2.
    return make_model(name, GeometryKind::Sol,
                      {{"exp(2*z)"},
                       {"0", "exp(-2*z)"},
                       {"0", "0", "1"}},
                      {{"exp(-2*z)"},
                       {"0", "exp(2*z)"},
                       {"0", "0", "1"}});
  }
  throw IoError("unknown geometry '" + name + "'");
}

MetricRef register_metric(const std::string& name, const std::vector<std::string>& coords,
                          const std::vector<std::vector<ExpPoly>>& lower_triangle) {
  const int n = int(coords.size());
  if (n < 1 || n > 4) throw DimensionMismatch("registered metrics support dimensions 1 to 4");
  if (int(lower_triangle.size()) != n) throw DimensionMismatch("lower triangle has wrong row count");

  MetricSpec spec;
  spec.name = name;
  spec.kind = GeometryKind::Custom;
  spec.dim = n;
  spec.coords = make_vars(coords);
  spec.g.assign(std::size_t(n) * n, ExpPoly::zero(spec.coords));
  for (int i = 0; i < n; ++i) {
    if (int(lower_triangle[i].size()) != i + 1)
      throw DimensionMismatch("lower triangle row " + std::to_string(i + 1) + " has wrong length");
    for (int j = 0; j <= i; ++j) {
      if (!same_vars(lower_triangle[i][j].vars(), spec.coords))
        throw DimensionMismatch("metric entry lives over the wrong coordinates");
      spec.g[std::size_t(i) * n + j] = spec.g[std::size_t(j) * n + i] = lower_triangle[i][j];
    }
  }
  spec.ginv = cofactor_inverse(spec.g, n);
  return finish_metric(std::move(spec), false);
}

MetricRef load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open metric file '" + path + "'");

  std::string name;
  std::vector<std::string> coords;
  std::vector<std::pair<std::pair<int, int>, std::string>> entries;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "name") {
      if (!(ls >> name)) throw IoError(path + ":" + std::to_string(lineno) + ": missing name");
    } else if (head == "coords") {
      std::string c;
      while (ls >> c) coords.push_back(c);
    } else if (head == "g") {
      int i = 0, j = 0;
      if (!(ls >> i >> j)) throw IoError(path + ":" + std::to_string(lineno) + ": bad g line");
      std::string expr;
      std::getline(ls, expr);
      entries.push_back({{i, j}, expr});
    } else {
      throw IoError(path + ":" + std::to_string(lineno) + ": unknown directive '" + head + "'");
    }
  }
  if (name.empty() || coords.empty()) throw IoError(path + ": missing name or coords");

  const int n = int(coords.size());
  const VarTableRef vars = make_vars(coords);
  std::vector<std::vector<ExpPoly>> lower(n);
  for (int i = 0; i < n; ++i) lower[i].assign(i + 1, ExpPoly::zero(vars));
  for (const auto& [ij, expr] : entries) {
    const auto [i, j] = ij;
    if (i < 1 || i > n || j < 1 || j > i)
      throw IoError(path + ": entry g " + std::to_string(i) + " " + std::to_string(j) +
                    " outside the lower triangle");
    lower[i - 1][j - 1] = parse(expr, vars);
  }
  return register_metric(name, coords, lower);
}

}  // namespace infharm
