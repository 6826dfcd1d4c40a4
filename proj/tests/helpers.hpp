#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "infharm/expr.hpp"

namespace testutil {

using infharm::ExpPoly;
using infharm::Frequency;
using infharm::Monomial;
using infharm::Rational;
using infharm::VarTableRef;

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 9) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

// Random canonical expression: a handful of terms with small frequencies,
// small exponents, and small rational coefficients.
inline ExpPoly random_expoly(const VarTableRef& vars, std::mt19937_64& rng, int max_terms = 4,
                             bool allow_exp = true) {
  const std::size_t d = vars->size();
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expo(0, 3);
  std::uniform_int_distribution<int> freq(-2, 2);
  ExpPoly out = ExpPoly::zero(vars);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m(d);
    for (std::size_t k = 0; k < d; ++k) m.exps[k] = std::uint32_t(expo(rng));
    Frequency f(d);
    if (allow_exp)
      for (std::size_t k = 0; k < d; ++k) f.lambda[k] = freq(rng);
    out += ExpPoly::term(vars, f, m, random_rational(rng));
  }
  return out;
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t dim, double lo = -2.0,
                                        double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> p(dim);
  for (auto& x : p) x = dist(rng);
  return p;
}

// Central difference partial of an expression at a point.
inline double fd_partial(const ExpPoly& e, std::size_t k, std::vector<double> p, double h = 1e-6) {
  p[k] += h;
  const double up = e.evaluate(p);
  p[k] -= 2 * h;
  const double dn = e.evaluate(p);
  return (up - dn) / (2 * h);
}

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace testutil
