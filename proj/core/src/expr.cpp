#include "infharm/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace infharm {

// --------------------------------------------------------------------------
// Rational helpers
// --------------------------------------------------------------------------

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto fail = [&](const char* why) { throw ParseError(std::string("bad rational '") + text + "': " + why, i); };

  bool neg = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) neg = (text[i++] == '-');

  std::string digits;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (digits.empty()) fail("missing digits");

  BigInt num(digits);
  BigInt den = 1;

  if (i < n && text[i] == '/') {
    ++i;
    std::string q;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) q += text[i++];
    if (q.empty()) fail("missing denominator");
    den = BigInt(q);
    if (den == 0) fail("zero denominator");
  } else {
    if (i < n && text[i] == '.') {
      ++i;
      std::string frac;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) frac += text[i++];
      if (frac.empty()) fail("missing fractional digits");
      for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
      }
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < n && (text[i] == '+' || text[i] == '-')) eneg = (text[i++] == '-');
      std::string ed;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ed += text[i++];
      if (ed.empty() || ed.size() > 6) fail("bad exponent");
      long e = std::stol(ed);
      for (long k = 0; k < e; ++k) (eneg ? den : num) *= 10;
    }
  }
  if (i != n) fail("trailing characters");

  Rational r(num, den);
  if (neg) r = -r;
  return r;
}

std::string to_string(const Rational& r) { return r.str(); }

// --------------------------------------------------------------------------
// Variable tables
// --------------------------------------------------------------------------

VarTableRef make_vars(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

bool same_vars(const VarTableRef& a, const VarTableRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// --------------------------------------------------------------------------
// Monomials and frequencies
// --------------------------------------------------------------------------

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool MonomialGrlex::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps < b.exps;
}

bool Frequency::is_zero() const {
  return std::all_of(lambda.begin(), lambda.end(), [](const Rational& r) { return r == 0; });
}

bool FrequencyLex::operator()(const Frequency& a, const Frequency& b) const {
  return a.lambda < b.lambda;
}

// --------------------------------------------------------------------------
// ExpPoly construction
// --------------------------------------------------------------------------

ExpPoly ExpPoly::zero(VarTableRef vars) {
  ExpPoly p;
  p.vars_ = std::move(vars);
  return p;
}

ExpPoly ExpPoly::constant(VarTableRef vars, const Rational& c) {
  ExpPoly p = zero(std::move(vars));
  p.add_term(Frequency(p.dim()), Monomial(p.dim()), c);
  return p;
}

ExpPoly ExpPoly::variable(VarTableRef vars, std::size_t k) {
  ExpPoly p = zero(std::move(vars));
  if (k >= p.dim()) throw IndexOutOfRange("variable index " + std::to_string(k) + " out of range");
  Monomial m(p.dim());
  m.exps[k] = 1;
  p.add_term(Frequency(p.dim()), m, Rational(1));
  return p;
}

ExpPoly ExpPoly::term(VarTableRef vars, Frequency freq, Monomial mono, const Rational& c) {
  ExpPoly p = zero(std::move(vars));
  if (freq.dim() != p.dim() || mono.dim() != p.dim())
    throw DimensionMismatch("term frequency/monomial dimension mismatch");
  p.add_term(freq, mono, c);
  return p;
}

ExpPoly ExpPoly::exponential(VarTableRef vars, Frequency freq) {
  ExpPoly p = zero(std::move(vars));
  if (freq.dim() != p.dim()) throw DimensionMismatch("frequency dimension mismatch");
  p.add_term(freq, Monomial(p.dim()), Rational(1));
  return p;
}

void ExpPoly::add_term(const Frequency& f, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto& poly = terms_[f];
  auto it = poly.find(m);
  if (it == poly.end()) {
    poly.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) {
    poly.erase(it);
    if (poly.empty()) terms_.erase(f);
  }
}

void ExpPoly::require_same_vars(const ExpPoly& other) const {
  if (!same_vars(vars_, other.vars_))
    throw DimensionMismatch("operands live over different variable sets");
}

std::size_t ExpPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& [f, poly] : terms_) n += poly.size();
  return n;
}

// --------------------------------------------------------------------------
// Queries
// --------------------------------------------------------------------------

bool ExpPoly::is_polynomial() const {
  for (const auto& [f, poly] : terms_)
    if (!f.is_zero()) return false;
  return true;
}

std::optional<Rational> ExpPoly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [f, poly] = *terms_.begin();
  if (!f.is_zero() || poly.size() != 1) return std::nullopt;
  const auto& [m, c] = *poly.begin();
  if (!m.is_one()) return std::nullopt;
  return c;
}

std::optional<std::vector<Rational>> ExpPoly::linear_form() const {
  std::vector<Rational> out(dim(), Rational(0));
  for (const auto& [f, poly] : terms_) {
    if (!f.is_zero()) return std::nullopt;
    for (const auto& [m, c] : poly) {
      if (m.degree() != 1) return std::nullopt;
      for (std::size_t k = 0; k < m.exps.size(); ++k)
        if (m.exps[k]) out[k] = c;
    }
  }
  return out;
}

bool ExpPoly::operator==(const ExpPoly& rhs) const {
  return same_vars(vars_, rhs.vars_) && terms_ == rhs.terms_;
}

// --------------------------------------------------------------------------
// Ring operations
// --------------------------------------------------------------------------

ExpPoly ExpPoly::operator-() const { return scaled(Rational(-1)); }

ExpPoly& ExpPoly::operator+=(const ExpPoly& rhs) {
  require_same_vars(rhs);
  for (const auto& [f, poly] : rhs.terms_)
    for (const auto& [m, c] : poly) add_term(f, m, c);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& rhs) {
  require_same_vars(rhs);
  for (const auto& [f, poly] : rhs.terms_)
    for (const auto& [m, c] : poly) add_term(f, m, -c);
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  a.require_same_vars(b);
  ExpPoly out = ExpPoly::zero(a.vars_);
  const std::size_t d = a.dim();
  for (const auto& [fa, pa] : a.terms_)
    for (const auto& [fb, pb] : b.terms_) {
      Frequency f(d);
      for (std::size_t k = 0; k < d; ++k) f.lambda[k] = fa.lambda[k] + fb.lambda[k];
      for (const auto& [ma, ca] : pa)
        for (const auto& [mb, cb] : pb) {
          Monomial m(d);
          for (std::size_t k = 0; k < d; ++k) m.exps[k] = ma.exps[k] + mb.exps[k];
          out.add_term(f, m, ca * cb);
        }
    }
  return out;
}

ExpPoly ExpPoly::scaled(const Rational& c) const {
  ExpPoly out = zero(vars_);
  if (c == 0) return out;
  for (const auto& [f, poly] : terms_)
    for (const auto& [m, k] : poly) out.add_term(f, m, k * c);
  return out;
}

ExpPoly ExpPoly::pow(unsigned k) const {
  ExpPoly out = constant(vars_, Rational(1));
  for (unsigned i = 0; i < k; ++i) out *= *this;
  return out;
}

// --------------------------------------------------------------------------
// Calculus
// --------------------------------------------------------------------------

ExpPoly ExpPoly::derivative(std::size_t k) const {
  if (k >= dim()) throw IndexOutOfRange("derivative index " + std::to_string(k) + " out of range");
  ExpPoly out = zero(vars_);
  for (const auto& [f, poly] : terms_) {
    for (const auto& [m, c] : poly) {
      if (m.exps[k] > 0) {  // product-rule polynomial part
        Monomial dm = m;
        dm.exps[k] -= 1;
        out.add_term(f, dm, c * Rational(m.exps[k]));
      }
      if (f.lambda[k] != 0)  // exponential part
        out.add_term(f, m, c * f.lambda[k]);
    }
  }
  return out;
}

ExpPoly ExpPoly::substituted(const VarTableRef& new_vars, const std::vector<ExpPoly>& assigns) const {
  const std::size_t d = dim();
  if (assigns.size() != d)
    throw DimensionMismatch("expected " + std::to_string(d) + " assignments, got " +
                            std::to_string(assigns.size()));
  for (const auto& a : assigns)
    if (!same_vars(a.vars(), new_vars))
      throw DimensionMismatch("assignment lives over the wrong variable set");
  const std::size_t nd = new_vars ? new_vars->size() : 0;

  // Linear forms for exponential carriers, resolved lazily per coordinate.
  std::vector<std::optional<std::vector<Rational>>> linear(d);
  auto exponent_form = [&](std::size_t k) -> const std::vector<Rational>& {
    if (!linear[k]) {
      linear[k] = assigns[k].linear_form();
      if (!linear[k])
        throw NonAffineExponentSubstitution(
            "coordinate '" + (*vars_)[k] +
            "' is carried by an exponential but its substitution is not a linear form");
    }
    return *linear[k];
  };

  // Power cache: pows[k][e] = assigns[k]^e.
  std::vector<std::vector<ExpPoly>> pows(d);

  auto power = [&](std::size_t k, std::uint32_t e) -> const ExpPoly& {
    auto& cache = pows[k];
    if (cache.empty()) cache.push_back(ExpPoly::constant(new_vars, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * assigns[k]);
    return cache[e];
  };

  ExpPoly out = zero(new_vars);
  for (const auto& [f, poly] : terms_) {
    Frequency nf(nd);
    for (std::size_t k = 0; k < d; ++k) {
      if (f.lambda[k] == 0) continue;
      const auto& lin = exponent_form(k);
      for (std::size_t j = 0; j < nd; ++j) nf.lambda[j] += f.lambda[k] * lin[j];
    }
    const ExpPoly expo = ExpPoly::exponential(new_vars, nf);
    for (const auto& [m, c] : poly) {
      ExpPoly t = expo.scaled(c);
      for (std::size_t k = 0; k < d; ++k)
        if (m.exps[k]) t *= power(k, m.exps[k]);
      out += t;
    }
  }
  return out;
}

double ExpPoly::evaluate(std::span<const double> point) const {
  if (point.size() != dim()) throw DimensionMismatch("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [f, poly] : terms_) {
    double phase = 0.0;
    for (std::size_t k = 0; k < f.lambda.size(); ++k)
      if (f.lambda[k] != 0) phase += to_double(f.lambda[k]) * point[k];
    const double ef = std::exp(phase);
    for (const auto& [m, c] : poly) {
      double v = to_double(c);
      for (std::size_t k = 0; k < m.exps.size(); ++k)
        for (std::uint32_t e = 0; e < m.exps[k]; ++e) v *= point[k];
      sum += v * ef;
    }
  }
  return sum;
}

// --------------------------------------------------------------------------
// Normalisation (content removal, for scale-independent comparison)
// --------------------------------------------------------------------------

ExpPoly ExpPoly::normalized() const {
  if (terms_.empty()) return *this;
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& [f, poly] : terms_)
    for (const auto& [m, c] : poly) {
      num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(numerator(c)));
      den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    }
  Rational content(num_gcd, den_lcm);
  // Sign of the leading (largest) term becomes +.
  const auto& lead_poly = terms_.rbegin()->second;
  if (lead_poly.rbegin()->second < 0) content = -content;
  return scaled(Rational(1) / content);
}

// --------------------------------------------------------------------------
// Rendering
// --------------------------------------------------------------------------

namespace {

void render_product(std::ostream& os, const VarTable& names, const Frequency& f,
                    const Monomial& m, const Rational& coeff_abs) {
  bool printed = false;
  if (coeff_abs != 1 || (m.is_one() && f.is_zero())) {
    os << coeff_abs.str();
    printed = true;
  }
  for (std::size_t k = 0; k < m.exps.size(); ++k) {
    if (!m.exps[k]) continue;
    if (printed) os << "*";
    os << names[k];
    if (m.exps[k] > 1) os << "^" << m.exps[k];
    printed = true;
  }
  if (!f.is_zero()) {
    if (printed) os << "*";
    os << "exp(";
    bool first = true;
    for (std::size_t k = 0; k < f.lambda.size(); ++k) {
      const Rational& l = f.lambda[k];
      if (l == 0) continue;
      Rational al = l < 0 ? Rational(-l) : l;
      if (first) {
        if (l < 0) os << "-";
      } else {
        os << (l < 0 ? "-" : "+");
      }
      if (al != 1) os << al.str() << "*";
      os << names[k];
      first = false;
    }
    os << ")";
  }
}

}  // namespace

std::string ExpPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, poly] : terms_) {
    // Monomials within a frequency group print in descending graded-lex
    // order so polynomials read high degree first.
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
      const auto& [m, c] = *it;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      render_product(os, *vars_, f, m, c < 0 ? Rational(-c) : c);
    }
  }
  return os.str();
}

}  // namespace infharm
