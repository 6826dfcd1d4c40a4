#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infharm/errors.hpp"
#include "infharm/rational.hpp"

namespace infharm {

// Ordered list of coordinate names shared by every expression built over it.
using VarTable = std::vector<std::string>;
using VarTableRef = std::shared_ptr<const VarTable>;

VarTableRef make_vars(std::vector<std::string> names);
bool same_vars(const VarTableRef& a, const VarTableRef& b);

// Exponent vector of a power product, one entry per coordinate.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t dim) : exps(dim, 0) {}

  std::size_t dim() const { return exps.size(); }
  std::uint64_t degree() const;
  bool is_one() const { return degree() == 0; }

  bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order: total degree first, then leftmost coordinate
// strongest.  Used both for canonical storage and deterministic rendering.
struct MonomialGrlex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Rational linear form lambda.x carried by an exponential factor exp(lambda.x).
struct Frequency {
  std::vector<Rational> lambda;

  Frequency() = default;
  explicit Frequency(std::size_t dim) : lambda(dim, Rational(0)) {}

  std::size_t dim() const { return lambda.size(); }
  bool is_zero() const;

  bool operator==(const Frequency&) const = default;
};

struct FrequencyLex {
  bool operator()(const Frequency& a, const Frequency& b) const;
};

// Finite sum  sum_k p_k(x) * exp(lambda_k . x)  with rational-coefficient
// polynomials p_k and pairwise distinct rational frequencies lambda_k.
// The representation is always canonical: no zero coefficients, no empty
// polynomial groups, ordered maps throughout.  Structural equality is
// therefore semantic equality, and is_zero() is emptiness.
class ExpPoly {
 public:
  using PolyPart = std::map<Monomial, Rational, MonomialGrlex>;
  using TermMap = std::map<Frequency, PolyPart, FrequencyLex>;

  ExpPoly() = default;

  static ExpPoly zero(VarTableRef vars);
  static ExpPoly constant(VarTableRef vars, const Rational& c);
  static ExpPoly variable(VarTableRef vars, std::size_t k);
  static ExpPoly term(VarTableRef vars, Frequency freq, Monomial mono, const Rational& c);
  // exp(freq . x)
  static ExpPoly exponential(VarTableRef vars, Frequency freq);

  const VarTableRef& vars() const { return vars_; }
  std::size_t dim() const { return vars_ ? vars_->size() : 0; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const;

  bool is_zero() const { return terms_.empty(); }
  // True when no exponential factor is present.
  bool is_polynomial() const;
  // Nonzero only via an exponential-free constant term.
  std::optional<Rational> as_constant() const;
  // Present iff the expression is a polynomial of degree <= 1 with zero
  // constant term; returns the coefficient vector of the linear form.
  std::optional<std::vector<Rational>> linear_form() const;

  ExpPoly operator-() const;
  ExpPoly& operator+=(const ExpPoly& rhs);
  ExpPoly& operator-=(const ExpPoly& rhs);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  ExpPoly& operator*=(const ExpPoly& rhs) { return *this = *this * rhs; }
  ExpPoly scaled(const Rational& c) const;
  ExpPoly pow(unsigned k) const;

  bool operator==(const ExpPoly& rhs) const;
  bool operator!=(const ExpPoly& rhs) const { return !(*this == rhs); }

  // d/dx_k.  The class is closed under partial differentiation.
  ExpPoly derivative(std::size_t k) const;

  // Simultaneous substitution x_k := assigns[k], where each assignment is an
  // expression over new_vars.  A coordinate that occurs inside a Frequency
  // only admits a linear form (see NonAffineExponentSubstitution); purely
  // polynomial coordinates accept arbitrary expressions.
  ExpPoly substituted(const VarTableRef& new_vars, const std::vector<ExpPoly>& assigns) const;

  double evaluate(std::span<const double> point) const;

  // Divide all coefficients by the rational content and normalise the sign
  // of the leading term to +.  Zero stays zero.  Two expressions are equal
  // up to rational scaling iff their normalised forms are equal.
  ExpPoly normalized() const;

  // Canonical text form; parse() inverts it.  See parser.hpp.
  std::string str() const;

 private:
  VarTableRef vars_;
  TermMap terms_;

  void add_term(const Frequency& f, const Monomial& m, const Rational& c);
  void require_same_vars(const ExpPoly& other) const;

  friend ExpPoly parse(const std::string&, const VarTableRef&);
};

}  // namespace infharm
