#pragma once

#include <span>
#include <string>
#include <vector>

#include "infharm/errors.hpp"
#include "infharm/rational.hpp"

namespace infharm {

// Dense matrix of exact rationals, desk scale (a few rows/columns).
struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> a;  // row-major

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, Rational(0)) {}

  Rational& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  static RatMatrix identity(int n);
  static RatMatrix diag(const std::vector<Rational>& d);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  RatMatrix operator*(const RatMatrix& rhs) const;
  bool operator==(const RatMatrix&) const = default;

  int rank() const;
  Rational det() const;           // square only
  RatMatrix inverse() const;      // throws SingularMatrix
  bool is_zero() const;

  std::string str() const;        // [[...],[...]] with exact entries
};

// All 2x2 minors of (u, v) vanish.  Symmetric, scaling invariant, and the
// zero vector is proportional to everything.  Division free.
bool proportional(std::span<const Rational> u, std::span<const Rational> v);

}  // namespace infharm
