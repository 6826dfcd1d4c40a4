#include "infharm/rat_matrix.hpp"

#include <sstream>

namespace infharm {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diag(const std::vector<Rational>& d) {
  RatMatrix m(int(d.size()), int(d.size()));
  for (int i = 0; i < m.rows; ++i) m.at(i, i) = d[i];
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (int(rows[i].size()) != m.cols) throw DimensionMismatch("ragged matrix rows");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols != rhs.rows) throw DimensionMismatch("matrix product shape mismatch");
  RatMatrix out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rational& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

int RatMatrix::rank() const {
  RatMatrix w = *this;
  int r = 0;
  for (int col = 0; col < w.cols && r < w.rows; ++col) {
    int pivot = -1;
    for (int i = r; i < w.rows; ++i)
      if (w.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(pivot, j), w.at(r, j));
    const Rational p = w.at(r, col);
    for (int i = r + 1; i < w.rows; ++i) {
      const Rational f = w.at(i, col) / p;
      if (f == 0) continue;
      for (int j = col; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    ++r;
  }
  return r;
}

Rational RatMatrix::det() const {
  if (rows != cols) throw DimensionMismatch("determinant of a non-square matrix");
  RatMatrix w = *this;
  Rational d = 1;
  for (int col = 0; col < w.cols; ++col) {
    int pivot = -1;
    for (int i = col; i < w.rows; ++i)
      if (w.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(pivot, j), w.at(col, j));
      d = -d;
    }
    const Rational p = w.at(col, col);
    d *= p;
    for (int i = col + 1; i < w.rows; ++i) {
      const Rational f = w.at(i, col) / p;
      if (f == 0) continue;
      for (int j = col; j < w.cols; ++j) w.at(i, j) -= f * w.at(col, j);
    }
  }
  return d;
}

RatMatrix RatMatrix::inverse() const {
  if (rows != cols) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = rows;
  RatMatrix w = *this;
  RatMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (w.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw SingularMatrix("matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(pivot, j), w.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    const Rational p = w.at(col, col);
    for (int j = 0; j < n; ++j) {
      w.at(col, j) /= p;
      inv.at(col, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const Rational f = w.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        w.at(i, j) -= f * w.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : a)
    if (v != 0) return false;
  return true;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool proportional(std::span<const Rational> u, std::span<const Rational> v) {
  if (u.size() != v.size()) throw DimensionMismatch("proportionality of unequal lengths");
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * v[j] - u[j] * v[i] != 0) return false;
  return true;
}

}  // namespace infharm
