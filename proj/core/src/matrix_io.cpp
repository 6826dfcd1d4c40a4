#include "infharm/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace infharm {

namespace {

// SAX handler: floats keep their decimal token text, so 0.1 becomes exactly
// 1/10 instead of the nearest binary double.
struct MatrixSax {
  std::vector<std::vector<Rational>> rows;
  int depth = 0;
  bool done = false;
  std::string error;

  bool fail(const std::string& why) {
    error = why;
    return false;
  }

  bool push(const Rational& r) {
    if (depth != 2) return fail("matrix entries must sit inside a row array");
    rows.back().push_back(r);
    return true;
  }

  bool null() { return fail("null is not a matrix entry"); }
  bool boolean(bool) { return fail("booleans are not matrix entries"); }
  bool number_integer(std::int64_t v) { return push(Rational(v)); }
  bool number_unsigned(std::uint64_t v) { return push(Rational(v)); }
  bool number_float(double, const std::string& token) {
    try {
      return push(parse_rational(token));
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  bool string(std::string& s) {
    try {
      return push(parse_rational(s));
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  bool binary(nlohmann::json::binary_t&) { return fail("binary is not a matrix entry"); }
  bool start_object(std::size_t) { return fail("objects are not allowed in a matrix"); }
  bool key(std::string&) { return false; }
  bool end_object() { return false; }
  bool start_array(std::size_t) {
    if (done || depth >= 2) return fail("matrix must be an array of row arrays");
    if (++depth == 2) rows.emplace_back();
    return true;
  }
  bool end_array() {
    if (--depth == 0) done = true;
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) {
    if (error.empty()) error = std::string(ex.what()) + " at byte " + std::to_string(pos);
    return false;
  }
};

}  // namespace

RatMatrix read_matrix_json(const std::string& text) {
  MatrixSax sax;
  if (!nlohmann::json::sax_parse(text, &sax) || !sax.done)
    throw IoError("malformed matrix JSON: " + (sax.error.empty() ? "not an array of rows" : sax.error));
  if (sax.rows.empty()) throw IoError("matrix has no rows");
  try {
    return RatMatrix::from_rows(sax.rows);
  } catch (const DimensionMismatch&) {
    throw IoError("matrix rows have unequal lengths");
  }
}

RatMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_matrix_json(buf.str());
}

std::string write_matrix_json(const RatMatrix& m) {
  // Integers that fit a double-safe range stay JSON numbers; everything else
  // is a quoted exact "p/q" so the round trip is bit-identical.
  static const BigInt kSafe = (BigInt(1) << 53);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << ",";
      const Rational& v = m.at(i, j);
      if (is_integer(v) && boost::multiprecision::abs(numerator(v)) <= kSafe)
        os << numerator(v).str();
      else
        os << '"' << v.str() << '"';
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace infharm
