#include "infharm/parser.hpp"

#include <cctype>

namespace infharm {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const VarTableRef& vars) : text_(text), vars_(vars) {}

  ExpPoly run() {
    ExpPoly e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  const VarTableRef& vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(why, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExpPoly expression() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    ExpPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  ExpPoly term() {
    ExpPoly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  ExpPoly factor() {
    ExpPoly base = primary();
    if (eat('^')) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') fail("powers must be non-negative integers");
      std::string digits = integer_digits();
      if (digits.size() > 2) fail("power too large");
      unsigned long e = std::stoul(digits);
      if (e > 64) fail("power too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  std::string integer_digits() {
    skip_ws();
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (digits.empty()) fail("expected an integer");
    return digits;
  }

  ExpPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      ExpPoly e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer_digits();
      Rational r{BigInt(num)};
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = integer_digits();
        if (BigInt(den) == 0) fail("zero denominator");
        r /= Rational(BigInt(den));
      }
      return ExpPoly::constant(vars_, r);
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      if (name == "exp") {
        if (!eat('(')) fail("expected '(' after exp");
        ExpPoly arg = expression();
        if (!eat(')')) fail("expected ')'");
        auto lin = arg.linear_form();
        if (!lin)
          fail("non-affine exp argument: must be a linear form in the coordinates");
        Frequency f(vars_->size());
        f.lambda = std::move(*lin);
        return ExpPoly::exponential(vars_, f);
      }
      for (std::size_t k = 0; k < vars_->size(); ++k)
        if ((*vars_)[k] == name) return ExpPoly::variable(vars_, k);
      fail("unknown variable '" + name + "'");
    }

    fail(std::string("unexpected character '") + c + "'");
  }

  std::string identifier() {
    std::string name;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        ++pos_;
      } else {
        break;
      }
    }
    return name;
  }
};

}  // namespace

ExpPoly parse(const std::string& text, const VarTableRef& vars) {
  if (!vars) throw DimensionMismatch("parse requires a variable table");
  return Parser(text, vars).run();
}

}  // namespace infharm
