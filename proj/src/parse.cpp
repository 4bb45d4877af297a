#include "monores/series.hpp"

#include <cctype>

namespace monores {

namespace {

class Parser {
public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  Series run() {
    Series out(n_);
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [e, c] = term();
      out.add_term(e, c * sign);
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

private:
  std::pair<Exponent, Rational> term() {
    Exponent e(n_, 0);
    Rational coeff = 1;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      skip_ws();
      if (peek() != '*') return {e, coeff};
      ++pos_;
      skip_ws();
    }
    while (true) {
      if (peek() != 'x') throw ParseError(have_factor ? "expected factor" : "expected term", pos_);
      std::size_t at = pos_;
      ++pos_;
      long idx = integer("variable index");
      if (idx < 1 || idx > n_) {
        throw ParseError("variable index x" + std::to_string(idx) + " out of range 1.." +
                             std::to_string(n_),
                         at);
      }
      long power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        power = integer("exponent");
        if (power < 1) throw ParseError("exponent must be at least 1", pos_);
      }
      e[idx - 1] += static_cast<int>(power);
      have_factor = true;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
    }
    return {e, coeff};
  }

  Rational number() {
    std::size_t start = pos_;
    mpz_class num(digits("coefficient"));
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      mpz_class den(digits("denominator"));
      if (den == 0) throw ParseError("zero denominator", start);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  long integer(const char* what) {
    std::string d = digits(what);
    if (d.size() > 6) throw ParseError(std::string(what) + " too large", pos_);
    return std::stol(d);
  }

  std::string digits(const char* what) {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(std::string("expected ") + what, pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Series parse_series(std::string_view text, int n) {
  if (n < 1) throw Error("dimension must be positive");
  return Parser(text, n).run();
}

}  // namespace monores
