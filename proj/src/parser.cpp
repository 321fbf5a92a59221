#include "parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dw {

namespace {

class Parser {
public:
  Parser(const std::string& text, const SymbolTable& st) : text_(text), st_(st) {}

  RationalExpr run() {
    skip_ws();
    if (eof()) error("empty expression");
    RationalExpr e = expr();
    skip_ws();
    if (!eof()) error(std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

private:
  [[noreturn]] void error(const std::string& what) const {
    fail(errc::parse, "parse error at position " + std::to_string(pos_) + ": " + what);
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalExpr expr() {
    RationalExpr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  RationalExpr term() {
    RationalExpr e = factor();
    for (;;) {
      if (accept('*'))
        e = e * factor();
      else if (accept('/')) {
        size_t at = pos_;
        RationalExpr d = factor();
        if (d.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        e = e / d;
      } else
        return e;
    }
  }

  RationalExpr factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RationalExpr base = primary();
    if (accept('^')) {
      // '^' is right-associative over integer literals: x^2^3 == x^(2^3).
      std::vector<long long> tower;
      tower.push_back(exponent_literal());
      while (accept('^')) tower.push_back(exponent_literal());
      long long n = tower.back();
      for (size_t i = tower.size() - 1; i-- > 0;) {
        if (n < 0) error("negative exponent inside a '^' tower");
        long long b = tower[i];
        long long r = 1;
        for (long long k = 0; k < n; ++k) {
          r *= b;
          if (r > kMaxExponent || r < -kMaxExponent)
            error("exponent out of range (|n| <= " + std::to_string(kMaxExponent) + ")");
        }
        n = r;
      }
      if (n < 0 && base.is_zero()) error("zero raised to a negative power");
      return base.pow(static_cast<int>(n));
    }
    return base;
  }

  long long exponent_literal() {
    skip_ws();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("exponent must be an integer literal");
    long long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > kMaxExponent) error("exponent out of range (|n| <= " + std::to_string(kMaxExponent) + ")");
      ++pos_;
    }
    return neg ? -v : v;
  }

  RationalExpr primary() {
    skip_ws();
    if (accept('(')) {
      RationalExpr e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return integer();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return symbol();
    if (eof()) error("unexpected end of expression");
    error(std::string("unexpected character '") + c + "'");
  }

  RationalExpr integer() {
    size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return RationalExpr(Int(text_.substr(start, pos_ - start)));
  }

  RationalExpr symbol() {
    size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    int id = st_.find(name);
    if (id < 0) {
      pos_ = start;
      error("unknown symbol '" + name + "'");
    }
    return RationalExpr::variable(id);
  }

  const std::string& text_;
  const SymbolTable& st_;
  size_t pos_ = 0;
};

}  // namespace

RationalExpr parse_expr(const std::string& text, const SymbolTable& st) {
  return Parser(text, st).run();
}

}  // namespace dw
