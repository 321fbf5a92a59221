#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rational.hpp"
#include "symtab.hpp"

namespace dw {

constexpr int kMaxExponent = 64;

// Exponent vector indexed by symbol id, trailing zeros trimmed.
struct Monomial {
  std::vector<int32_t> e;

  int degree() const;
  int exponent(int sym) const { return sym < static_cast<int>(e.size()) ? e[sym] : 0; }
  bool is_one() const { return e.empty(); }
  bool operator==(const Monomial&) const = default;
};

Monomial mono_one();
Monomial mono_var(int sym, int exp = 1);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& d, const Monomial& m);  // d | m
Monomial mono_quotient(const Monomial& m, const Monomial& d);
bool mono_coprime(const Monomial& a, const Monomial& b);
Monomial mono_lcm(const Monomial& a, const Monomial& b);
// Graded lexicographic: total degree first, ties broken by the earliest
// declared symbol with differing exponent (higher exponent = larger).
int grlex_cmp(const Monomial& a, const Monomial& b);  // sign of a<=>b

struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) > 0; }
};

// Multivariate polynomial with integer coefficients, terms kept in
// descending graded-lex order (begin() is the leading term).
class Polynomial {
public:
  using TermMap = std::map<Monomial, Int, MonoGreater>;

  Polynomial() = default;
  static Polynomial constant(const Int& c);
  static Polynomial variable(int sym, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  Int constant_value() const;  // requires is_constant()
  bool is_one() const { return is_constant() && constant_value() == 1; }
  int total_degree() const;
  int degree_in(int sym) const;
  bool contains(int sym) const { return degree_in(sym) > 0; }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  const std::pair<const Monomial, Int>& leading() const;

  void add_term(const Monomial& m, const Int& c);
  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial mul_term(const Monomial& m, const Int& c) const;
  Polynomial mul_int(const Int& c) const;
  Polynomial pow(int n) const;  // n >= 0
  Polynomial derivative(int sym) const;
  Int content() const;  // gcd of |coefficients|, 0 for the zero polynomial
  Polynomial divided_by_int(const Int& d) const;  // exact division
  Monomial monomial_content() const;  // per-variable minimum exponent over all terms
  Polynomial divided_by_monomial(const Monomial& m) const;  // exact division
  Rat evaluate(const std::function<const Rat*(int)>& bind) const;
  void collect_symbols(std::set<int>& out) const;
  bool operator==(const Polynomial&) const = default;

private:
  TermMap terms_;
};

// Canonical rational function: num/den with den != 0, joint integer content
// divided out, leading denominator coefficient positive. No polynomial GCD is
// taken; equality is decided by cross-multiplication.
class RationalExpr {
public:
  RationalExpr() : num_(), den_(Polynomial::constant(1)) {}
  explicit RationalExpr(const Int& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}
  explicit RationalExpr(const Rat& r);
  RationalExpr(Polynomial num, Polynomial den);
  static RationalExpr variable(int sym);
  static RationalExpr from_poly(Polynomial p) { return RationalExpr(std::move(p), Polynomial::constant(1)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rat> constant_value() const;
  bool contains(int sym) const { return num_.contains(sym) || den_.contains(sym); }
  int degree_in(int sym) const { return std::max(num_.degree_in(sym), den_.degree_in(sym)); }

  RationalExpr operator-() const;
  RationalExpr operator+(const RationalExpr& o) const;
  RationalExpr operator-(const RationalExpr& o) const;
  RationalExpr operator*(const RationalExpr& o) const;
  RationalExpr operator/(const RationalExpr& o) const;  // errors on zero divisor
  RationalExpr pow(int n) const;                        // any integer n, |n| <= kMaxExponent

  bool equals(const RationalExpr& o) const;           // mathematical (cross-multiplied)
  bool operator==(const RationalExpr&) const = default;  // structural, canonical form
  RationalExpr derivative(int sym) const;
  // Simultaneous substitution; unbound symbols pass through.
  RationalExpr substitute(const std::map<int, RationalExpr>& bindings) const;
  Rat evaluate(const std::map<int, Rat>& point) const;  // every symbol must be bound
  void collect_symbols(std::set<int>& out) const;
  std::string str(const SymbolTable& st) const;

private:
  void canonicalize();
  Polynomial num_, den_;
};

std::string poly_str(const Polynomial& p, const SymbolTable& st);

}  // namespace dw
