#include "rational_expr.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace dw {

namespace {
void check_exponent(long long n) {
  if (n > kMaxExponent || n < -kMaxExponent)
    fail(errc::invalid_argument, "exponent out of range (|n| <= " + std::to_string(kMaxExponent) + ")");
}
}  // namespace

int Monomial::degree() const {
  int d = 0;
  for (int32_t x : e) d += x;
  return d;
}

Monomial mono_one() { return Monomial{}; }

Monomial mono_var(int sym, int exp) {
  check_exponent(exp);
  Monomial m;
  if (exp == 0) return m;
  m.e.assign(sym + 1, 0);
  m.e[sym] = exp;
  return m;
}

static void trim(Monomial& m) {
  while (!m.e.empty() && m.e.back() == 0) m.e.pop_back();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a.e.size() >= b.e.size() ? a : b;
  const Monomial& s = a.e.size() >= b.e.size() ? b : a;
  for (size_t i = 0; i < s.e.size(); ++i) {
    r.e[i] += s.e[i];
    check_exponent(r.e[i]);
  }
  trim(r);
  return r;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
  if (d.e.size() > m.e.size()) return false;
  for (size_t i = 0; i < d.e.size(); ++i)
    if (d.e[i] > m.e[i]) return false;
  return true;
}

Monomial mono_quotient(const Monomial& m, const Monomial& d) {
  Monomial r = m;
  for (size_t i = 0; i < d.e.size(); ++i) r.e[i] -= d.e[i];
  trim(r);
  return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  size_t n = std::min(a.e.size(), b.e.size());
  for (size_t i = 0; i < n; ++i)
    if (a.e[i] > 0 && b.e[i] > 0) return false;
  return true;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.e.assign(std::max(a.e.size(), b.e.size()), 0);
  for (size_t i = 0; i < r.e.size(); ++i)
    r.e[i] = std::max(i < a.e.size() ? a.e[i] : 0, i < b.e.size() ? b.e[i] : 0);
  trim(r);
  return r;
}

int grlex_cmp(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  size_t n = std::max(a.e.size(), b.e.size());
  for (size_t i = 0; i < n; ++i) {
    int32_t xa = i < a.e.size() ? a.e[i] : 0;
    int32_t xb = i < b.e.size() ? b.e[i] : 0;
    if (xa != xb) return xa < xb ? -1 : 1;
  }
  return 0;
}

Polynomial Polynomial::constant(const Int& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(mono_one(), c);
  return p;
}

Polynomial Polynomial::variable(int sym, int exp) {
  Polynomial p;
  p.terms_.emplace(mono_var(sym, exp), Int(1));
  return p;
}

Int Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

int Polynomial::degree_in(int sym) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(sym));
  return d;
}

const std::pair<const Monomial, Int>& Polynomial::leading() const {
  if (terms_.empty()) fail(errc::internal, "leading term of zero polynomial");
  return *terms_.begin();
}

void Polynomial::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Int& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [mt, ct] : terms_) r.terms_.emplace(mono_mul(mt, m), ct * c);
  return r;
}

Polynomial Polynomial::mul_int(const Int& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, ct] : terms_) r.terms_.emplace(m, ct * c);
  return r;
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) fail(errc::internal, "negative polynomial power");
  check_exponent(n);
  Polynomial r = constant(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative(int sym) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    int k = m.exponent(sym);
    if (k == 0) continue;
    Monomial d = m;
    d.e[sym] -= 1;
    trim(d);
    r.add_term(d, c * k);
  }
  return r;
}

Int Polynomial::content() const {
  Int g = 0;
  for (const auto& [m, c] : terms_) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::divided_by_int(const Int& d) const {
  if (d == 0) fail(errc::internal, "division of polynomial by zero");
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    if (c % d != 0) fail(errc::internal, "inexact integer division of polynomial");
    r.terms_.emplace(m, c / d);
  }
  return r;
}

Monomial Polynomial::monomial_content() const {
  Monomial g;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (first) {
      g = m;
      first = false;
      continue;
    }
    if (g.e.size() > m.e.size()) g.e.resize(m.e.size());
    for (size_t i = 0; i < g.e.size(); ++i) g.e[i] = std::min(g.e[i], m.e[i]);
    trim(g);
    if (g.e.empty()) break;
  }
  return g;
}

Polynomial Polynomial::divided_by_monomial(const Monomial& d) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    if (!mono_divides(d, m)) fail(errc::internal, "inexact monomial division of polynomial");
    r.terms_.emplace(mono_quotient(m, d), c);
  }
  return r;
}

Rat Polynomial::evaluate(const std::function<const Rat*(int)>& bind) const {
  Rat acc = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      const Rat* v = bind(static_cast<int>(i));
      if (!v) fail(errc::invalid_argument, "evaluate: unbound symbol id " + std::to_string(i));
      Rat p = 1;
      for (int k = 0; k < m.e[i]; ++k) p *= *v;
      t *= p;
    }
    acc += t;
  }
  return acc;
}

void Polynomial::collect_symbols(std::set<int>& out) const {
  for (const auto& [m, c] : terms_)
    for (size_t i = 0; i < m.e.size(); ++i)
      if (m.e[i] != 0) out.insert(static_cast<int>(i));
}

RationalExpr::RationalExpr(const Rat& r)
    : num_(Polynomial::constant(numerator(r))), den_(Polynomial::constant(denominator(r))) {}

RationalExpr::RationalExpr(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

RationalExpr RationalExpr::variable(int sym) { return from_poly(Polynomial::variable(sym)); }

void RationalExpr::canonicalize() {
  if (den_.is_zero()) fail(errc::invalid_argument, "division by zero");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  Int g = gcd(num_.content(), den_.content());
  if (g > 1) {
    num_ = num_.divided_by_int(g);
    den_ = den_.divided_by_int(g);
  }
  // Cancel the common monomial factor; without it, denominators of repeated
  // sums and products would pile up powers that nothing else removes.
  Monomial mg = num_.monomial_content();
  const Monomial md = den_.monomial_content();
  if (mg.e.size() > md.e.size()) mg.e.resize(md.e.size());
  for (size_t i = 0; i < mg.e.size(); ++i) mg.e[i] = std::min(mg.e[i], md.e[i]);
  while (!mg.e.empty() && mg.e.back() == 0) mg.e.pop_back();
  if (!mg.e.empty()) {
    num_ = num_.divided_by_monomial(mg);
    den_ = den_.divided_by_monomial(mg);
  }
  if (den_.leading().second < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

std::optional<Rat> RationalExpr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  if (num_.is_zero()) return Rat(0);
  return Rat(num_.constant_value()) / Rat(den_.constant_value());
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
  if (den_ == o.den_) return RationalExpr(num_ + o.num_, den_);
  return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const {
  if (den_ == o.den_) return RationalExpr(num_ - o.num_, den_);
  return RationalExpr(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
  return RationalExpr(num_ * o.num_, den_ * o.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
  if (o.num_.is_zero()) fail(errc::invalid_argument, "division by zero");
  return RationalExpr(num_ * o.den_, den_ * o.num_);
}

RationalExpr RationalExpr::pow(int n) const {
  check_exponent(n);
  if (n >= 0) return RationalExpr(num_.pow(n), den_.pow(n));
  if (num_.is_zero()) fail(errc::invalid_argument, "zero raised to a negative power");
  return RationalExpr(den_.pow(-n), num_.pow(-n));
}

bool RationalExpr::equals(const RationalExpr& o) const {
  return num_ * o.den_ == o.num_ * den_;
}

RationalExpr RationalExpr::derivative(int sym) const {
  // (n/d)' = (n'd - nd')/d^2
  Polynomial dn = num_.derivative(sym);
  Polynomial dd = den_.derivative(sym);
  if (dd.is_zero()) return RationalExpr(dn, den_);
  return RationalExpr(dn * den_ - num_ * dd, den_ * den_);
}

static RationalExpr subst_poly(const Polynomial& p, const std::map<int, RationalExpr>& bindings) {
  RationalExpr acc(Int(0));
  for (const auto& [m, c] : p.terms()) {
    RationalExpr t((Int(c)));
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      auto it = bindings.find(static_cast<int>(i));
      RationalExpr base = it != bindings.end() ? it->second : RationalExpr::variable(static_cast<int>(i));
      t = t * base.pow(m.e[i]);
    }
    acc = acc + t;
  }
  return acc;
}

RationalExpr RationalExpr::substitute(const std::map<int, RationalExpr>& bindings) const {
  RationalExpr n = subst_poly(num_, bindings);
  RationalExpr d = subst_poly(den_, bindings);
  if (d.is_zero()) fail(errc::invalid_argument, "substitution makes denominator zero");
  return n / d;
}

Rat RationalExpr::evaluate(const std::map<int, Rat>& point) const {
  auto bind = [&](int sym) -> const Rat* {
    auto it = point.find(sym);
    return it == point.end() ? nullptr : &it->second;
  };
  Rat d = den_.evaluate(bind);
  if (d == 0) fail(errc::invalid_argument, "evaluation point makes denominator zero");
  return num_.evaluate(bind) / d;
}

void RationalExpr::collect_symbols(std::set<int>& out) const {
  num_.collect_symbols(out);
  den_.collect_symbols(out);
}

std::string poly_str(const Polynomial& p, const SymbolTable& st) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Int a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::vector<std::string> factors;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      std::string f = st[static_cast<int>(i)].name;
      if (m.e[i] > 1) f += "^" + std::to_string(m.e[i]);
      factors.push_back(f);
    }
    if (factors.empty()) {
      os << a.str();
    } else {
      if (a != 1) os << a.str() << "*";
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
      }
    }
  }
  return os.str();
}

std::string RationalExpr::str(const SymbolTable& st) const {
  if (den_.is_one()) return poly_str(num_, st);
  return "(" + poly_str(num_, st) + ")/(" + poly_str(den_, st) + ")";
}

}  // namespace dw
