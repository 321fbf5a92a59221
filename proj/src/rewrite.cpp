#include "rewrite.hpp"

#include <deque>

#include "errors.hpp"

namespace dw {

namespace {
constexpr int kMaxSweeps = 32;
constexpr size_t kMaxRules = 64;
constexpr size_t kMaxPairs = 4096;

// content 1, leading coefficient positive
Polynomial normalize(Polynomial p) {
  if (p.is_zero()) return p;
  Int g = p.content();
  if (g > 1) p = p.divided_by_int(g);
  if (p.leading().second < 0) p = -p;
  return p;
}
}  // namespace

AddRule RewriteSystem::add_relation(Polynomial relation) {
  relation = normalize(std::move(relation));
  if (relation.is_zero()) return AddRule::zero;
  if (relation.is_constant()) fail(errc::invalid_argument, "contradictory rewrite relation (nonzero constant)");
  for (const auto& r : rules_)
    if (r.relation == relation) return AddRule::duplicate;
  const auto& [lm, lc] = relation.leading();
  if (lc != 1) return AddRule::non_monic;
  if (rules_.size() >= kMaxRules) fail(errc::internal, "rewrite system exceeded rule budget");
  Polynomial tail;
  tail.add_term(lm, 1);
  tail = tail - relation;  // lhs - relation = tail
  rules_.push_back(RewriteRule{lm, std::move(tail), std::move(relation)});
  return AddRule::added;
}

const RewriteRule* RewriteSystem::match(const Monomial& m) const {
  for (const auto& r : rules_)
    if (mono_divides(r.lhs, m)) return &r;
  return nullptr;
}

Polynomial RewriteSystem::reduce(const Polynomial& p) const {
  if (rules_.empty()) return p;
  Polynomial cur = p;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    Polynomial next;
    bool changed = false;
    for (const auto& [m, c] : cur.terms()) {
      const RewriteRule* r = match(m);
      if (!r) {
        next.add_term(m, c);
        continue;
      }
      changed = true;
      next = next + r->tail.mul_term(mono_quotient(m, r->lhs), c);
    }
    if (!changed) return cur;
    cur = std::move(next);
  }
  fail(errc::internal, "rewrite reduction exceeded sweep budget");
}

RationalExpr RewriteSystem::reduce(const RationalExpr& e) const {
  if (rules_.empty()) return e;
  Polynomial n = reduce(e.num());
  Polynomial d = reduce(e.den());
  if (d.is_zero()) fail(errc::invalid_argument, "rewrite maps a denominator to zero");
  return RationalExpr(std::move(n), std::move(d));
}

void RewriteSystem::complete() {
  std::deque<std::pair<size_t, size_t>> pending;
  for (size_t j = 1; j < rules_.size(); ++j)
    for (size_t i = 0; i < j; ++i) pending.emplace_back(i, j);
  size_t processed = 0;
  while (!pending.empty()) {
    if (++processed > kMaxPairs) fail(errc::internal, "rewrite completion exceeded pair budget");
    auto [i, j] = pending.front();
    pending.pop_front();
    const Monomial &li = rules_[i].lhs, &lj = rules_[j].lhs;
    if (mono_coprime(li, lj)) continue;  // Buchberger's first criterion
    Monomial l = mono_lcm(li, lj);
    Polynomial s = rules_[i].relation.mul_term(mono_quotient(l, li), 1) -
                   rules_[j].relation.mul_term(mono_quotient(l, lj), 1);
    Polynomial rem = reduce(s);
    if (rem.is_zero()) continue;
    if (add_relation(std::move(rem)) == AddRule::added) {
      size_t k = rules_.size() - 1;
      for (size_t a = 0; a < k; ++a) pending.emplace_back(a, k);
    }
  }
}

std::string rule_str(const RewriteRule& r, const SymbolTable& st) {
  Polynomial lhs;
  lhs.add_term(r.lhs, 1);
  return poly_str(lhs, st) + " -> " + poly_str(r.tail, st);
}

}  // namespace dw
