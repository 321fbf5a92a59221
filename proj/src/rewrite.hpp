#pragma once
#include <string>
#include <vector>

#include "rational_expr.hpp"

namespace dw {

// A monic rewrite rule lhs -> tail, recording the relation lhs - tail == 0.
// Only monic rules (unit leading coefficient after content/sign
// normalization) are admitted, which keeps all reductions in integer
// arithmetic.
struct RewriteRule {
  Monomial lhs;
  Polynomial tail;
  Polynomial relation;  // lhs - tail, content 1, leading coefficient +1
};

enum class AddRule { added, duplicate, non_monic, zero };

class RewriteSystem {
public:
  // Registers "relation == 0" as a rule rewriting its leading monomial.
  // The relation is normalized (integer content divided out, leading
  // coefficient made positive). A nonzero constant relation is contradictory
  // and raises an error; a non-monic relation is reported but not added.
  AddRule add_relation(Polynomial relation);

  // Simultaneous-sweep normal form: every reducible monomial is replaced by
  // the tail of the first matching rule until no monomial is reducible.
  Polynomial reduce(const Polynomial& p) const;
  RationalExpr reduce(const RationalExpr& e) const;

  // Bounded Buchberger-style closure: processes critical pairs FIFO, adding
  // each nonzero monic S-polynomial remainder as a new rule. Non-monic
  // remainders are skipped. Errors if the rule or pair budget is exceeded.
  void complete();

  const std::vector<RewriteRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  size_t size() const { return rules_.size(); }

private:
  const RewriteRule* match(const Monomial& m) const;
  std::vector<RewriteRule> rules_;
};

std::string rule_str(const RewriteRule& r, const SymbolTable& st);

}  // namespace dw
