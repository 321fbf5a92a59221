#pragma once
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dw {

enum class SymbolKind {
  coordinate,
  momentum,
  multiplier,
  multiplier_momentum,
  parameter,
  velocity,             // auto-declared "<coordinate>dot"
  multiplier_function,  // auto-declared "u1", "u2", ... during the consistency chain
};

const char* kind_name(SymbolKind k);

// Phase-space symbols carry canonical bracket structure; parameters,
// velocities and chain multipliers do not.
inline bool is_phase_kind(SymbolKind k) {
  return k == SymbolKind::coordinate || k == SymbolKind::momentum ||
         k == SymbolKind::multiplier || k == SymbolKind::multiplier_momentum;
}

struct SymbolInfo {
  std::string name;
  SymbolKind kind;
  int conjugate = -1;  // coordinate <-> momentum pairing
};

// Declaration order is significant: it fixes the graded-lex monomial order.
class SymbolTable {
public:
  int declare(const std::string& name, SymbolKind kind);
  void pair(int q, int p);  // record q/p conjugacy
  int find(const std::string& name) const;  // -1 when absent
  int require(const std::string& name) const;
  const SymbolInfo& operator[](int i) const { return syms_.at(i); }
  int size() const { return static_cast<int>(syms_.size()); }

private:
  std::vector<SymbolInfo> syms_;
  std::map<std::string, int> index_;
};

}  // namespace dw
