#include "symtab.hpp"

namespace dw {

const char* kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::coordinate: return "coordinate";
    case SymbolKind::momentum: return "momentum";
    case SymbolKind::multiplier: return "multiplier";
    case SymbolKind::multiplier_momentum: return "multiplier-momentum";
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::velocity: return "velocity";
    case SymbolKind::multiplier_function: return "multiplier-function";
  }
  return "?";
}

int SymbolTable::declare(const std::string& name, SymbolKind kind) {
  if (name.empty()) fail(errc::parse, "empty symbol name");
  if (index_.count(name)) fail(errc::parse, "duplicate symbol '" + name + "'");
  int id = static_cast<int>(syms_.size());
  syms_.push_back({name, kind, -1});
  index_[name] = id;
  return id;
}

void SymbolTable::pair(int q, int p) {
  auto& qi = syms_.at(q);
  auto& pi = syms_.at(p);
  bool ok = (qi.kind == SymbolKind::coordinate && pi.kind == SymbolKind::momentum) ||
            (qi.kind == SymbolKind::multiplier && pi.kind == SymbolKind::multiplier_momentum);
  if (!ok)
    fail(errc::parse, "cannot pair '" + qi.name + "' (" + kind_name(qi.kind) + ") with '" +
                          pi.name + "' (" + kind_name(pi.kind) + ")");
  if (qi.conjugate != -1 || pi.conjugate != -1)
    fail(errc::parse, "symbol '" + qi.name + "' or '" + pi.name + "' already paired");
  qi.conjugate = p;
  pi.conjugate = q;
}

int SymbolTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int SymbolTable::require(const std::string& name) const {
  int id = find(name);
  if (id < 0) fail(errc::parse, "unknown symbol '" + name + "'");
  return id;
}

}  // namespace dw
