#include "model_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "parser.hpp"
#include "rational.hpp"

namespace dw {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { fail(errc::invalid_argument, msg); }

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Names the loader keeps for itself: output columns, generated velocity
// names, and the chain multipliers u1, u2, ...
bool is_reserved(const std::string& s) {
  if (s == "t" || s == "H" || s == "Lz") return true;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "dot") == 0) return true;
  if (s.size() >= 2 && s[0] == 'u') {
    bool digits = true;
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
    if (digits) return true;
  }
  return false;
}

void check_symbol_name(const std::string& s) {
  if (!is_identifier(s)) bad("invalid symbol name '" + s + "'");
  if (is_reserved(s)) bad("symbol name '" + s + "' is reserved");
}

const json& get_field(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string(where) + " is missing the '" + key + "' field");
  return *it;
}

std::string get_string(const json& obj, const char* key, const char* where) {
  const json& v = get_field(obj, key, where);
  if (!v.is_string()) bad(std::string(where) + " field '" + key + "' must be a string");
  return v.get<std::string>();
}

// The relation behind a declared rule target == replacement, normalized to an
// integer polynomial. Only polynomial, non-constant relations are meaningful.
Polynomial relation_polynomial(const RationalExpr& target, const RationalExpr& replacement) {
  RationalExpr rel = target - replacement;
  if (!rel.den().is_constant()) bad("rewrite relations must be polynomial");
  Polynomial p = rel.num();
  if (p.is_zero()) bad("rewrite relation is identically zero");
  if (p.is_constant()) bad("rewrite relation reduces to a nonzero constant");
  Int c = p.content();
  if (p.leading().second < 0) c = -c;
  p = p.divided_by_int(c);
  if (p.leading().second != 1)
    bad("rewrite relation has a non-unit leading coefficient after normalization");
  return p;
}

}  // namespace

Model load_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse, std::string("model JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("model document must be a JSON object");

  static const std::set<std::string> known_keys = {
      "name", "symbols", "parameters", "lagrangian", "rewrite_rules", "sample_points", "defaults"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known_keys.count(it.key())) bad("unknown model field '" + it.key() + "'");

  Model model;
  model.name = doc.value("name", std::string("model"));
  if (model.name.empty()) bad("model name must be non-empty");

  // --- symbols -------------------------------------------------------------
  const json& symbols = get_field(doc, "symbols", "model");
  if (!symbols.is_array() || symbols.empty()) bad("'symbols' must be a non-empty array");

  struct Decl {
    std::string name, kind, conjugate;
  };
  std::vector<Decl> decls;
  std::set<std::string> names;
  std::set<std::string> multiplier_momenta;  // momenta whose owner is a multiplier
  for (const json& s : symbols) {
    if (!s.is_object()) bad("each symbol declaration must be an object");
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "name" && it.key() != "kind" && it.key() != "conjugate")
        bad("unknown symbol field '" + it.key() + "'");
    Decl d;
    d.name = get_string(s, "name", "symbol");
    d.kind = get_string(s, "kind", "symbol");
    check_symbol_name(d.name);
    if (!names.insert(d.name).second) bad("duplicate symbol '" + d.name + "'");
    if (d.kind == "coordinate" || d.kind == "multiplier") {
      d.conjugate = get_string(s, "conjugate", "symbol");
      if (d.conjugate == d.name) bad("symbol '" + d.name + "' cannot be its own conjugate");
      if (d.kind == "multiplier") multiplier_momenta.insert(d.conjugate);
    } else if (d.kind == "momentum") {
      if (s.contains("conjugate"))
        bad("momentum '" + d.name + "' must not declare a conjugate; its owner does");
    } else {
      bad("symbol '" + d.name + "' has unknown kind '" + d.kind +
          "' (expected coordinate, momentum or multiplier)");
    }
    decls.push_back(std::move(d));
  }

  for (const Decl& d : decls) {
    SymbolKind k;
    if (d.kind == "coordinate") k = SymbolKind::coordinate;
    else if (d.kind == "multiplier") k = SymbolKind::multiplier;
    else k = multiplier_momenta.count(d.name) ? SymbolKind::multiplier_momentum
                                              : SymbolKind::momentum;
    model.symtab.declare(d.name, k);
  }

  std::set<std::string> claimed;
  for (const Decl& d : decls) {
    if (d.conjugate.empty()) continue;
    int q = model.symtab.find(d.name);
    int p = model.symtab.find(d.conjugate);
    if (p < 0) bad("symbol '" + d.name + "' names undeclared conjugate '" + d.conjugate + "'");
    if (!claimed.insert(d.conjugate).second)
      bad("momentum '" + d.conjugate + "' is claimed by two symbols");
    model.symtab.pair(q, p);  // also rejects kind mismatches
    model.phase.pairs.emplace_back(q, p);
  }
  for (const Decl& d : decls)
    if (d.kind == "momentum" && !claimed.count(d.name))
      bad("momentum '" + d.name + "' is not the conjugate of any coordinate or multiplier");

  // --- parameters ----------------------------------------------------------
  if (doc.contains("parameters")) {
    const json& params = doc["parameters"];
    if (!params.is_object()) bad("'parameters' must be an object of rational strings");
    for (auto it = params.begin(); it != params.end(); ++it) {
      check_symbol_name(it.key());
      if (!it.value().is_string())
        bad("parameter '" + it.key() + "' must be a rational string like \"3/2\"");
      int id = model.symtab.declare(it.key(), SymbolKind::parameter);
      model.parameters[id] = parse_rational(it.value().get<std::string>());
    }
  }

  // --- velocities (one per coordinate and multiplier, declaration order) ----
  for (const auto& [q, p] : model.phase.pairs) {
    (void)p;
    int v = model.symtab.declare(model.symtab[q].name + "dot", SymbolKind::velocity);
    model.velocities.emplace_back(q, v);
  }

  // --- lagrangian ----------------------------------------------------------
  const json& lag = get_field(doc, "lagrangian", "model");
  if (!lag.is_string()) bad("'lagrangian' must be an expression string");
  model.lagrangian = parse_expr(lag.get<std::string>(), model.symtab);
  std::set<int> used;
  model.lagrangian.collect_symbols(used);
  for (int s : used) {
    SymbolKind k = model.symtab[s].kind;
    if (k != SymbolKind::coordinate && k != SymbolKind::multiplier &&
        k != SymbolKind::velocity && k != SymbolKind::parameter)
      bad("lagrangian may not reference " + std::string(kind_name(k)) + " '" +
          model.symtab[s].name + "'");
  }

  // --- declared rewrite relations -------------------------------------------
  if (doc.contains("rewrite_rules")) {
    const json& rules = doc["rewrite_rules"];
    if (!rules.is_array()) bad("'rewrite_rules' must be an array");
    for (const json& r : rules) {
      if (!r.is_object()) bad("each rewrite rule must be an object");
      RationalExpr target = parse_expr(get_string(r, "target", "rewrite rule"), model.symtab);
      RationalExpr repl = parse_expr(get_string(r, "replacement", "rewrite rule"), model.symtab);
      Polynomial rel = relation_polynomial(target, repl);
      std::set<int> rel_syms;
      rel.collect_symbols(rel_syms);
      for (int s : rel_syms) {
        SymbolKind k = model.symtab[s].kind;
        if (!is_phase_kind(k) && k != SymbolKind::parameter)
          bad("rewrite relations may only use phase-space symbols and parameters, not '" +
              model.symtab[s].name + "'");
      }
      model.declared_relations.push_back(std::move(rel));
    }
  }

  // --- sample points ---------------------------------------------------------
  const json& points = get_field(doc, "sample_points", "model");
  if (!points.is_array() || points.empty())
    bad("'sample_points' must be a non-empty array: at least one exact on-surface point");
  for (const json& pt : points) {
    if (!pt.is_object()) bad("each sample point must be an object of rational strings");
    std::map<int, Rat> binding;
    for (auto it = pt.begin(); it != pt.end(); ++it) {
      int id = model.symtab.find(it.key());
      if (id < 0 || !is_phase_kind(model.symtab[id].kind))
        bad("sample point binds '" + it.key() + "', which is not a phase-space symbol");
      if (!it.value().is_string())
        bad("sample point value for '" + it.key() + "' must be a rational string");
      binding[id] = parse_rational(it.value().get<std::string>());
    }
    for (const auto& [q, p] : model.phase.pairs) {
      if (!binding.count(q)) bad("sample point does not bind '" + model.symtab[q].name + "'");
      if (!binding.count(p)) bad("sample point does not bind '" + model.symtab[p].name + "'");
    }
    for (const auto& [id, value] : model.parameters) binding[id] = value;
    for (const Polynomial& rel : model.declared_relations) {
      Rat v = RationalExpr::from_poly(rel).evaluate(binding);
      if (v != 0)
        bad("sample point violates declared relation " + poly_str(rel, model.symtab) + " = 0");
    }
    model.sample_points.push_back(std::move(binding));
  }

  // --- numeric defaults -------------------------------------------------------
  if (doc.contains("defaults")) {
    const json& d = doc["defaults"];
    if (!d.is_object()) bad("'defaults' must be an object");
    for (auto it = d.begin(); it != d.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      auto positive_int = [&](int lo) {
        if (!v.is_number_integer() || v.get<long long>() < lo)
          bad("default '" + key + "' must be an integer >= " + std::to_string(lo));
        return static_cast<int>(v.get<long long>());
      };
      if (key == "h") {
        if (!v.is_number() || !(v.get<double>() > 0) || !std::isfinite(v.get<double>()))
          bad("default 'h' must be a positive number");
        model.defaults.h = v.get<double>();
      } else if (key == "steps") {
        model.defaults.steps = positive_int(1);
      } else if (key == "levels") {
        model.defaults.levels = positive_int(1);
      } else if (key == "op_n") {
        model.defaults.op_n = positive_int(2);
      } else if (key == "grid_n") {
        model.defaults.grid_n = positive_int(16);
      } else {
        bad("unknown default '" + key + "'");
      }
    }
  }

  return model;
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(errc::io, "error reading model file: " + path);
  return load_model_json(buf.str());
}

}  // namespace dw
