#include "analysis.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "errors.hpp"

namespace dw {

namespace {

constexpr int kMaxGenerations = 10;

// Normalized numerator: integer content divided out, positive leading coefficient.
Polynomial normalized_numerator(const RationalExpr& e) {
  Polynomial p = e.num();
  if (p.is_zero()) return p;
  Int c = p.content();
  if (p.leading().second < 0) c = -c;
  return p.divided_by_int(c);
}

int momentum_of(const SymbolTable& st, int config_sym) {
  int p = st[config_sym].conjugate;
  if (p < 0)
    fail(errc::internal, "configuration symbol without a conjugate momentum: " + st[config_sym].name);
  return p;
}

}  // namespace

LegendreResult legendre_analyze(const Model& model) {
  const SymbolTable& st = model.symtab;
  const RationalExpr& L = model.lagrangian;
  const auto& vel = model.velocities;
  const int n = static_cast<int>(vel.size());

  // dL/dv_i and the velocity Hessian w_ij = d2L/dv_i dv_j.
  std::vector<RationalExpr> dL(n);
  for (int i = 0; i < n; ++i) dL[i] = L.derivative(vel[i].second);
  std::vector<std::vector<RationalExpr>> w(n, std::vector<RationalExpr>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[i][j] = dL[i].derivative(vel[j].second);
      for (const auto& [base, v] : vel)
        if (w[i][j].contains(v))
          fail(errc::singular_structure,
               "Lagrangian is not quadratic in the velocities (Hessian depends on " + st[v].name + ")");
    }

  // b_i = dL/dv_i at v = 0, so dL/dv_i = sum_j w_ij v_j + b_i.
  std::map<int, RationalExpr> vel_zero;
  for (const auto& [base, v] : vel) vel_zero[v] = RationalExpr(Int(0));
  std::vector<RationalExpr> b(n);
  for (int i = 0; i < n; ++i) b[i] = dL[i].substitute(vel_zero);

  std::vector<int> zero_rows, present;
  for (int i = 0; i < n; ++i) {
    bool all_zero = true;
    for (int j = 0; j < n; ++j) all_zero = all_zero && w[i][j].is_zero();
    (all_zero ? zero_rows : present).push_back(i);
  }

  // Solve the invertible block exactly: v* = W^-1 (p - b) on the present rows,
  // undetermined velocities pinned to zero.
  std::vector<RationalExpr> vstar(n, RationalExpr(Int(0)));
  const int np = static_cast<int>(present.size());
  if (np > 0) {
    RationalMatrix wp = RationalMatrix::zero(np, np);
    for (int a = 0; a < np; ++a)
      for (int c = 0; c < np; ++c) wp(a, c) = w[present[a]][present[c]];
    RationalMatrix winv;
    try {
      RewriteSystem no_rules;
      winv = invert_matrix(wp, no_rules);
    } catch (const Error& e) {
      if (e.code() == errc::first_class)
        fail(errc::singular_structure, "velocity Hessian block is singular");
      throw;
    }
    for (int a = 0; a < np; ++a) {
      RationalExpr v(Int(0));
      for (int c = 0; c < np; ++c) {
        int j = present[c];
        RationalExpr pj = RationalExpr::variable(momentum_of(st, vel[j].first));
        v = v + winv(a, c) * (pj - b[j]);
      }
      vstar[present[a]] = v;
    }
  }

  // H = sum_i p_i v*_i - L(v*).
  std::map<int, RationalExpr> vel_star;
  for (int i = 0; i < n; ++i) vel_star[vel[i].second] = vstar[i];
  RationalExpr h(Int(0));
  for (int i = 0; i < n; ++i) {
    if (vstar[i].is_zero()) continue;
    h = h + RationalExpr::variable(momentum_of(st, vel[i].first)) * vstar[i];
  }
  h = h - L.substitute(vel_star);
  for (const auto& [base, v] : vel)
    if (h.contains(v)) fail(errc::internal, "a velocity survived the Legendre transform");

  LegendreResult out;
  out.h = h;
  for (int i : zero_rows) {
    RationalExpr phi = RationalExpr::variable(momentum_of(st, vel[i].first)) - b[i];
    Polynomial p = normalized_numerator(phi);
    if (p.is_zero()) fail(errc::internal, "degenerate primary constraint");
    out.primaries.push_back(p);
  }
  return out;
}

DiracStructure analyze(const Model& model) {
  DiracStructure ds;
  ds.model_name = model.name;
  ds.symtab = model.symtab;
  ds.phase = model.phase;
  ds.parameters = model.parameters;
  ds.sample_points = model.sample_points;
  ds.defaults = model.defaults;

  LegendreResult leg = legendre_analyze(model);
  ds.h = leg.h;

  // Primary constraints each get a multiplier: H_T = H + sum_j u_j phi_j.
  ds.h_total = ds.h;
  for (size_t j = 0; j < leg.primaries.size(); ++j) {
    int u = ds.symtab.declare("u" + std::to_string(j + 1), SymbolKind::multiplier_function);
    ds.multipliers.push_back({u, static_cast<int>(j), false, RationalExpr()});
    ds.constraints.push_back({leg.primaries[j], 0, "unknown"});
    ds.h_total = ds.h_total + RationalExpr::variable(u) * RationalExpr::from_poly(leg.primaries[j]);
  }

  // Constraints whose normal form is monic seed the rewrite system.
  auto absorb_relation = [&](const Polynomial& p) {
    if (ds.rules.add_relation(p) == AddRule::added) ds.rules.complete();
  };
  for (const auto& c : ds.constraints) absorb_relation(c.p);

  auto is_u = [&](int s) { return ds.symtab[s].kind == SymbolKind::multiplier_function; };
  auto all_u_zero = [&]() {
    std::map<int, RationalExpr> m;
    for (const auto& mult : ds.multipliers) m[mult.sym] = RationalExpr(Int(0));
    return m;
  };

  // Generation-by-generation consistency: for each constraint require
  // [phi, H_T] ~ 0 and classify the outcome.
  std::deque<size_t> pending;
  for (size_t i = 0; i < ds.constraints.size(); ++i) pending.push_back(i);
  while (!pending.empty()) {
    const Constraint cons = ds.constraints[pending.front()];
    pending.pop_front();

    RationalExpr c = poisson_bracket(cons.expr(), ds.h_total, ds.phase);
    RationalExpr cred = ds.rules.reduce(c);
    if (cred.is_zero()) continue;  // holds identically on the surface

    std::set<int> syms;
    cred.collect_symbols(syms);
    std::vector<int> us;
    bool has_phase = false;
    for (int s : syms) {
      if (is_u(s))
        us.push_back(s);
      else if (is_phase_kind(ds.symtab[s].kind))
        has_phase = true;
    }

    if (!us.empty()) {
      // The condition fixes a multiplier: c = A u + B (+ weakly vanishing terms).
      if (us.size() > 1)
        fail(errc::singular_structure, "coupled multiplier equations are not supported");
      int u = us.front();
      auto mit = std::find_if(ds.multipliers.begin(), ds.multipliers.end(),
                              [&](const Multiplier& m) { return m.sym == u; });
      if (mit->solved)
        fail(errc::singular_structure,
             "multiplier " + ds.symtab[u].name + " is fixed by two distinct conditions");
      RationalExpr a = c.derivative(u);
      if (c.degree_in(u) != 1 || a.contains(u))
        fail(errc::singular_structure,
             "consistency condition is nonlinear in " + ds.symtab[u].name);
      RationalExpr bb = c.substitute(all_u_zero());
      if (!ds.rules.reduce(c - a * RationalExpr::variable(u) - bb).is_zero())
        fail(errc::singular_structure, "coupled multiplier equations are not supported");
      if (ds.rules.reduce(a).is_zero())
        fail(errc::singular_structure,
             "multiplier coefficient vanishes on the constraint surface");
      mit->solved = true;
      mit->solution = -(bb / a);
      continue;
    }

    if (!has_phase)
      fail(errc::inconsistent_chain, "consistency of '" + poly_str(cons.p, ds.symtab) +
                                         "' demands a nonzero constant vanish");

    // New constraint: the multiplier-free part of the unreduced condition.
    Polynomial next = normalized_numerator(c.substitute(all_u_zero()));
    if (next.is_zero()) fail(errc::internal, "empty consistency residue");
    bool dup = false;
    for (const auto& existing : ds.constraints) dup = dup || existing.p == next;
    if (dup) continue;
    if (cons.generation + 1 > kMaxGenerations)
      fail(errc::singular_structure, "consistency chain exceeded " +
                                         std::to_string(kMaxGenerations) + " generations");
    ds.constraints.push_back({next, cons.generation + 1, "unknown"});
    pending.push_back(ds.constraints.size() - 1);
    absorb_relation(next);
  }

  // Declared relations join after the chain so they cannot mask a step of it.
  for (const Polynomial& rel : model.declared_relations) {
    AddRule r = ds.rules.add_relation(rel);
    if (r == AddRule::non_monic)
      fail(errc::invalid_argument,
           "declared rewrite relation is not monic: " + poly_str(rel, ds.symtab));
    if (r == AddRule::added) ds.rules.complete();
  }

  ds.h_reduced = ds.rules.reduce(ds.h);

  // Mutual brackets, classification, and the inverse modulo the rules.
  std::vector<RationalExpr> cexprs;
  for (const auto& c : ds.constraints) cexprs.push_back(c.expr());
  ds.m = bracket_matrix(cexprs, ds.phase);
  try {
    ds.g = invert_matrix(ds.m, ds.rules);
    ds.all_second_class = true;
    for (auto& c : ds.constraints) c.klass = "second";
  } catch (const Error& e) {
    if (e.code() != errc::first_class) throw;
    ds.all_second_class = false;
    for (size_t i = 0; i < ds.constraints.size(); ++i) {
      bool row_zero = true;
      for (size_t j = 0; j < ds.constraints.size(); ++j)
        row_zero = row_zero && ds.rules.reduce(ds.m(i, j)).is_zero();
      ds.constraints[i].klass = row_zero ? "first" : "unknown";
    }
  }

  ds.rank = ds.constraints.empty() ? 0 : rank_at_points(ds.m, cexprs, ds.sample_points);

  for (auto [q, p] : ds.phase.pairs)
    if (ds.symtab[q].kind == SymbolKind::coordinate) ds.state_syms.push_back(q);
  for (auto [q, p] : ds.phase.pairs)
    if (ds.symtab[q].kind == SymbolKind::coordinate) ds.state_syms.push_back(p);

  return ds;
}

RationalExpr dirac_bracket(const RationalExpr& f, const RationalExpr& g, const DiracStructure& ds) {
  if (!ds.constraints.empty() && !ds.all_second_class)
    fail(errc::first_class, "Dirac bracket needs an invertible constraint matrix; "
                            "first-class constraints are present");
  RationalExpr out = poisson_bracket(f, g, ds.phase);
  const size_t n = ds.constraints.size();
  if (n > 0) {
    std::vector<RationalExpr> fc(n), cg(n);
    for (size_t i = 0; i < n; ++i) {
      fc[i] = poisson_bracket(f, ds.constraints[i].expr(), ds.phase);
      cg[i] = poisson_bracket(ds.constraints[i].expr(), g, ds.phase);
    }
    for (size_t i = 0; i < n; ++i) {
      if (fc[i].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (cg[j].is_zero() || ds.g(i, j).is_zero()) continue;
        out = out - fc[i] * ds.g(i, j) * cg[j];
      }
    }
  }
  return ds.rules.reduce(out);
}

StrongZeroReport verify_strong_zero(const DiracStructure& ds) {
  StrongZeroReport rep;
  if (!ds.all_second_class && !ds.constraints.empty()) return rep;
  std::vector<std::pair<std::string, RationalExpr>> observables;
  for (int s = 0; s < ds.symtab.size(); ++s)
    if (is_phase_kind(ds.symtab[s].kind))
      observables.emplace_back(ds.symtab[s].name, RationalExpr::variable(s));
  observables.emplace_back("H", ds.h);
  for (const auto& [name, a] : observables) {
    for (const auto& c : ds.constraints) {
      ++rep.checked;
      if (!dirac_bracket(a, c.expr(), ds).is_zero()) {
        ++rep.violations;
        rep.failing.push_back("[" + name + "," + poly_str(c.p, ds.symtab) + "]");
      }
    }
  }
  return rep;
}

}  // namespace dw
