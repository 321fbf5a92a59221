#include "reports.hpp"

#include "json.hpp"
#include "quantum.hpp"

namespace dw {

namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string analysis_report_json(const DiracStructure& ds) {
  const SymbolTable& st = ds.symtab;
  json j;
  j["model"] = ds.model_name;
  j["hamiltonian"] = ds.h.str(st);
  j["hamiltonian_total"] = ds.h_total.str(st);
  j["hamiltonian_reduced"] = ds.h_reduced.str(st);
  j["all_second_class"] = ds.all_second_class;
  j["rank"] = ds.rank;

  json cons = json::array();
  for (const Constraint& c : ds.constraints) {
    json e;
    e["expression"] = poly_str(c.p, st);
    e["generation"] = c.generation;
    e["origin"] = c.generation == 0 ? "primary" : "secondary";
    e["class"] = c.klass;
    cons.push_back(std::move(e));
  }
  j["constraints"] = std::move(cons);

  json mults = json::array();
  for (const Multiplier& u : ds.multipliers) {
    json e;
    e["name"] = st[u.sym].name;
    if (u.solved) {
      e["solution"] = u.solution.str(st);
      e["on_surface"] = ds.rules.reduce(u.solution).str(st);
    } else {
      e["solution"] = nullptr;
      e["on_surface"] = nullptr;
    }
    mults.push_back(std::move(e));
  }
  j["multipliers"] = std::move(mults);

  json rules = json::array();
  for (const RewriteRule& r : ds.rules.rules()) {
    json e;
    Polynomial lhs;
    lhs.add_term(r.lhs, 1);
    e["lhs"] = poly_str(lhs, st);
    e["rhs"] = poly_str(r.tail, st);
    rules.push_back(std::move(e));
  }
  j["rewrite_rules"] = std::move(rules);

  json mats;
  json m = json::array();
  for (size_t i = 0; i < ds.m.rows(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < ds.m.cols(); ++k) row.push_back(ds.m(i, k).str(st));
    m.push_back(std::move(row));
  }
  mats["m"] = std::move(m);
  if (ds.all_second_class) {
    json g = json::array();
    for (size_t i = 0; i < ds.g.rows(); ++i) {
      json row = json::array();
      for (size_t k = 0; k < ds.g.cols(); ++k) row.push_back(ds.g(i, k).str(st));
      g.push_back(std::move(row));
    }
    mats["g"] = std::move(g);
  }
  j["matrices"] = std::move(mats);

  if (ds.all_second_class) {
    json table;
    for (int a = 0; a < st.size(); ++a) {
      if (!is_phase_kind(st[a].kind)) continue;
      for (int b = a + 1; b < st.size(); ++b) {
        if (!is_phase_kind(st[b].kind)) continue;
        RationalExpr v = dirac_bracket(RationalExpr::variable(a), RationalExpr::variable(b), ds);
        table["[" + st[a].name + "," + st[b].name + "]_D"] = v.str(st);
      }
    }
    j["bracket_table"] = std::move(table);
  }

  StrongZeroReport sz = verify_strong_zero(ds);
  json szj;
  szj["checked"] = sz.checked;
  szj["violations"] = sz.violations;
  szj["failing"] = sz.failing;
  j["strong_zero"] = std::move(szj);

  return dump(j);
}

std::string spectrum_report_json(double r0, double mass, double hbar, double alpha, double beta,
                                 int levels, const std::string& method, int grid_n,
                                 bool include_e0) {
  RingParams p(r0, mass, hbar, alpha, beta);
  json j;
  j["method"] = method;
  j["r0"] = r0;
  j["mass"] = mass;
  j["hbar"] = hbar;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["alpha_reduced"] = p.alpha;
  j["beta_reduced"] = p.beta;
  j["include_e0"] = include_e0;
  j["e0"] = p.e0();

  if (method == "analytic") {
    std::vector<Level> lv = analytic_spectrum(p, levels, include_e0);
    json energies = json::array(), labels = json::array();
    for (const Level& l : lv) {
      energies.push_back(l.energy);
      labels.push_back(l.n);
    }
    j["levels"] = std::move(energies);
    j["labels"] = std::move(labels);
    j["ground_energy"] = ground_energy(p, include_e0);
  } else if (method == "grid") {
    j["levels"] = grid_spectrum(p, levels, grid_n, include_e0);
    j["grid_n"] = grid_n;
  } else {
    fail(errc::invalid_argument, "unknown spectrum method '" + method +
                                     "' (expected 'analytic' or 'grid')");
  }
  return dump(j);
}

std::string operator_report_json(double r0, double mass, double hbar, double alpha, double beta,
                                 int n) {
  RingParams p(r0, mass, hbar, alpha, beta);
  ResidualReport rep = algebra_residuals(p, n);
  OrderingDemo demo = nonhermitian_ordering_demo(p, n);

  json j;
  j["n"] = n;
  j["dim"] = rep.n;
  json params;
  params["r0"] = r0;
  params["mass"] = mass;
  params["hbar"] = hbar;
  params["alpha"] = alpha;
  params["beta"] = beta;
  params["alpha_reduced"] = p.alpha;
  params["beta_reduced"] = p.beta;
  j["params"] = std::move(params);
  j["hermiticity_defects"] = rep.hermiticity;
  j["commutator_residuals"] = rep.commutators;
  j["xh_heisenberg_residual"] = rep.heisenberg_x;
  j["xpy_minus_ypx_vs_lz"] = rep.lz_product;
  j["phi3_weyl_max"] = rep.phi3w_norm;
  json d;
  d["defect_a"] = demo.defect_a;
  d["defect_b"] = demo.defect_b;
  d["weyl_defect"] = demo.defect_weyl;
  d["skew_opposition"] = demo.skew_opposition;
  d["weyl_vs_px"] = demo.weyl_vs_px;
  j["ordering_demo"] = std::move(d);
  return dump(j);
}

}  // namespace dw
