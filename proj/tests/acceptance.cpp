// Acceptance gate: ten independent criteria checked at fixed tolerances.
// Prints one PASS/FAIL line per criterion and exits with the failure count.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "model_io.hpp"
#include "parser.hpp"
#include "quantum.hpp"

using namespace dw;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool proportional(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.mul_int(b.leading().second) == b.mul_int(a.leading().second);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// --- criterion 1: primary constraint chain -------------------------------

void criterion1(const DiracStructure& ds, double analyze_seconds) {
  auto P = [&](const char* s) { return parse_expr(s, ds.symtab); };
  bool ok = analyze_seconds < 1.0;
  const char* chain[4] = {"plam", "x^2 + y^2 - r0^2", "x*px + y*py",
                          "2*x^2*lam + 2*y^2*lam - px^2 - py^2"};
  ok = ok && ds.constraints.size() == 4;
  if (ok)
    for (int i = 0; i < 4; ++i) {
      ok = ok && proportional(ds.constraints[i].p, P(chain[i]).num());
      ok = ok && ds.constraints[i].generation == i;
    }
  ok = ok && ds.multipliers.size() == 1 && ds.multipliers[0].solved &&
       ds.multipliers[0].solution.equals(P("(-4*x*lam*px - 4*y*lam*py)/(x^2 + y^2)"));
  report(1, ok, "four-constraint chain and solved multiplier",
         "analysis took " + fmt(analyze_seconds) + " s");
}

// --- criterion 2: constraint matrix and symbolic inverse ------------------

void criterion2(const DiracStructure& ds) {
  auto P = [&](const std::string& s) { return parse_expr(s, ds.symtab); };
  // orientation of the final constraint: sign of its px^2 coefficient
  Monomial px2 = P("px^2").num().leading().first;
  auto it = ds.constraints[3].p.terms().find(px2);
  int s4 = (it != ds.constraints[3].p.terms().end() && it->second > 0) ? 1 : -1;
  std::string sgn = s4 == 1 ? "" : "-";

  bool ok = ds.all_second_class;
  ok = ok && ds.m(1, 2).equals(P("2*(x^2 + y^2)"));
  ok = ok && ds.m(0, 3).equals(P(sgn + "2*(x^2 + y^2)"));
  ok = ok && ds.m(1, 3).equals(P(sgn + "4*(x*px + y*py)"));
  ok = ok && ds.m(2, 3).equals(P(sgn + "(2*(px^2 + py^2) + 4*lam*(x^2 + y^2))"));
  ok = ok && ds.g(0, 3).equals(P(sgn + "(-1)/(2*r0^2)"));
  ok = ok && ds.g(0, 1).equals(P("-(px^2 + py^2 + 2*lam*r0^2)/(2*r0^4)"));
  // exact inverse in the quotient ring
  for (size_t i = 0; i < 4 && ok; ++i)
    for (size_t j = 0; j < 4 && ok; ++j) {
      RationalExpr acc;
      for (size_t k = 0; k < 4; ++k) acc = acc + ds.m(i, k) * ds.g(k, j);
      acc = ds.rules.reduce(acc);
      ok = (i == j) ? acc.equals(P("1")) : acc.is_zero();
    }
  report(2, ok, "constraint matrix pattern and exact inverse modulo rules",
         std::string("orientation ") + (s4 == 1 ? "+1" : "-1"));
}

// --- criterion 3: Dirac bracket table -------------------------------------

void criterion3(const DiracStructure& ds) {
  auto P = [&](const char* s) { return parse_expr(s, ds.symtab); };
  auto weak_eq = [&](const RationalExpr& a, const RationalExpr& b) {
    return ds.rules.reduce(a - b).is_zero();
  };
  auto db = [&](const char* a, const char* b) { return dirac_bracket(P(a), P(b), ds); };
  bool ok = weak_eq(db("x", "px"), P("1 - x^2/r0^2"));
  ok = ok && weak_eq(db("y", "py"), P("1 - y^2/r0^2"));
  ok = ok && weak_eq(db("x", "py"), P("-x*y/r0^2"));
  ok = ok && weak_eq(db("y", "px"), P("-x*y/r0^2"));
  ok = ok && db("x", "y").is_zero();
  ok = ok && weak_eq(db("px", "py"), P("(y*px - x*py)/r0^2"));
  ok = ok && db("lam", "plam").is_zero();
  report(3, ok, "six phase-pair Dirac brackets plus the multiplier pair", "");
}

// --- criterion 4: strong-zero property -------------------------------------

void criterion4(const DiracStructure& ds) {
  StrongZeroReport sz = verify_strong_zero(ds);
  bool ok = sz.checked == 28 && sz.violations == 0;
  report(4, ok, "all 28 strong-zero reductions vanish identically",
         "checked " + std::to_string(sz.checked) + ", violations " +
             std::to_string(sz.violations));
}

// --- criterion 5: reduced Hamiltonian is the angular-momentum form ---------

void criterion5(const DiracStructure& ds) {
  auto P = [&](const char* s) { return parse_expr(s, ds.symtab); };
  RationalExpr diff = P("(px^2 + py^2)/2") - P("(x*py - y*px)^2/(2*r0^2)");
  bool ok = ds.rules.reduce(diff).is_zero();
  ok = ok && ds.h_reduced.equals(P("(px^2 + py^2)/2"));
  report(5, ok, "kinetic energy reduces to (x*py - y*px)^2 / (2*r0^2)", "");
}

// --- criterion 6: constrained integrator ------------------------------------

void criterion6(const DiracStructure& ds) {
  auto t0 = std::chrono::steady_clock::now();
  SimulationResult r = simulate(ds, "dirac-rk4", 1e-3, 10000, {1, 0, 0, 1});
  double mphi = 0, mde = 0, mdl = 0, mex = 0;
  double h0 = r.rows.front()[7], l0 = r.rows.front()[8];
  for (const auto& row : r.rows) {
    mphi = std::max(mphi, std::max(std::abs(row[5]), std::abs(row[6])));
    mde = std::max(mde, std::abs(row[7] - h0) / std::abs(h0));
    mdl = std::max(mdl, std::abs(row[8] - l0) / std::abs(l0));
    double t = row[0];
    double e = std::max(std::abs(row[1] - std::cos(t)), std::abs(row[2] - std::sin(t)));
    e = std::max(e, std::max(std::abs(row[3] + std::sin(t)), std::abs(row[4] - std::cos(t))));
    mex = std::max(mex, e);
  }
  bool ok = mphi <= 1e-8 && mde <= 1e-8 && mdl <= 1e-8 && mex <= 1e-7;

  // convergence order over three step halvings at t = 1
  double errs[4];
  double h = 0.05;
  int steps = 20;
  for (int k = 0; k < 4; ++k, h /= 2, steps *= 2) {
    SimulationResult c = simulate(ds, "dirac-rk4", h, steps, {1, 0, 0, 1});
    const auto& row = c.rows.back();
    double t = row[0];
    double e = std::max(std::abs(row[1] - std::cos(t)), std::abs(row[2] - std::sin(t)));
    e = std::max(e, std::max(std::abs(row[3] + std::sin(t)), std::abs(row[4] - std::cos(t))));
    errs[k] = e;
  }
  double omin = 8, omax = 0;
  for (int k = 0; k < 3; ++k) {
    double o = std::log2(errs[k] / errs[k + 1]);
    omin = std::min(omin, o);
    omax = std::max(omax, o);
  }
  ok = ok && omin >= 3.5 && omax <= 4.5;
  double dt = seconds_since(t0);
  ok = ok && dt < 5.0;
  report(6, ok, "rk4 drift, accuracy and fourth-order convergence",
         "max|phi| " + fmt(mphi) + ", rel dE " + fmt(mde) + ", rel dLz " + fmt(mdl) +
             ", vs exact " + fmt(mex) + ", order [" + fmt(omin) + ", " + fmt(omax) + "], " +
             fmt(dt) + " s");
}

// --- criterion 7: ring spectra ----------------------------------------------

void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;

  // closed form at generic parameters
  RingParams gp(1.7, 2.3, 0.9, 0.3, 0.7);
  std::vector<Level> gl = analytic_spectrum(gp, 7, true);
  for (const Level& l : gl) {
    double nu = l.n + gp.beta - gp.alpha;
    double want = gp.hbar * gp.hbar * nu * nu / (2 * gp.mass * gp.r0 * gp.r0) + gp.e0();
    if (std::abs(l.energy - want) > 1e-14 * std::max(1.0, std::abs(want))) ok = false;
  }
  RingParams def;
  std::vector<Level> dl = analytic_spectrum(def, 5, true);
  const double want_def[5] = {0.125, 0.625, 0.625, 2.125, 2.125};
  for (int i = 0; i < 5; ++i)
    if (dl[i].energy != want_def[i]) ok = false;

  // finite-difference grid at 128 points against the first five levels
  auto grid_err = [&](int n) {
    std::vector<double> g = grid_spectrum(def, 5, n, true);
    double e = 0;
    for (int i = 0; i < 5; ++i) e = std::max(e, std::abs(g[i] - dl[i].energy));
    return e;
  };
  double e128 = grid_err(128), e256 = grid_err(256);
  if (e128 > 2e-4) {
    ok = false;
    note = "grid(128) max error " + fmt(e128) + " exceeds 2e-4 on the fifth level; " +
           "second-order model needs ~352 points for that bound";
  }
  // second-order convergence under grid doubling
  double order = std::log2(e128 / e256);
  if (order < 1.5 || order > 2.5) ok = false;

  // ground state tracks the spectrum minimum across the flux
  for (int k = 0; k < 100; ++k) {
    RingParams p(1, 1, 1, k / 100.0, 0);
    if (std::abs(ground_energy(p, true) - analytic_spectrum(p, 5, true)[0].energy) > 1e-14)
      ok = false;
  }

  // integer flux shift is a relabeling: dyadic shift is bit-exact
  RingParams a(1, 1, 1, 0.25, 0.5), b(1, 1, 1, 1.25, 0.5);
  std::vector<Level> la = analytic_spectrum(a, 6, true), lb = analytic_spectrum(b, 6, true);
  for (size_t i = 0; i < la.size(); ++i)
    if (la[i].energy != lb[i].energy) ok = false;
  std::vector<double> ga = grid_spectrum(a, 5, 64, true), gb = grid_spectrum(b, 5, 64, true);
  for (size_t i = 0; i < ga.size(); ++i)
    if (std::abs(ga[i] - gb[i]) > 1e-10) ok = false;

  double dt = seconds_since(t0);
  if (dt >= 10.0) ok = false;
  if (note.empty()) note = "grid(128) max error " + fmt(e128);
  report(7, ok, "analytic and grid spectra",
         note + ", doubling order " + fmt(order) + ", " + fmt(dt) + " s");
}

// --- criterion 8: constant offset is a bitwise shift ------------------------

void criterion8() {
  RingParams p(1.3, 2.1, 0.9, 0.19, 0.77);
  bool ok = true;
  std::vector<Level> on = analytic_spectrum(p, 7, true), off = analytic_spectrum(p, 7, false);
  for (size_t i = 0; i < on.size(); ++i)
    if (on[i].energy != off[i].energy + p.e0()) ok = false;
  std::vector<double> gon = grid_spectrum(p, 5, 64, true), goff = grid_spectrum(p, 5, 64, false);
  for (size_t i = 0; i < gon.size(); ++i)
    if (gon[i] != goff[i] + p.e0()) ok = false;
  report(8, ok, "offset toggles shift every level by exactly e0", "e0 = " + fmt(p.e0()));
}

// --- criterion 9: operator truncation ---------------------------------------

void criterion9() {
  RingParams def;
  ResidualReport r = algebra_residuals(def, 16);
  bool ok = true;
  double hmax = 0, cmax = 0;
  for (const auto& [name, v] : r.hermiticity) hmax = std::max(hmax, v);
  for (const auto& [name, v] : r.commutators) cmax = std::max(cmax, v);
  ok = ok && hmax == 0.0;
  ok = ok && cmax <= 1e-12;
  ok = ok && r.phi3w_norm <= 1e-14;
  OrderingDemo d = nonhermitian_ordering_demo(def, 16);
  ok = ok && d.defect_a > 1e-2 && d.defect_b > 1e-2;
  ok = ok && d.defect_weyl == 0.0;
  report(9, ok, "hermiticity, commutator residuals and ordering defect",
         "herm " + fmt(hmax) + ", comm " + fmt(cmax) + ", phi3w " + fmt(r.phi3w_norm) +
             ", naive defect " + fmt(d.defect_a));
}

// --- criterion 10: bracket axioms and the surface Jacobi identity -----------

void criterion10(const DiracStructure& ds) {
  // random rational-coefficient polynomials over one canonical pair set
  SymbolTable st;
  int x = st.declare("x", SymbolKind::coordinate);
  int y = st.declare("y", SymbolKind::coordinate);
  int px = st.declare("px", SymbolKind::momentum);
  int py = st.declare("py", SymbolKind::momentum);
  st.pair(x, px);
  st.pair(y, py);
  PhaseSpace ps{{{x, px}, {y, py}}};
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> coef(-3, 3), var(0, 3), deg(0, 2), nterms(1, 4);
  auto rnd = [&] {
    Polynomial p;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      Monomial m;
      int d = deg(rng);
      for (int i = 0; i < d; ++i) m = mono_mul(m, mono_var(var(rng)));
      int c = coef(rng);
      p.add_term(m, c == 0 ? 1 : c);
    }
    return RationalExpr::from_poly(p);
  };
  int cases = 0;
  bool ok = true;
  for (int it = 0; it < 25; ++it) {
    RationalExpr a = rnd(), b = rnd(), c = rnd();
    ok = ok && poisson_bracket(a, b, ps).equals(-poisson_bracket(b, a, ps));
    ok = ok && poisson_bracket(a + b, c, ps)
                   .equals(poisson_bracket(a, c, ps) + poisson_bracket(b, c, ps));
    ok = ok && poisson_bracket(a * b, c, ps)
                   .equals(a * poisson_bracket(b, c, ps) + poisson_bracket(a, c, ps) * b);
    ok = ok && (poisson_bracket(a, poisson_bracket(b, c, ps), ps) +
                poisson_bracket(b, poisson_bracket(c, a, ps), ps) +
                poisson_bracket(c, poisson_bracket(a, b, ps), ps))
                   .is_zero();
    cases += 4;
  }

  // Dirac-bracket Jacobiator at exact rational points of the surface
  auto P = [&](const char* s) { return parse_expr(s, ds.symtab); };
  const int ix = ds.symtab.require("x"), iy = ds.symtab.require("y");
  const int ipx = ds.symtab.require("px"), ipy = ds.symtab.require("py");
  const int ilam = ds.symtab.require("lam"), iplam = ds.symtab.require("plam");
  std::vector<std::map<int, Rat>> points;
  const Rat ts[10] = {Rat(0), Rat(1), Rat(-1), Rat(2),  Rat(1, 2),
                      Rat(-1, 2), Rat(3), Rat(1, 3), Rat(-2), Rat(1, 4)};
  for (int i = 0; i < 10; ++i) {
    const Rat& t = ts[i];
    Rat k = Rat(i + 1, 2);
    Rat den = 1 + t * t;
    std::map<int, Rat> pt = ds.parameters;
    pt[ix] = (1 - t * t) / den;
    pt[iy] = 2 * t / den;
    pt[ipx] = -k * pt[iy];
    pt[ipy] = k * pt[ix];
    pt[ilam] = k * k / 2;
    pt[iplam] = 0;
    points.push_back(std::move(pt));
  }
  std::vector<RationalExpr> pool = {P("x"),  P("y"),   P("px"),
                                    P("py"), P("lam"), P("x*py")};
  auto db = [&](const RationalExpr& a, const RationalExpr& b) { return dirac_bracket(a, b, ds); };
  int triples = 0, evals = 0;
  for (size_t a = 0; a < pool.size() && triples < 10; ++a)
    for (size_t b = a + 1; b < pool.size() && triples < 10; ++b)
      for (size_t c = b + 1; c < pool.size() && triples < 10; ++c) {
        RationalExpr jac = db(pool[a], db(pool[b], pool[c])) +
                           db(pool[b], db(pool[c], pool[a])) +
                           db(pool[c], db(pool[a], pool[b]));
        ++triples;
        for (const auto& pt : points) {
          if (jac.evaluate(pt) != 0) ok = false;
          ++evals;
        }
      }
  report(10, ok, "bracket axioms and on-surface Jacobi identity",
         std::to_string(cases) + " random axiom cases, " + std::to_string(triples) +
             " triples x " + std::to_string(evals / triples) + " points");
}

}  // namespace

int main(int, char**) {
  try {
    auto t0 = std::chrono::steady_clock::now();
    Model model = load_model_file(DW_SOURCE_DIR "/models/circle.json");
    DiracStructure ds = analyze(model);
    double analyze_seconds = seconds_since(t0);

    criterion1(ds, analyze_seconds);
    criterion2(ds);
    criterion3(ds);
    criterion4(ds);
    criterion5(ds);
    criterion6(ds);
    criterion7();
    criterion8();
    criterion9();
    criterion10(ds);
  } catch (const std::exception& e) {
    std::printf("FAIL setup: %s\n", e.what());
    return 99;
  }
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
