#include "dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "errors.hpp"

namespace dw {

namespace {

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

double ipow(double x, int e) {
  double r = 1;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

}  // namespace

CompiledExpr CompiledExpr::compile(const RationalExpr& e, const std::vector<int>& state_syms,
                                   const std::map<int, Rat>& params, const SymbolTable& st) {
  std::map<int, RationalExpr> bind;
  for (const auto& [sym, val] : params) bind[sym] = RationalExpr(val);
  RationalExpr folded = e.substitute(bind);

  std::map<int, int> slot;
  for (size_t i = 0; i < state_syms.size(); ++i) slot[state_syms[i]] = static_cast<int>(i);

  auto build = [&](const Polynomial& p, std::vector<Term>& out) {
    for (const auto& [mono, coeff] : p.terms()) {
      Term t;
      t.c = rat_to_double(Rat(coeff));
      for (size_t s = 0; s < mono.e.size(); ++s) {
        if (mono.e[s] == 0) continue;
        auto it = slot.find(static_cast<int>(s));
        if (it == slot.end())
          fail(errc::invalid_argument,
               "expression depends on " + st[static_cast<int>(s)].name +
                   ", which is not part of the evolved state");
        t.factors.emplace_back(it->second, mono.e[s]);
      }
      out.push_back(std::move(t));
    }
  };
  CompiledExpr c;
  build(folded.num(), c.num_);
  build(folded.den(), c.den_);
  c.den_is_one_ = folded.den().is_one();
  return c;
}

double CompiledExpr::eval(const double* y) const {
  auto sum = [&](const std::vector<Term>& terms) {
    double acc = 0;
    for (const Term& t : terms) {
      double v = t.c;
      for (auto [s, e] : t.factors) v *= ipow(y[s], e);
      acc += v;
    }
    return acc;
  };
  double n = sum(num_);
  return den_is_one_ ? n : n / sum(den_);
}

EOMSystem generate_eom(const DiracStructure& ds) {
  EOMSystem sys;
  sys.state_syms = ds.state_syms;
  for (int s : sys.state_syms) sys.state_names.push_back(ds.symtab[s].name);

  std::set<int> allowed(sys.state_syms.begin(), sys.state_syms.end());
  for (const auto& [p, v] : ds.parameters) allowed.insert(p);
  auto expressible = [&](const RationalExpr& e) {
    std::set<int> syms;
    e.collect_symbols(syms);
    for (int s : syms)
      if (!allowed.count(s)) return false;
    return true;
  };

  for (int z : sys.state_syms) {
    RationalExpr zdot = dirac_bracket(RationalExpr::variable(z), ds.h_reduced, ds);
    sys.rhs.push_back(CompiledExpr::compile(zdot, sys.state_syms, ds.parameters, ds.symtab));
  }

  for (size_t k = 0; k < ds.constraints.size(); ++k) {
    RationalExpr ce = ds.constraints[k].expr();
    if (!expressible(ce)) continue;
    sys.constraint_cols.push_back(
        {"phi" + std::to_string(k + 1),
         CompiledExpr::compile(ce, sys.state_syms, ds.parameters, ds.symtab)});
  }

  if (expressible(ds.h_reduced))
    sys.extra_cols.push_back(
        {"H", CompiledExpr::compile(ds.h_reduced, sys.state_syms, ds.parameters, ds.symtab)});
  if (sys.state_syms.size() == 4) {
    RationalExpr lz = RationalExpr::variable(sys.state_syms[0]) * RationalExpr::variable(sys.state_syms[3]) -
                      RationalExpr::variable(sys.state_syms[1]) * RationalExpr::variable(sys.state_syms[2]);
    sys.extra_cols.push_back(
        {"Lz", CompiledExpr::compile(lz, sys.state_syms, ds.parameters, ds.symtab)});
  }
  return sys;
}

bool detect_sphere(const DiracStructure& ds, const EOMSystem& sys, SphereInfo& out) {
  const size_t ncoord = sys.state_syms.size() / 2;
  std::map<int, int> coord_slot;
  for (size_t i = 0; i < ncoord; ++i) coord_slot[sys.state_syms[i]] = static_cast<int>(i);

  for (const auto& cons : ds.constraints) {
    std::set<int> found;
    Polynomial param_part;
    bool match = true;
    for (const auto& [mono, coeff] : cons.p.terms()) {
      // Either q_i^2 with unit coefficient, or a parameter-only term.
      int qsym = -1;
      bool is_square = mono.degree() == 2;
      bool params_only = true;
      for (size_t s = 0; s < mono.e.size(); ++s) {
        if (mono.e[s] == 0) continue;
        if (!ds.parameters.count(static_cast<int>(s))) params_only = false;
        if (mono.e[s] == 2 && coord_slot.count(static_cast<int>(s)))
          qsym = static_cast<int>(s);
        else
          is_square = false;
      }
      if (is_square && qsym >= 0 && coeff == 1) {
        if (found.count(qsym)) match = false;
        found.insert(qsym);
      } else if (params_only) {
        param_part.add_term(mono, coeff);
      } else {
        match = false;
      }
      if (!match) break;
    }
    if (!match || found.size() != ncoord || ncoord == 0) continue;
    Rat rhs = -param_part.evaluate([&](int s) -> const Rat* {
      auto it = ds.parameters.find(s);
      return it == ds.parameters.end() ? nullptr : &it->second;
    });
    if (rhs <= 0) continue;
    out.coord_slots.clear();
    out.mom_slots.clear();
    for (size_t i = 0; i < ncoord; ++i) {
      out.coord_slots.push_back(static_cast<int>(i));
      out.mom_slots.push_back(static_cast<int>(i + ncoord));
    }
    out.radius = std::sqrt(rat_to_double(rhs));
    return true;
  }
  return false;
}

Trajectory integrate_rk4(const EOMSystem& sys, const std::vector<double>& y0, double h,
                         int steps) {
  const size_t n = y0.size();
  std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto deriv = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (size_t i = 0; i < n; ++i) out[i] = sys.rhs[i].eval(in.data());
  };
  Trajectory traj;
  auto record = [&](int step) {
    std::vector<double> row;
    row.reserve(n + 1);
    row.push_back(step * h);
    row.insert(row.end(), y.begin(), y.end());
    traj.push_back(std::move(row));
  };
  record(0);
  for (int s = 1; s <= steps; ++s) {
    deriv(y, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    deriv(tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    deriv(tmp, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    deriv(tmp, k4);
    for (size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    for (double v : y)
      if (!std::isfinite(v))
        fail(errc::integrator, "non-finite state at t=" + std::to_string(s * h));
    record(s);
  }
  return traj;
}

Trajectory integrate_project(const SphereInfo& sphere, const std::vector<double>& y0, double h,
                             int steps) {
  std::vector<double> y = y0;
  Trajectory traj;
  auto record = [&](int step) {
    std::vector<double> row;
    row.push_back(step * h);
    row.insert(row.end(), y.begin(), y.end());
    traj.push_back(std::move(row));
  };
  record(0);
  const size_t k = sphere.coord_slots.size();
  for (int s = 1; s <= steps; ++s) {
    for (size_t i = 0; i < k; ++i) y[sphere.coord_slots[i]] += h * y[sphere.mom_slots[i]];
    double q2 = 0;
    for (size_t i = 0; i < k; ++i) q2 += y[sphere.coord_slots[i]] * y[sphere.coord_slots[i]];
    if (q2 == 0 || !std::isfinite(q2))
      fail(errc::integrator, "projection lost the configuration sphere at t=" + std::to_string(s * h));
    double scale = sphere.radius / std::sqrt(q2);
    for (size_t i = 0; i < k; ++i) y[sphere.coord_slots[i]] *= scale;
    double qq = 0, qp = 0;
    for (size_t i = 0; i < k; ++i) {
      qq += y[sphere.coord_slots[i]] * y[sphere.coord_slots[i]];
      qp += y[sphere.coord_slots[i]] * y[sphere.mom_slots[i]];
    }
    double rho = qp / qq;
    for (size_t i = 0; i < k; ++i) y[sphere.mom_slots[i]] -= rho * y[sphere.coord_slots[i]];
    record(s);
  }
  return traj;
}

Trajectory integrate_exact_circle(const SphereInfo& sphere, const std::vector<double>& y0,
                                  double h, int steps) {
  if (sphere.coord_slots.size() != 2)
    fail(errc::invalid_argument, "exact integrator needs exactly two configuration coordinates");
  const int qx = sphere.coord_slots[0], qy = sphere.coord_slots[1];
  const int mx = sphere.mom_slots[0], my = sphere.mom_slots[1];
  const double x0 = y0[qx], yy0 = y0[qy], px0 = y0[mx], py0 = y0[my];
  const double omega = (x0 * py0 - yy0 * px0) / (sphere.radius * sphere.radius);
  Trajectory traj;
  for (int s = 0; s <= steps; ++s) {
    double t = s * h, c = std::cos(omega * t), sn = std::sin(omega * t);
    std::vector<double> row = {t, 0, 0, 0, 0};
    row[1 + qx] = c * x0 - sn * yy0;
    row[1 + qy] = sn * x0 + c * yy0;
    row[1 + mx] = c * px0 - sn * py0;
    row[1 + my] = sn * px0 + c * py0;
    traj.push_back(std::move(row));
  }
  return traj;
}

SimulationResult simulate(const DiracStructure& ds, const std::string& method, double h,
                          int steps, const std::vector<double>& y0) {
  if (h <= 0 || !std::isfinite(h)) fail(errc::invalid_argument, "step size must be positive");
  if (steps <= 0) fail(errc::invalid_argument, "step count must be positive");
  EOMSystem sys = generate_eom(ds);
  if (y0.size() != sys.state_syms.size())
    fail(errc::invalid_argument,
         "initial state needs " + std::to_string(sys.state_syms.size()) + " values, got " +
             std::to_string(y0.size()));

  double scale = 1;
  for (double v : y0) {
    if (!std::isfinite(v)) fail(errc::invalid_argument, "initial state must be finite");
    scale += v * v;
  }
  for (const auto& col : sys.constraint_cols) {
    double v = col.f.eval(y0.data());
    if (std::abs(v) > 1e-12 * scale)
      fail(errc::invalid_argument,
           "initial state violates constraint " + col.name + " (value " + std::to_string(v) + ")");
  }

  Trajectory raw;
  if (method == "dirac-rk4") {
    raw = integrate_rk4(sys, y0, h, steps);
  } else if (method == "project" || method == "exact") {
    SphereInfo sphere;
    if (!detect_sphere(ds, sys, sphere))
      fail(errc::invalid_argument,
           "method '" + method + "' needs a configuration-sphere constraint");
    raw = method == "project" ? integrate_project(sphere, y0, h, steps)
                              : integrate_exact_circle(sphere, y0, h, steps);
  } else {
    fail(errc::invalid_argument, "unknown method '" + method +
                                     "' (expected dirac-rk4, project or exact)");
  }

  SimulationResult res;
  res.columns.push_back("t");
  for (const auto& n : sys.state_names) res.columns.push_back(n);
  for (const auto& col : sys.constraint_cols) res.columns.push_back(col.name);
  for (const auto& col : sys.extra_cols) res.columns.push_back(col.name);
  res.rows.reserve(raw.size());
  for (const auto& row : raw) {
    std::vector<double> out = row;
    const double* state = row.data() + 1;
    for (const auto& col : sys.constraint_cols) out.push_back(col.f.eval(state));
    for (const auto& col : sys.extra_cols) out.push_back(col.f.eval(state));
    res.rows.push_back(std::move(out));
  }
  return res;
}

std::string to_csv(const SimulationResult& r) {
  std::string out;
  for (size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : r.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace dw
