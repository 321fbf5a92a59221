#pragma once
#include <map>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace dw {

// Fast evaluator for a rational expression over a fixed state layout:
// parameters are substituted exactly first, then the integer coefficients
// are converted to double once.
class CompiledExpr {
 public:
  static CompiledExpr compile(const RationalExpr& e, const std::vector<int>& state_syms,
                              const std::map<int, Rat>& params, const SymbolTable& st);
  double eval(const double* y) const;

 private:
  struct Term {
    double c = 0;
    std::vector<std::pair<int, int>> factors;  // (state slot, exponent)
  };
  std::vector<Term> num_, den_;
  bool den_is_one_ = true;
};

struct ObservableColumn {
  std::string name;
  CompiledExpr f;
};

// Equations of motion dz/dt = [z,H]* for the non-multiplier phase variables,
// plus the derived columns a trajectory file reports.
struct EOMSystem {
  std::vector<int> state_syms;
  std::vector<std::string> state_names;
  std::vector<CompiledExpr> rhs;
  std::vector<ObservableColumn> constraint_cols;  // constraints expressible in the state
  std::vector<ObservableColumn> extra_cols;       // energy, and angular momentum in 2d
};

EOMSystem generate_eom(const DiracStructure& ds);

// Configuration-sphere constraint sum(q_i^2) = radius^2 recognized from the
// constraint list; drives the projection and exact integrators.
struct SphereInfo {
  std::vector<int> coord_slots;  // indices into the state vector
  std::vector<int> mom_slots;    // conjugate slots, same order
  double radius = 0;
};

bool detect_sphere(const DiracStructure& ds, const EOMSystem& sys, SphereInfo& out);

using Trajectory = std::vector<std::vector<double>>;  // rows of (t, state...)

Trajectory integrate_rk4(const EOMSystem& sys, const std::vector<double>& y0, double h, int steps);

// First-order scheme: free drift of the coordinates, renormalization back to
// the sphere, then removal of the radial momentum component.
Trajectory integrate_project(const SphereInfo& sphere, const std::vector<double>& y0, double h,
                             int steps);

// Closed-form rigid rotation for a single particle on a circle.
Trajectory integrate_exact_circle(const SphereInfo& sphere, const std::vector<double>& y0,
                                  double h, int steps);

struct SimulationResult {
  std::vector<std::string> columns;
  Trajectory rows;
};

// Full pipeline: EOM generation, admissibility check of the initial state,
// dispatch on method ("dirac-rk4" | "project" | "exact"), derived columns.
SimulationResult simulate(const DiracStructure& ds, const std::string& method, double h,
                          int steps, const std::vector<double>& y0);

std::string to_csv(const SimulationResult& r);

}  // namespace dw
