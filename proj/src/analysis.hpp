#pragma once
#include <map>
#include <string>
#include <vector>

#include "brackets.hpp"
#include "rational_expr.hpp"
#include "rewrite.hpp"
#include "symtab.hpp"

namespace dw {

struct ModelDefaults {
  double h = 1e-3;
  int steps = 1000;
  int levels = 5;
  int op_n = 16;
  int grid_n = 128;
};

// Fully parsed model definition, ready for analysis.
struct Model {
  std::string name;
  SymbolTable symtab;
  PhaseSpace phase;                             // (q,p) pairs, multipliers included
  std::vector<std::pair<int, int>> velocities;  // (config symbol, velocity symbol)
  RationalExpr lagrangian;
  std::map<int, Rat> parameters;
  std::vector<Polynomial> declared_relations;   // model-supplied rewrite relations
  std::vector<std::map<int, Rat>> sample_points;  // exact bindings, parameters merged in
  ModelDefaults defaults;
};

struct Constraint {
  Polynomial p;        // normalized numerator: integer content 1, positive leading coeff
  int generation = 0;  // 0 = primary, k = produced by the k-th consistency round
  std::string klass = "unknown";  // "first" | "second" | "unknown"
  RationalExpr expr() const { return RationalExpr::from_poly(p); }
};

struct Multiplier {
  int sym = -1;            // u_j symbol id
  int primary_index = -1;  // index of the primary constraint it multiplies
  bool solved = false;
  RationalExpr solution;   // valid when solved
};

// Result of the Legendre step on a velocity-quadratic Lagrangian.
struct LegendreResult {
  RationalExpr h;                     // sum(p v*) - L, undetermined velocities set to 0
  std::vector<Polynomial> primaries;  // p_i - dL/dv_i for each zero Hessian row
};

struct StrongZeroReport {
  int checked = 0;
  int violations = 0;
  std::vector<std::string> failing;  // "[A,c]" labels for nonzero reductions
};

// Everything the constraint analysis produces.
struct DiracStructure {
  std::string model_name;
  SymbolTable symtab;  // model symbols plus chain multipliers u1, u2, ...
  PhaseSpace phase;
  std::map<int, Rat> parameters;
  std::vector<std::map<int, Rat>> sample_points;
  ModelDefaults defaults;

  RationalExpr h;          // canonical Hamiltonian
  RationalExpr h_total;    // h + sum_j u_j * primary_j, multipliers symbolic
  RationalExpr h_reduced;  // h rewritten to normal form

  std::vector<Constraint> constraints;
  std::vector<Multiplier> multipliers;
  RewriteSystem rules;     // completed: auto-derived + declared relations

  RationalMatrix m;        // mutual bracket matrix, unreduced entries
  RationalMatrix g;        // inverse of m modulo rules (valid iff all_second_class)
  bool all_second_class = false;
  int rank = 0;            // max numeric rank of m over the sample points

  std::vector<int> state_syms;  // non-multiplier coordinates, then their momenta
};

// Legendre transform: velocity Hessian, zero rows -> primary constraints,
// invertible block solved exactly for the remaining velocities.
LegendreResult legendre_analyze(const Model& model);

// Full consistency analysis: primaries, generation-by-generation chain with
// the trichotomy (identity / multiplier equation / new constraint), rewrite
// completion, constraint classification, and the bracket-matrix inverse.
DiracStructure analyze(const Model& model);

// [f,g]* = [f,g] - sum_ij [f,c_i] G_ij [c_j,g], returned in normal form.
// Requires an invertible constraint matrix when constraints are present.
RationalExpr dirac_bracket(const RationalExpr& f, const RationalExpr& g, const DiracStructure& ds);

// Checks that [A,c]* reduces to exactly zero for every phase symbol A plus
// the canonical Hamiltonian against every constraint c.
StrongZeroReport verify_strong_zero(const DiracStructure& ds);

}  // namespace dw
