#pragma once
#include <map>
#include <vector>

#include "rational_expr.hpp"
#include "rewrite.hpp"

namespace dw {

// Canonical (coordinate, momentum) pairs, including multiplier pairs.
struct PhaseSpace {
  std::vector<std::pair<int, int>> pairs;
};

// Canonical Poisson bracket: sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i.
RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const PhaseSpace& ps);

struct RationalMatrix {
  std::vector<std::vector<RationalExpr>> a;

  static RationalMatrix zero(size_t n, size_t m);
  static RationalMatrix identity(size_t n);
  size_t rows() const { return a.size(); }
  size_t cols() const { return a.empty() ? 0 : a[0].size(); }
  RationalExpr& operator()(size_t i, size_t j) { return a[i][j]; }
  const RationalExpr& operator()(size_t i, size_t j) const { return a[i][j]; }
};

// Mutual-bracket matrix M[i][j] = {c_i, c_j}; entries left unreduced.
RationalMatrix bracket_matrix(const std::vector<RationalExpr>& constraints, const PhaseSpace& ps);

// Weak inverse of a square polynomial matrix modulo the rewrite system,
// computed as adj(M)/det(M) with every intermediate product reduced.
// Raises errc::first_class if the determinant reduces to zero, and
// verifies reduce(M*G - I) == 0 before returning.
RationalMatrix invert_matrix(const RationalMatrix& m, const RewriteSystem& rs);

// Numeric rank over the given evaluation points (each point must bind every
// symbol appearing in the matrix and constraints). Each point is first
// validated to lie on the surface: every constraint must evaluate to exactly
// zero. Returns the maximum rank attained.
int rank_at_points(const RationalMatrix& m, const std::vector<RationalExpr>& constraints,
                   const std::vector<std::map<int, Rat>>& points);

}  // namespace dw
