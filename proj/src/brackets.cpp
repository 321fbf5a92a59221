#include "brackets.hpp"

#include "errors.hpp"

namespace dw {

RationalExpr poisson_bracket(const RationalExpr& f, const RationalExpr& g, const PhaseSpace& ps) {
  RationalExpr acc;
  for (const auto& [q, p] : ps.pairs) {
    bool fq = f.contains(q), fp = f.contains(p);
    bool gq = g.contains(q), gp = g.contains(p);
    if (fq && gp) acc = acc + f.derivative(q) * g.derivative(p);
    if (fp && gq) acc = acc - f.derivative(p) * g.derivative(q);
  }
  return acc;
}

RationalMatrix RationalMatrix::zero(size_t n, size_t m) {
  RationalMatrix r;
  r.a.assign(n, std::vector<RationalExpr>(m));
  return r;
}

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix r = zero(n, n);
  for (size_t i = 0; i < n; ++i) r.a[i][i] = RationalExpr(Int(1));
  return r;
}

RationalMatrix bracket_matrix(const std::vector<RationalExpr>& constraints, const PhaseSpace& ps) {
  size_t n = constraints.size();
  RationalMatrix m = RationalMatrix::zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      m.a[i][j] = poisson_bracket(constraints[i], constraints[j], ps);
      m.a[j][i] = -m.a[i][j];
    }
  return m;
}

namespace {

// Laplace determinant over the quotient ring: every product and sum is
// reduced immediately, so intermediate degrees stay bounded by the normal
// forms. Matrices here are small (one row per constraint).
Polynomial det_reduced(const std::vector<std::vector<Polynomial>>& a, const RewriteSystem& rs) {
  size_t n = a.size();
  if (n == 0) return Polynomial::constant(1);
  if (n == 1) return rs.reduce(a[0][0]);
  Polynomial acc;
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> sub(n - 1, std::vector<Polynomial>(n - 1));
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c)
        if (c != j) sub[r - 1][cc++] = a[r][c];
    }
    Polynomial t = rs.reduce(a[0][j] * det_reduced(sub, rs));
    acc = j % 2 == 0 ? acc + t : acc - t;
  }
  return rs.reduce(acc);
}

Polynomial minor_reduced(const std::vector<std::vector<Polynomial>>& a, size_t row, size_t col,
                         const RewriteSystem& rs) {
  size_t n = a.size();
  std::vector<std::vector<Polynomial>> sub(n - 1, std::vector<Polynomial>(n - 1));
  size_t rr = 0;
  for (size_t r = 0; r < n; ++r) {
    if (r == row) continue;
    size_t cc = 0;
    for (size_t c = 0; c < n; ++c)
      if (c != col) sub[rr][cc++] = a[r][c];
    ++rr;
  }
  return det_reduced(sub, rs);
}

}  // namespace

RationalMatrix invert_matrix(const RationalMatrix& m, const RewriteSystem& rs) {
  size_t n = m.rows();
  if (m.cols() != n) fail(errc::internal, "invert_matrix: matrix is not square");
  if (n == 0) return m;

  // Bracket matrices are polynomial up to a constant denominator: clear it,
  // so the whole inversion runs in integer polynomial arithmetic. The weak
  // inverse is then L * adj(N) / det(N) with M = N / L.
  std::vector<std::vector<Polynomial>> nmat(n, std::vector<Polynomial>(n));
  Int scale = 1;
  {
    std::vector<std::vector<Int>> dens(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        RationalExpr e = rs.reduce(m.a[i][j]);
        if (!e.den().is_constant())
          fail(errc::internal, "invert_matrix: entries must be polynomial");
        dens[i][j] = e.den().constant_value();
        nmat[i][j] = e.num();
        scale = lcm(scale, dens[i][j]);
      }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        nmat[i][j] = nmat[i][j].mul_int(scale / dens[i][j]);
  }

  Polynomial det = det_reduced(nmat, rs);
  if (det.is_zero()) fail(errc::first_class, "constraint matrix is singular on the surface");

  std::vector<std::vector<Polynomial>> adj(n, std::vector<Polynomial>(n));  // adj[i][j] = C_ji
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Polynomial c = minor_reduced(nmat, j, i, rs);
      adj[i][j] = (i + j) % 2 == 0 ? c : -c;
    }

  // Certify N * adj == det * I in the quotient ring before dividing.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Polynomial s;
      for (size_t k = 0; k < n; ++k) s = s + rs.reduce(nmat[i][k] * adj[k][j]);
      if (i == j) s = s - det;
      if (!rs.reduce(s).is_zero()) fail(errc::internal, "matrix inverse failed verification");
    }

  RationalMatrix g = RationalMatrix::zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g.a[i][j] = RationalExpr(adj[i][j].mul_int(scale), det);
  return g;
}

int rank_at_points(const RationalMatrix& m, const std::vector<RationalExpr>& constraints,
                   const std::vector<std::map<int, Rat>>& points) {
  if (points.empty()) fail(errc::invalid_argument, "rank_at_points: no evaluation points");
  int best = 0;
  for (const auto& pt : points) {
    for (const auto& c : constraints)
      if (c.evaluate(pt) != 0) fail(errc::invalid_argument, "rank_at_points: point is off the constraint surface");
    std::vector<std::vector<Rat>> num(m.rows(), std::vector<Rat>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) num[i][j] = m.a[i][j].evaluate(pt);
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
      size_t piv = row;
      while (piv < m.rows() && num[piv][col] == 0) ++piv;
      if (piv == m.rows()) continue;
      std::swap(num[piv], num[row]);
      for (size_t i = row + 1; i < m.rows(); ++i) {
        if (num[i][col] == 0) continue;
        Rat f = num[i][col] / num[row][col];
        for (size_t j = col; j < m.cols(); ++j) num[i][j] -= f * num[row][j];
      }
      ++row;
      ++rank;
    }
    best = std::max(best, rank);
  }
  return best;
}

}  // namespace dw
