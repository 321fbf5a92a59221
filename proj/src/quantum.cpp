#include "quantum.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace dw {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail(errc::invalid_argument, std::string(what) + " must be finite");
}

}  // namespace

RingParams::RingParams(double r0_, double mass_, double hbar_, double alpha_, double beta_)
    : r0(r0_), mass(mass_), hbar(hbar_) {
  check_finite(r0, "r0");
  check_finite(mass, "mass");
  check_finite(hbar, "hbar");
  check_finite(alpha_, "alpha");
  check_finite(beta_, "beta");
  if (r0 <= 0 || mass <= 0 || hbar <= 0)
    fail(errc::invalid_argument, "r0, mass and hbar must be positive");
  alpha = alpha_ - std::floor(alpha_);
  beta = beta_ - std::floor(beta_);
}

CMat mat_mul(const CMat& x, const CMat& y) {
  CMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      cdouble v = x(i, k);
      if (v == cdouble{}) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

CMat mat_add(const CMat& x, const CMat& y) {
  CMat r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

CMat mat_sub(const CMat& x, const CMat& y) {
  CMat r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

CMat mat_scale(cdouble s, const CMat& x) {
  CMat r(x.n);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

CMat mat_adjoint(const CMat& x) {
  CMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

CMat commutator(const CMat& x, const CMat& y) { return mat_sub(mat_mul(x, y), mat_mul(y, x)); }

double max_abs(const CMat& x) {
  double m = 0;
  for (const cdouble& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

double herm_defect(const CMat& x) {
  double m = 0;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) m = std::max(m, std::abs(x(i, j) - std::conj(x(j, i))));
  return m;
}

double interior_max_abs(const CMat& x, int margin) {
  double m = 0;
  for (int i = margin; i < x.n - margin; ++i)
    for (int j = margin; j < x.n - margin; ++j) m = std::max(m, std::abs(x(i, j)));
  return m;
}

namespace {

// Closed-form matrix elements over the angular modes; defined for every
// integer index so that composite entries can be assembled untruncated.
struct Elements {
  const RingParams& p;

  cdouble x(int m, int n) const {
    if (m == n + 1 || n == m + 1) return p.r0 / 2;
    return {};
  }
  cdouble y(int m, int n) const {
    if (m == n + 1) return {0, -p.r0 / 2};
    if (n == m + 1) return {0, p.r0 / 2};
    return {};
  }
  cdouble px(int m, int n) const {
    if (m == n + 1) return {0, p.hbar * p.bond(n) / (4 * p.r0)};
    if (n == m + 1) return {0, -p.hbar * p.bond(m) / (4 * p.r0)};
    return {};
  }
  cdouble py(int m, int n) const {
    if (m == n + 1) return {p.hbar * p.bond(n) / (4 * p.r0), 0};
    if (n == m + 1) return {p.hbar * p.bond(m) / (4 * p.r0), 0};
    return {};
  }
  cdouble lz(int m, int n) const {
    if (m == n) return {p.hbar * p.nu(n), 0};
    return {};
  }
  cdouble h(int m, int n) const {
    if (m != n) return {};
    double nu = p.nu(n);
    return {p.hbar * p.hbar * nu * nu / (2 * p.mass * p.r0 * p.r0) + p.e0(), 0};
  }
  // Symmetrized radial constraint (x px + px x + y py + py y)/2, assembled
  // from the untruncated products: only k = n-1, n+1 contribute.
  cdouble phi3w(int m, int n) const {
    cdouble acc{};
    for (int k : {n - 1, n + 1}) {
      acc += x(m, k) * px(k, n);
      acc += px(m, k) * x(k, n);
      acc += y(m, k) * py(k, n);
      acc += py(m, k) * y(k, n);
    }
    return 0.5 * acc;
  }
};

}  // namespace

CMat operator_matrix(RingOp op, const RingParams& p, int N) {
  if (N < 2) fail(errc::invalid_argument, "operator truncation needs N >= 2");
  const int dim = 2 * N + 1;
  Elements el{p};
  CMat r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int m = i - N, n = j - N;
      switch (op) {
        case RingOp::X: r(i, j) = el.x(m, n); break;
        case RingOp::Y: r(i, j) = el.y(m, n); break;
        case RingOp::Px: r(i, j) = el.px(m, n); break;
        case RingOp::Py: r(i, j) = el.py(m, n); break;
        case RingOp::Lz: r(i, j) = el.lz(m, n); break;
        case RingOp::H: r(i, j) = el.h(m, n); break;
        case RingOp::Phi3W: r(i, j) = el.phi3w(m, n); break;
      }
    }
  return r;
}

ResidualReport algebra_residuals(const RingParams& p, int N) {
  if (N < 4) fail(errc::invalid_argument, "algebra check needs N >= 4");
  const cdouble ih{0, p.hbar};
  const double r2 = p.r0 * p.r0;

  CMat X = operator_matrix(RingOp::X, p, N);
  CMat Y = operator_matrix(RingOp::Y, p, N);
  CMat Px = operator_matrix(RingOp::Px, p, N);
  CMat Py = operator_matrix(RingOp::Py, p, N);
  CMat Lz = operator_matrix(RingOp::Lz, p, N);
  CMat H = operator_matrix(RingOp::H, p, N);

  CMat I(X.n);
  for (int i = 0; i < I.n; ++i) I(i, i) = 1;

  ResidualReport rep;
  rep.n = X.n;
  rep.hermiticity["x"] = herm_defect(X);
  rep.hermiticity["y"] = herm_defect(Y);
  rep.hermiticity["px"] = herm_defect(Px);
  rep.hermiticity["py"] = herm_defect(Py);
  rep.hermiticity["lz"] = herm_defect(Lz);
  rep.hermiticity["h"] = herm_defect(H);

  auto resid = [&](const CMat& lhs, const CMat& expected) {
    return interior_max_abs(mat_sub(lhs, expected), 2);
  };
  rep.commutators["[x,y]"] = interior_max_abs(commutator(X, Y), 2);
  rep.commutators["[x,px]"] =
      resid(commutator(X, Px), mat_scale(ih, mat_sub(I, mat_scale(1 / r2, mat_mul(X, X)))));
  rep.commutators["[y,py]"] =
      resid(commutator(Y, Py), mat_scale(ih, mat_sub(I, mat_scale(1 / r2, mat_mul(Y, Y)))));
  rep.commutators["[x,py]"] = resid(commutator(X, Py), mat_scale(-ih / r2, mat_mul(X, Y)));
  rep.commutators["[y,px]"] = resid(commutator(Y, Px), mat_scale(-ih / r2, mat_mul(X, Y)));
  rep.commutators["[px,py]"] = resid(commutator(Px, Py), mat_scale(-ih / r2, Lz));

  rep.heisenberg_x = resid(commutator(X, H), mat_scale(ih / p.mass, Px));
  rep.lz_product = interior_max_abs(mat_sub(mat_sub(mat_mul(X, Py), mat_mul(Y, Px)), Lz), 2);
  rep.phi3w_norm = max_abs(operator_matrix(RingOp::Phi3W, p, N));
  return rep;
}

OrderingDemo nonhermitian_ordering_demo(const RingParams& p, int N) {
  if (N < 4) fail(errc::invalid_argument, "ordering demo needs N >= 4");
  const double r2 = p.r0 * p.r0;
  CMat Y = operator_matrix(RingOp::Y, p, N);
  CMat Lz = operator_matrix(RingOp::Lz, p, N);
  CMat Px = operator_matrix(RingOp::Px, p, N);

  CMat A = mat_scale(-1 / r2, mat_mul(Y, Lz));   // one ordering of -y Lz / r0^2
  CMat B = mat_scale(-1 / r2, mat_mul(Lz, Y));   // the reversed ordering
  CMat W = mat_scale(0.5, mat_add(A, B));

  OrderingDemo demo;
  demo.defect_a = herm_defect(A);
  demo.defect_b = herm_defect(B);
  demo.defect_weyl = herm_defect(W);
  demo.skew_opposition =
      max_abs(mat_add(mat_sub(A, mat_adjoint(A)), mat_sub(B, mat_adjoint(B))));
  demo.weyl_vs_px = max_abs(mat_sub(W, Px));
  return demo;
}

std::vector<Level> analytic_spectrum(const RingParams& p, int levels, bool include_e0) {
  if (levels < 1) fail(errc::invalid_argument, "level count must be positive");
  std::vector<Level> all;
  for (int n = -(levels + 2); n <= levels + 2; ++n) {
    double nu = p.nu(n);
    all.push_back({p.hbar * p.hbar * nu * nu / (2 * p.mass * p.r0 * p.r0), n});
  }
  std::sort(all.begin(), all.end(), [](const Level& a, const Level& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.n < b.n;
  });
  all.resize(levels);
  if (include_e0)
    for (Level& l : all) l.energy += p.e0();
  return all;
}

double ground_energy(const RingParams& p, bool include_e0) {
  double g = p.beta - p.alpha;
  g -= std::floor(g);
  double d = 0.5 - std::abs(g - 0.5);  // distance to the nearest integer
  double e = p.hbar * p.hbar * d * d / (2 * p.mass * p.r0 * p.r0);
  return include_e0 ? e + p.e0() : e;
}

std::vector<double> grid_spectrum(const RingParams& p, int levels, int grid_n, bool include_e0) {
  if (grid_n < 16) fail(errc::invalid_argument, "grid size must be at least 16");
  if (levels < 1 || levels > grid_n)
    fail(errc::invalid_argument, "level count must be between 1 and the grid size");
  const double h = 2 * kPi / grid_n;
  const double t = p.hbar * p.hbar / (2 * p.mass * p.r0 * p.r0 * h * h);
  const cdouble hop = -t * std::polar(1.0, -p.alpha * h);
  const cdouble twist = std::polar(1.0, 2 * kPi * p.beta);

  CMat a(grid_n);
  for (int k = 0; k < grid_n; ++k) a(k, k) = 2 * t;
  for (int k = 0; k + 1 < grid_n; ++k) {
    a(k, k + 1) = hop;
    a(k + 1, k) = std::conj(hop);
  }
  a(grid_n - 1, 0) = hop * twist;
  a(0, grid_n - 1) = std::conj(hop * twist);

  std::vector<double> eig = jacobi_hermitian_eigen(a);
  eig.resize(levels);
  if (include_e0)
    for (double& e : eig) e += p.e0();
  return eig;
}

std::vector<double> jacobi_hermitian_eigen(const CMat& a) {
  const int n = a.n;
  const int m = 2 * n;
  // Doubled real-symmetric embedding [[Re, -Im], [Im, Re]].
  std::vector<double> b(static_cast<size_t>(m) * m);
  auto at = [&](int i, int j) -> double& { return b[static_cast<size_t>(i) * m + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      at(i, j) = a(i, j).real();
      at(i, j + n) = -a(i, j).imag();
      at(i + n, j) = a(i, j).imag();
      at(i + n, j + n) = a(i, j).real();
    }

  double norm = 0;
  for (double v : b) norm += v * v;
  norm = std::sqrt(norm);
  const double tol = 1e-12 * norm;

  auto off_norm = [&]() {
    double s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) s += 2 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  auto rotate = [&](int p, int q) {
    double apq = at(p, q);
    if (apq == 0) return;
    double theta = (at(q, q) - at(p, p)) / (2 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
      t = 1 / (2 * theta);
    } else {
      t = 1 / (std::abs(theta) + std::sqrt(theta * theta + 1));
      if (theta < 0) t = -t;
    }
    double c = 1 / std::sqrt(t * t + 1), s = t * c;
    for (int k = 0; k < m; ++k) {
      double t1 = at(k, p), t2 = at(k, q);
      at(k, p) = c * t1 - s * t2;
      at(k, q) = s * t1 + c * t2;
    }
    for (int k = 0; k < m; ++k) {
      double t1 = at(p, k), t2 = at(q, k);
      at(p, k) = c * t1 - s * t2;
      at(q, k) = s * t1 + c * t2;
    }
  };

  bool polish_done = false;
  int sweeps = 0;
  for (;;) {
    if (off_norm() <= tol) {
      if (polish_done) break;
      polish_done = true;  // one final cleanup sweep below the threshold
    }
    if (sweeps >= 100) fail(errc::eigensolver, "Jacobi iteration did not converge in 100 sweeps");
    for (int p = 0; p < m - 1; ++p)
      for (int q = p + 1; q < m; ++q) rotate(p, q);
    ++sweeps;
  }

  std::vector<double> diag(m);
  for (int i = 0; i < m; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = diag[2 * i];  // doubled spectrum: every 2nd
  return eig;
}

}  // namespace dw
