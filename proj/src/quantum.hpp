#pragma once
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace dw {

using cdouble = std::complex<double>;

// Ring data: radius, mass, hbar, flux parameter alpha and boundary-twist
// parameter beta. alpha and beta are stored as fractional parts in [0,1),
// which makes integer shifts bit-identical by construction.
struct RingParams {
  double r0 = 1, mass = 1, hbar = 1;
  double alpha = 0, beta = 0;

  RingParams() = default;
  RingParams(double r0_, double mass_, double hbar_, double alpha_, double beta_);

  double nu(int n) const { return static_cast<double>(n) + beta - alpha; }
  double bond(int n) const { return nu(n) + nu(n + 1); }  // shared by (n, n+1) elements
  double e0() const { return hbar * hbar / (8.0 * mass * r0 * r0); }
};

struct CMat {
  int n = 0;
  std::vector<cdouble> a;

  explicit CMat(int n_ = 0) : n(n_), a(static_cast<size_t>(n_) * n_) {}
  cdouble& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cdouble& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

CMat mat_mul(const CMat& x, const CMat& y);
CMat mat_add(const CMat& x, const CMat& y);
CMat mat_sub(const CMat& x, const CMat& y);
CMat mat_scale(cdouble s, const CMat& x);
CMat mat_adjoint(const CMat& x);
CMat commutator(const CMat& x, const CMat& y);

double max_abs(const CMat& x);
double herm_defect(const CMat& x);  // max |x - x^dagger|
// Max modulus over entries whose row and column modes lie at least `margin`
// away from the truncation edges.
double interior_max_abs(const CMat& x, int margin);

enum class RingOp { X, Y, Px, Py, Lz, H, Phi3W };

// Matrix of the operator over the angular modes n = -N..N (dimension 2N+1),
// built from the closed-form matrix elements of the ring representation.
// Phi3W entries are assembled from untruncated element sums, not from
// products of truncated matrices. Requires N >= 2.
CMat operator_matrix(RingOp op, const RingParams& p, int N);

struct ResidualReport {
  int n = 0;
  std::map<std::string, double> hermiticity;  // per operator, exact zeros expected
  std::map<std::string, double> commutators;  // interior residuals of the bracket algebra
  double heisenberg_x = 0;                    // [X,H] - (i hbar/m) Px
  double lz_product = 0;                      // (X Py - Y Px) - Lz
  double phi3w_norm = 0;                      // max |Phi3W|
};

// Verifies the quantized bracket algebra at truncation 2N+1. Requires N >= 4.
ResidualReport algebra_residuals(const RingParams& p, int N);

struct OrderingDemo {
  double defect_a = 0;          // hermiticity defect of -Y Lz / r0^2
  double defect_b = 0;          // hermiticity defect of -Lz Y / r0^2
  double defect_weyl = 0;       // hermiticity defect of their average
  double skew_opposition = 0;   // max |(A - A*) + (B - B*)|
  double weyl_vs_px = 0;        // max |(A+B)/2 - Px|
};

// The two naive operator orderings of p_x are non-hermitian with opposite
// skew parts; their symmetric average is exactly the hermitian Px.
OrderingDemo nonhermitian_ordering_demo(const RingParams& p, int N);

struct Level {
  double energy = 0;
  int n = 0;  // angular mode label
};

std::vector<Level> analytic_spectrum(const RingParams& p, int levels, bool include_e0);
double ground_energy(const RingParams& p, bool include_e0);

// Finite-difference ring Hamiltonian with Peierls phases and twisted boundary
// conditions; lowest `levels` eigenvalues. Requires grid_n >= 16. The constant
// offset is added after the eigensolve, so switching it on shifts each level
// by exactly one floating-point addition of e0.
std::vector<double> grid_spectrum(const RingParams& p, int levels, int grid_n, bool include_e0);

// Eigenvalues of a hermitian matrix via cyclic Jacobi sweeps on the doubled
// real-symmetric embedding; ascending order.
std::vector<double> jacobi_hermitian_eigen(const CMat& a);

}  // namespace dw
