#ifndef UPSBP_NORMAL_MODE_HPP
#define UPSBP_NORMAL_MODE_HPP

#include <array>
#include <complex>

#include <Eigen/Core>

namespace upsbp {

enum class BoundarySide { kInflow, kOutflow };

/// Interior characteristic polynomial c0 + c1 k + c2 k^2 + c3 k^3 of the
/// third-order pair at a given s̃ (inflow: the D_m recursion, outflow: the
/// reversed-index recursion).
std::array<std::complex<double>, 4> characteristic_coefficients(BoundarySide side,
                                                                std::complex<double> s_tilde);

/// Roots of the interior characteristic equation at a given scaled dual
/// variable s̃ = s h, with admissibility (|kappa| < 1 for Re s̃ > 0) decided by
/// a small real perturbation, and each admissible root classified as the
/// slowly decaying branch (kappa -> 1 as s̃ -> 0) or a fast one.
struct RootSet {
  std::array<std::complex<double>, 3> roots;
  std::array<bool, 3> admissible;
  std::array<bool, 3> slow;

  std::complex<double> slow_root() const;
  std::complex<double> fast_root() const;  // the admissible non-slow root (inflow)
};

/// Only the third-order pair is analyzed; other p throw std::invalid_argument.
RootSet characteristic_roots(int p, BoundarySide side, std::complex<double> s_tilde);

/// The 2x2 inflow boundary system C3(tau, s̃), columns ordered (slow, fast)
/// to match the solution vector (sigma1, sigma2); its right-hand side is
/// (1/2, -5/26) h^2 v_xx(x_1).
Eigen::Matrix2cd scalar_boundary_matrix(double tau, std::complex<double> s_tilde);

/// det C3(tau, s̃); at s̃ = 0 it equals 3 tau (3 + 5 sqrt(33)) / 65.
std::complex<double> boundary_determinant_scalar(double tau, std::complex<double> s_tilde);

/// Boundary-system solution coefficients, as multiples of h^2 v_xx(x_1).
/// sigma1 multiplies the slow branch: it vanishes exactly at tau = -1.
struct SigmaSolution {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double closed_numeric_gap = 0.0;  // max |closed form - linear solve|
};

/// Requires tau != 0. Closed forms sigma1 = -10(1+tau)/((3+5 sqrt 33) tau),
/// sigma2 = 10/(3+5 sqrt 33), cross-checked against the direct 2x2 solve.
SigmaSolution sigma_scalar(double tau);

/// Slow-branch coefficient of the 4x4 boundary system of the 2x2 hyperbolic
/// system, as a multiple of h^2 (u_xx(x_1) + v_xx(x_1)):
///   sigma2 = -(25 sqrt 33 - 15)(a0 t1 + t2 + 1) / (204 (t1 + t2)(a0 + 1)).
/// Cross-checked against the numerical solve of C_s(0) Sigma = d_s; throws
/// std::invalid_argument when t1 + t2 = 0 (degenerate, excluded by stability).
struct Sigma2System {
  double closed_form = 0.0;
  double numeric = 0.0;        // third component of the 4x4 solve
  Eigen::Vector4d solution;    // (sigma0, sigma1, sigma2, gamma1_hat)
};

Sigma2System sigma2_system(double alpha0, double tau1, double tau2);

/// The 4x4 boundary-system matrix at s̃ = 0 (closed-form entries).
Eigen::Matrix4d system_boundary_matrix(double alpha0, double tau1, double tau2);

/// Slow-root resolvent bound: lhs = 1/(1-|kappa1|^2) vs rhs = 1/(2 s̃), valid
/// to leading order as s̃ -> 0. ok iff lhs <= 1.1 * rhs.
struct KappaBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

KappaBound kappa_bound_check(double eta_h);

}  // namespace upsbp

#endif
