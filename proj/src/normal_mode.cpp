#include "upsbp/normal_mode.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace upsbp {

namespace {

using Complex = std::complex<double>;

constexpr double kPerturb = 1e-6;
const double kSqrt33 = std::sqrt(33.0);

// cubic roots via the companion matrix of c0 + c1 k + c2 k^2 + c3 k^3
std::array<Complex, 3> cubic_roots(Complex c0, Complex c1, Complex c2, Complex c3) {
  Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
  comp(0, 2) = -c0 / c3;
  comp(1, 2) = -c1 / c3;
  comp(2, 2) = -c2 / c3;
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("cubic_roots: eigensolver failed");
  return {es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2]};
}

std::array<Complex, 3> char_roots(BoundarySide side, Complex st) {
  const auto c = characteristic_coefficients(side, st);
  return cubic_roots(c[0], c[1], c[2], c[3]);
}

}  // namespace

std::array<Complex, 4> characteristic_coefficients(BoundarySide side, Complex st) {
  if (side == BoundarySide::kInflow)
    return {Complex(-1.0 / 6.0), Complex(1.0), -(0.5 + st), Complex(-1.0 / 3.0)};
  return {Complex(1.0 / 3.0), 0.5 + st, Complex(-1.0), Complex(1.0 / 6.0)};
}

std::complex<double> RootSet::slow_root() const {
  for (int i = 0; i < 3; ++i)
    if (slow[i]) return roots[i];
  throw std::runtime_error("RootSet: no slow root (outflow side has none admissible)");
}

std::complex<double> RootSet::fast_root() const {
  for (int i = 0; i < 3; ++i)
    if (admissible[i] && !slow[i]) return roots[i];
  throw std::runtime_error("RootSet: no fast admissible root");
}

RootSet characteristic_roots(int p, BoundarySide side, Complex s_tilde) {
  if (p != 3) throw std::invalid_argument("characteristic_roots: only p = 3 is analyzed");
  if (!std::isfinite(s_tilde.real()) || !std::isfinite(s_tilde.imag()))
    throw std::invalid_argument("characteristic_roots: s_tilde must be finite");
  RootSet rs;
  rs.roots = char_roots(side, s_tilde);
  // admissibility: nudge Re(s̃) and watch which roots sit inside the unit disk
  const auto nudged = char_roots(side, s_tilde + Complex(kPerturb, 0.0));
  for (int i = 0; i < 3; ++i) {
    int match = 0;
    double best = std::abs(nudged[0] - rs.roots[i]);
    for (int j = 1; j < 3; ++j) {
      const double d = std::abs(nudged[j] - rs.roots[i]);
      if (d < best) best = d, match = j;
    }
    rs.admissible[i] = std::abs(nudged[match]) < 1.0;
    // slow branch: tends to 1 as s̃ -> 0
    rs.slow[i] = rs.admissible[i] && std::abs(rs.roots[i] - 1.0) < 0.5;
  }
  return rs;
}

Eigen::Matrix2cd scalar_boundary_matrix(double tau, Complex st) {
  const RootSet rs = characteristic_roots(3, BoundarySide::kInflow, st);
  const Complex roots[2] = {rs.slow_root(), rs.fast_root()};
  Eigen::Matrix2cd C;
  for (int j = 0; j < 2; ++j) {
    const Complex k = roots[j];
    C(0, j) = st - 1.0 - 2.4 * tau + k;
    C(1, j) = -9.0 / 13.0 + st * k + 5.0 / 13.0 * k + 4.0 / 13.0 * k * k;
  }
  return C;
}

std::complex<double> boundary_determinant_scalar(double tau, Complex st) {
  return scalar_boundary_matrix(tau, st).determinant();
}

SigmaSolution sigma_scalar(double tau) {
  if (tau == 0.0) throw std::invalid_argument("sigma_scalar: tau = 0 is degenerate");
  const Eigen::Matrix2d C = scalar_boundary_matrix(tau, 0.0).real();
  const Eigen::Vector2d d3(0.5, -5.0 / 26.0);
  const Eigen::Vector2d sig = C.fullPivLu().solve(d3);

  SigmaSolution out;
  out.sigma1 = -10.0 * (1.0 + tau) / ((3.0 + 5.0 * kSqrt33) * tau);
  out.sigma2 = 10.0 / (3.0 + 5.0 * kSqrt33);
  out.closed_numeric_gap =
      std::max(std::abs(out.sigma1 - sig[0]), std::abs(out.sigma2 - sig[1]));
  return out;
}

Eigen::Matrix4d system_boundary_matrix(double a0, double t1, double t2) {
  const double s = kSqrt33;
  Eigen::Matrix4d C;
  C << (s + 4) / 10, (96 * a0 * t1 - 5 * s + 73) / 40, (24 * a0 * t1 + 7) / 10,
      -(12 * t1 * (a0 - 1) + 7) / 5,
      -(s + 4) / 26, (5 * s + 23) / 104, 5.0 / 26, -5.0 / 13,
      -(s + 4) / 10, (96 * a0 * t2 - 5 * s + 17) / 40, (24 * a0 * t2 - 7) / 10,
      (7 - 12 * t2 * (a0 - 1)) / 5,
      (s + 4) / 26, (5 * s - 17) / 104, -5.0 / 26, 5.0 / 13;
  return C;
}

Sigma2System sigma2_system(double alpha0, double tau1, double tau2) {
  if (tau1 + tau2 == 0.0)
    throw std::invalid_argument("sigma2_system: tau1 + tau2 = 0 is degenerate");
  Sigma2System out;
  out.closed_form = -(25.0 * kSqrt33 - 15.0) * (alpha0 * tau1 + tau2 + 1.0) /
                    (204.0 * (tau1 + tau2) * (alpha0 + 1.0));
  // right-hand side for boundary data u_xx = v_xx = 1/2, matching the closed
  // form's normalization as a multiple of h^2 (u_xx + v_xx)
  const double uxx = 0.5, vxx = 0.5;
  Eigen::Vector4d d;
  d << -(3 * vxx + 2 * uxx) / 10.0, (3 * vxx + 2 * uxx) / 26.0, -(3 * uxx + 2 * vxx) / 10.0,
      (3 * uxx + 2 * vxx) / 26.0;
  out.solution = system_boundary_matrix(alpha0, tau1, tau2).fullPivLu().solve(d);
  out.numeric = out.solution[2];
  return out;
}

KappaBound kappa_bound_check(double eta_h) {
  if (!(eta_h > 0.0)) throw std::invalid_argument("kappa_bound_check: eta_h must be positive");
  const RootSet rs = characteristic_roots(3, BoundarySide::kInflow, Complex(eta_h, 0.0));
  const double mod = std::abs(rs.slow_root());
  KappaBound kb;
  kb.lhs = 1.0 / (1.0 - mod * mod);
  kb.rhs = 1.0 / (2.0 * eta_h);
  kb.ok = kb.lhs <= kb.rhs * 1.1;
  return kb;
}

}  // namespace upsbp
