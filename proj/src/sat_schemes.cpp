#include "upsbp/sat_schemes.hpp"

#include <stdexcept>

namespace upsbp {

Eigen::VectorXd advection_rhs(const AdvectionScheme& scheme, const Eigen::VectorXd& u, double t) {
  const UpwindPair& pair = *scheme.pair;
  if (u.size() != pair.grid.n) throw std::invalid_argument("advection_rhs: state length mismatch");
  Eigen::VectorXd r = -(pair.Dm * u);
  const double g = scheme.g ? scheme.g(t) : 0.0;
  r[0] += scheme.tau / pair.h_diag[0] * (u[0] - g);
  return r;
}

Eigen::MatrixXd advection_stability_matrix(const AdvectionScheme& scheme) {
  const UpwindPair& pair = *scheme.pair;
  const int n = pair.grid.n;
  Eigen::MatrixXd qm = pair.Qm();
  Eigen::MatrixXd M = -(qm + qm.transpose());
  M(0, 0) += 2.0 * scheme.tau + 1.0;
  M(n - 1, n - 1) -= 1.0;
  return M;
}

bool SystemScheme::wellposed() const {
  return system_stability_check(alpha0, alpha1, tau1, tau2, tau3, tau4).wellposed;
}

bool SystemScheme::certified_stable() const {
  return system_stability_check(alpha0, alpha1, tau1, tau2, tau3, tau4).stable;
}

SystemStability system_stability_check(double alpha0, double alpha1, double tau1, double tau2,
                                       double tau3, double tau4) {
  SystemStability s;
  s.wellposed = alpha0 >= 0.0 && alpha1 <= 0.0;
  const double a = alpha0 * tau1 - tau2 - 1.0;
  const double b = alpha1 * tau3 - tau4 + 1.0;
  s.lhs0 = a * a + 4.0 * alpha0 * tau1;
  s.lhs1 = b * b - 4.0 * alpha1 * tau3;
  s.stable = s.lhs0 <= 0.0 && s.lhs1 <= 0.0;
  return s;
}

Eigen::VectorXd system_rhs(const SystemScheme& scheme, const Eigen::VectorXd& w, double t) {
  const UpwindPair& pair = *scheme.pair;
  const int n = pair.grid.n;
  if (w.size() != 2 * n) throw std::invalid_argument("system_rhs: state length mismatch");
  const auto u = w.head(n);
  const auto v = w.tail(n);

  const Eigen::VectorXd dmu = pair.Dm * u, dmv = pair.Dm * v;
  const Eigen::VectorXd dpu = pair.Dp * u, dpv = pair.Dp * v;
  const Eigen::Matrix2d Am = SystemScheme::Am(), Ap = SystemScheme::Ap();

  Eigen::VectorXd r(2 * n);
  r.head(n) = -(Ap(0, 0) * dpu + Ap(0, 1) * dpv + Am(0, 0) * dmu + Am(0, 1) * dmv);
  r.tail(n) = -(Ap(1, 0) * dpu + Ap(1, 1) * dpv + Am(1, 0) * dmu + Am(1, 1) * dmv);

  const double g1 = scheme.g1 ? scheme.g1(t) : 0.0;
  const double gn = scheme.gn ? scheme.gn(t) : 0.0;
  const double res0 = u[0] + scheme.alpha0 * v[0] - g1;
  const double resn = u[n - 1] + scheme.alpha1 * v[n - 1] - gn;
  r[0] += scheme.tau1 / pair.h_diag[0] * res0;
  r[n] += scheme.tau2 / pair.h_diag[0] * res0;
  r[n - 1] += scheme.tau3 / pair.h_diag[n - 1] * resn;
  r[2 * n - 1] += scheme.tau4 / pair.h_diag[n - 1] * resn;
  return r;
}

Eigen::VectorXd weno_advection_rhs(const WenoAdvectionScheme& scheme, const Eigen::VectorXd& u,
                                   double t) {
  const StabilizedWenoOperator& op = *scheme.op;
  if (u.size() != op.n()) throw std::invalid_argument("weno_advection_rhs: state length mismatch");
  Eigen::VectorXd r = -op.apply(u);
  const double g = scheme.g ? scheme.g(t) : 0.0;
  r[0] += scheme.tau / op.weno().flux_grid().bar_spacings[0] * (u[0] - g);
  return r;
}

}  // namespace upsbp
