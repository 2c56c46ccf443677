#ifndef UPSBP_SAT_SCHEMES_HPP
#define UPSBP_SAT_SCHEMES_HPP

#include <functional>
#include <memory>

#include <Eigen/Core>

#include "upsbp/stabilization.hpp"
#include "upsbp/upwind_ops.hpp"

namespace upsbp {

using TimeFunction = std::function<double(double)>;

/// Advection semidiscretization u_t = -D_m u + tau H^{-1} e_0 (u_1 - g(t)).
/// The penalty tau <= -1/2 certifies energy stability; other values are legal
/// but uncertified.
struct AdvectionScheme {
  const UpwindPair* pair = nullptr;
  double tau = -1.0;
  TimeFunction g;

  bool certified_stable() const { return tau <= -0.5; }
};

Eigen::VectorXd advection_rhs(const AdvectionScheme& scheme, const Eigen::VectorXd& u, double t);

/// M with d/dt ||u||_H^2 = u^T M u for homogeneous data:
/// M = -(Qm + Qm^T) + (2 tau + 1) e_0 e_0^T - e_n e_n^T. Energy stable iff M <= 0.
Eigen::MatrixXd advection_stability_matrix(const AdvectionScheme& scheme);

/// 2x2 hyperbolic system with flux splitting A = Am + Ap and SAT penalties
/// tau_1..tau_4 imposing u + alpha0 v = g1 at x=0 and u + alpha1 v = gn at x=1.
/// State layout: w = (u-block, v-block), each of length n.
struct SystemScheme {
  const UpwindPair* pair = nullptr;
  double alpha0 = 0.5, alpha1 = 0.0;
  double tau1 = -4.0 / 3.0, tau2 = -1.0 / 3.0, tau3 = 0.0, tau4 = 1.0;
  TimeFunction g1, gn;

  static Eigen::Matrix2d Am() { return 0.5 * (Eigen::Matrix2d() << 1, 1, 1, 1).finished(); }
  static Eigen::Matrix2d Ap() { return 0.5 * (Eigen::Matrix2d() << -1, 1, 1, -1).finished(); }

  bool wellposed() const;
  bool certified_stable() const;
};

struct SystemStability {
  bool wellposed = false;  // alpha0 >= 0 and alpha1 <= 0
  bool stable = false;     // both penalty inequalities hold
  double lhs0 = 0.0;       // (a0 t1 - t2 - 1)^2 + 4 a0 t1
  double lhs1 = 0.0;       // (a1 t3 - t4 + 1)^2 - 4 a1 t3
};

SystemStability system_stability_check(double alpha0, double alpha1, double tau1, double tau2,
                                       double tau3, double tau4);

Eigen::VectorXd system_rhs(const SystemScheme& scheme, const Eigen::VectorXd& w, double t);

/// Advection scheme with the stabilized SBP-WENO spatial operator in place of D_m.
struct WenoAdvectionScheme {
  const StabilizedWenoOperator* op = nullptr;
  double tau = -1.0;
  TimeFunction g;

  bool certified_stable() const { return tau <= -0.5; }
};

Eigen::VectorXd weno_advection_rhs(const WenoAdvectionScheme& scheme, const Eigen::VectorXd& u,
                                   double t);

/// Right-hand-side evaluator owning scratch space; one instance per thread.
class RhsEvaluator {
 public:
  explicit RhsEvaluator(const AdvectionScheme& s)
      : fn_([&s](const Eigen::VectorXd& u, double t) { return advection_rhs(s, u, t); }) {}
  explicit RhsEvaluator(const SystemScheme& s)
      : fn_([&s](const Eigen::VectorXd& w, double t) { return system_rhs(s, w, t); }) {}
  explicit RhsEvaluator(const WenoAdvectionScheme& s)
      : fn_([&s](const Eigen::VectorXd& u, double t) { return weno_advection_rhs(s, u, t); }) {}

  const Eigen::VectorXd& operator()(const Eigen::VectorXd& u, double t) {
    work_ = fn_(u, t);
    return work_;
  }

 private:
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> fn_;
  Eigen::VectorXd work_;
};

}  // namespace upsbp

#endif
