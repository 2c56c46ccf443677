#ifndef UPSBP_TIME_INTEGRATION_HPP
#define UPSBP_TIME_INTEGRATION_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace upsbp {

using RhsFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

struct NumericalBlowup : std::runtime_error {
  explicit NumericalBlowup(const std::string& what, long step_index)
      : std::runtime_error(what), step(step_index) {}
  long step = -1;
};

/// Classical four-stage Runge-Kutta step.
Eigen::VectorXd rk4_step(const RhsFunction& rhs, const Eigen::VectorXd& u, double t, double dt);

struct IntegratorConfig {
  double cfl = 0.5;
  double t_final = 1.0;
  double dt_override = 0.0;   // > 0 replaces cfl * h
  int snapshot_every = 0;     // 0: keep only the final state
  bool homogeneous_data = false;  // enables the energy-monotonicity flag
  bool certified_stable = false;
};

struct Trajectory {
  std::vector<double> times;                // snapshot times (always includes t_final)
  std::vector<Eigen::VectorXd> states;      // snapshots matching `times`
  std::vector<double> energies;             // ||u||_H^2 after every step
  bool energy_increase_flagged = false;     // growth > 1e-10 relative on a certified run
  double max_relative_energy_growth = 0.0;
};

/// Advances u0 to t_final with dt = cfl*h (or the override), shortening the
/// last step to land exactly. h_diag supplies the discrete energy weights.
/// Throws NumericalBlowup if the state stops being finite.
Trajectory integrate(const RhsFunction& rhs, const Eigen::VectorXd& u0,
                     const Eigen::VectorXd& h_diag, double h, const IntegratorConfig& config);

}  // namespace upsbp

#endif
