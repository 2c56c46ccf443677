#include "upsbp/time_integration.hpp"

#include <cmath>

namespace upsbp {

Eigen::VectorXd rk4_step(const RhsFunction& rhs, const Eigen::VectorXd& u, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const Eigen::VectorXd k1 = rhs(u, t);
  const Eigen::VectorXd k2 = rhs(u + 0.5 * dt * k1, t + 0.5 * dt);
  const Eigen::VectorXd k3 = rhs(u + 0.5 * dt * k2, t + 0.5 * dt);
  const Eigen::VectorXd k4 = rhs(u + dt * k3, t + dt);
  return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const RhsFunction& rhs, const Eigen::VectorXd& u0,
                     const Eigen::VectorXd& h_diag, double h, const IntegratorConfig& config) {
  const double dt0 = config.dt_override > 0.0 ? config.dt_override : config.cfl * h;
  if (!(dt0 > 0.0)) throw std::invalid_argument("integrate: nonpositive step size");
  if (!(config.t_final > 0.0)) throw std::invalid_argument("integrate: nonpositive final time");

  Trajectory traj;
  Eigen::VectorXd u = u0;
  auto energy = [&](const Eigen::VectorXd& v) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      e += h_diag[i % h_diag.size()] * v[i] * v[i];
    return e;
  };
  double prev_energy = energy(u);
  double t = 0.0;
  long step = 0;
  while (t < config.t_final - 1e-14 * config.t_final) {
    const double dt = std::min(dt0, config.t_final - t);
    u = rk4_step(rhs, u, t, dt);
    t += dt;
    ++step;
    if (!u.allFinite())
      throw NumericalBlowup("integrate: state is no longer finite at step " +
                                std::to_string(step),
                            step);
    const double e = energy(u);
    if (config.homogeneous_data) {
      const double growth = (e - prev_energy) / std::max(prev_energy, 1e-300);
      traj.max_relative_energy_growth = std::max(traj.max_relative_energy_growth, growth);
      if (config.certified_stable && growth > 1e-10) traj.energy_increase_flagged = true;
    }
    traj.energies.push_back(e);
    prev_energy = e;
    if (config.snapshot_every > 0 && step % config.snapshot_every == 0 &&
        t < config.t_final - 1e-14) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  traj.times.push_back(t);
  traj.states.push_back(std::move(u));
  return traj;
}

}  // namespace upsbp
