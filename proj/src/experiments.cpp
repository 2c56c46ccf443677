#include "upsbp/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace upsbp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double advection_exact(double x, double t) { return std::sin(kTwoPi * (x - t) + 1.0); }

double system_exact_u(double x, double t) {
  return -std::sin(kTwoPi * (x + t)) + std::cos(kTwoPi * (x - t));
}

double system_exact_v(double x, double t) {
  return std::sin(kTwoPi * (x + t)) + std::cos(kTwoPi * (x - t));
}

double four_shapes_inflow(double t) {
  constexpr double dz = 0.005, z = -1.2;
  constexpr double zm = z - dz, zp = z + dz;
  constexpr double al = 10.0, alm = al - dz, alp = al + dz;
  const double beta = std::log(2.0) / (36.0 * dz * dz);
  const double a = -1.0 - t;
  if (t >= 0.0 && t <= 0.4) {
    return (std::exp(-beta * (a - zm) * (a - zm)) + std::exp(-beta * (a - zp) * (a - zp)) +
            4.0 * std::exp(-beta * (a - z) * (a - z))) /
           6.0;
  }
  if (t >= 0.6 && t <= 0.8) return 1.0;
  if (t >= 1.0 && t <= 1.2) return 1.0 - std::abs(10.0 * (a + 2.1));
  if (t >= 1.4 && t <= 1.6) {
    auto arc = [&](double alpha) {
      return std::sqrt(std::max(0.0, 1.0 - alpha * alpha * (a + 2.5) * (a + 2.5)));
    };
    return (arc(alm) + arc(alp) + 4.0 * arc(al)) / 6.0;
  }
  return 0.0;
}

double four_shapes_exact(double x, double t) {
  const double lag = t - (x + 1.0);
  return lag >= 0.0 ? four_shapes_inflow(lag) : 0.0;
}

double default_cfl(SchemeKind kind, int p) {
  const bool weno = kind == SchemeKind::kWenoAdvection;
  if (p == 3) return weno ? 0.3 : 0.5;
  return weno ? 0.2 : 0.25;
}

double fit_rate(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("fit_rate: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(hs[i] > 0.0) || !std::isfinite(errors[i])) continue;
    const double lx = std::log(hs[i]), ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("fit_rate: insufficient data (need two valid rows)");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

double h_norm_error(const Eigen::VectorXd& u, const Eigen::VectorXd& exact,
                    const Eigen::VectorXd& h_diag) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double d = u[i] - exact[i];
    e += h_diag[i % h_diag.size()] * d * d;
  }
  return std::sqrt(e);
}

struct RunResult {
  double error = 0.0;
  bool blew_up = false;
};

RunResult run_one(SchemeKind kind, int p, const ConvergenceParams& params, int n) {
  const Grid grid = build_grid(n, 0.0, 1.0);
  const double cfl = params.cfl > 0.0 ? params.cfl : default_cfl(kind, p);
  IntegratorConfig cfg;
  cfg.cfl = cfl;
  cfg.dt_override = params.dt_override;
  cfg.t_final = params.t_final;
  RunResult out;
  try {
    if (kind == SchemeKind::kLinearAdvection) {
      const UpwindPair pair = build_upwind_pair(p, grid);
      AdvectionScheme scheme{&pair, params.tau, [](double t) { return advection_exact(0.0, t); }};
      Eigen::VectorXd u0 = grid.points.unaryExpr([](double x) { return advection_exact(x, 0.0); });
      RhsFunction rhs = [&](const Eigen::VectorXd& u, double t) {
        return advection_rhs(scheme, u, t);
      };
      Trajectory traj = integrate(rhs, u0, pair.h_diag, grid.h, cfg);
      Eigen::VectorXd exact = grid.points.unaryExpr(
          [&](double x) { return advection_exact(x, params.t_final); });
      out.error = h_norm_error(traj.states.back(), exact, pair.h_diag);
    } else if (kind == SchemeKind::kLinearSystem) {
      const UpwindPair pair = build_upwind_pair(p, grid);
      SystemScheme scheme;
      scheme.pair = &pair;
      scheme.alpha0 = params.alpha0;
      scheme.alpha1 = params.alpha1;
      scheme.tau1 = params.tau1;
      scheme.tau2 = params.tau2;
      scheme.tau3 = params.tau3;
      scheme.tau4 = params.tau4;
      scheme.g1 = [&](double t) {
        return system_exact_u(0.0, t) + params.alpha0 * system_exact_v(0.0, t);
      };
      scheme.gn = [&](double t) {
        return system_exact_u(1.0, t) + params.alpha1 * system_exact_v(1.0, t);
      };
      Eigen::VectorXd w0(2 * n), exact(2 * n);
      for (int j = 0; j < n; ++j) {
        w0[j] = system_exact_u(grid.points[j], 0.0);
        w0[n + j] = system_exact_v(grid.points[j], 0.0);
        exact[j] = system_exact_u(grid.points[j], params.t_final);
        exact[n + j] = system_exact_v(grid.points[j], params.t_final);
      }
      RhsFunction rhs = [&](const Eigen::VectorXd& w, double t) { return system_rhs(scheme, w, t); };
      Trajectory traj = integrate(rhs, w0, pair.h_diag, grid.h, cfg);
      out.error = h_norm_error(traj.states.back(), exact, pair.h_diag);
    } else {
      const double eps = params.epsilon > 0.0 ? params.epsilon : grid.h * grid.h;
      const double del = params.delta > 0.0 ? params.delta : std::pow(grid.h, 4);
      StabilizedWenoOperator op(p, grid, eps, del);
      WenoAdvectionScheme scheme{&op, params.tau,
                                 [](double t) { return advection_exact(0.0, t); }};
      Eigen::VectorXd u0 = grid.points.unaryExpr([](double x) { return advection_exact(x, 0.0); });
      RhsFunction rhs = [&](const Eigen::VectorXd& u, double t) {
        return weno_advection_rhs(scheme, u, t);
      };
      Trajectory traj =
          integrate(rhs, u0, op.weno().flux_grid().bar_spacings, grid.h, cfg);
      Eigen::VectorXd exact = grid.points.unaryExpr(
          [&](double x) { return advection_exact(x, params.t_final); });
      out.error = h_norm_error(traj.states.back(), exact, op.weno().flux_grid().bar_spacings);
    }
  } catch (const NumericalBlowup&) {
    out.blew_up = true;
  }
  if (!std::isfinite(out.error)) {
    out.blew_up = true;
    out.error = 0.0;
  }
  return out;
}

}  // namespace

ConvergenceTable run_convergence(SchemeKind kind, int p, const ConvergenceParams& params,
                                 const std::vector<int>& grids) {
  if (grids.size() < 2) throw std::invalid_argument("run_convergence: need at least two grids");
  for (std::size_t i = 1; i < grids.size(); ++i)
    if (grids[i] <= grids[i - 1])
      throw std::invalid_argument("run_convergence: grids must be increasing");

  ConvergenceTable table;
  table.kind = kind;
  table.p = p;
  double prev_err = 0.0, prev_h = 0.0;
  for (int n : grids) {
    ConvergenceRow row;
    row.n = n;
    row.h = 1.0 / (n - 1);
    const RunResult rr = run_one(kind, p, params, n);
    row.blew_up = rr.blew_up;
    row.error = rr.error;
    if (!row.blew_up && prev_err > 0.0)
      row.pairwise_rate = std::log(prev_err / row.error) / std::log(prev_h / row.h);
    if (!row.blew_up) {
      prev_err = row.error;
      prev_h = row.h;
    }
    table.rows.push_back(row);
  }

  std::vector<double> errs, hs;
  for (const ConvergenceRow& r : table.rows)
    if (!r.blew_up) {
      errs.push_back(r.error);
      hs.push_back(r.h);
    }
  table.slope_all = fit_rate(errs, hs);
  const std::size_t k = std::min<std::size_t>(3, errs.size());
  table.slope_finest3 = fit_rate({errs.end() - k, errs.end()}, {hs.end() - k, hs.end()});
  return table;
}

FourShapesResult run_four_shapes(int p, int n, bool weno, double cfl, int certificate_samples,
                                 bool homogeneous_variant, int snapshot_every) {
  if (n < 201) throw std::invalid_argument("run_four_shapes: need at least 201 grid points");
  const Grid grid = build_grid(n, -1.0, 1.0);
  const double tf = 1.9;
  const double used_cfl = cfl > 0.0 ? cfl : default_cfl(weno ? SchemeKind::kWenoAdvection
                                                             : SchemeKind::kLinearAdvection,
                                                        p);
  FourShapesResult res;
  res.n = n;
  res.x = grid.points;

  TimeFunction g;
  Eigen::VectorXd u0;
  IntegratorConfig cfg;
  cfg.cfl = used_cfl;
  cfg.snapshot_every = snapshot_every;
  if (homogeneous_variant) {
    // nonsmooth initial profile leaving through the outflow, zero inflow data
    g = [](double) { return 0.0; };
    u0 = grid.points.unaryExpr([&](double x) { return four_shapes_exact(x, tf); });
    cfg.t_final = 0.5;
    cfg.homogeneous_data = true;
    cfg.certified_stable = true;
  } else {
    g = four_shapes_inflow;
    u0 = Eigen::VectorXd::Zero(n);
    cfg.t_final = tf;
  }

  Trajectory traj;
  if (weno) {
    const double eps = grid.h * grid.h;
    const double del = std::pow(grid.h, 4);
    StabilizedWenoOperator op(p, grid, eps, del);
    WenoAdvectionScheme scheme{&op, -1.0, g};
    long eval_count = 0;
    const long total_steps = static_cast<long>(std::ceil(cfg.t_final / (used_cfl * grid.h)));
    const long sample_stride =
        certificate_samples > 0 ? std::max<long>(1, 4 * total_steps / certificate_samples) : 0;
    RhsFunction rhs = [&](const Eigen::VectorXd& u, double t) {
      if (sample_stride > 0 && eval_count % sample_stride == 0) op.sample_certificate(u);
      ++eval_count;
      return weno_advection_rhs(scheme, u, t);
    };
    traj = integrate(rhs, u0, op.weno().flux_grid().bar_spacings, grid.h, cfg);
    res.stab = op.stats();
  } else {
    const UpwindPair pair = build_upwind_pair(p, grid);
    AdvectionScheme scheme{&pair, -1.0, g};
    RhsFunction rhs = [&](const Eigen::VectorXd& u, double t) {
      return advection_rhs(scheme, u, t);
    };
    traj = integrate(rhs, u0, pair.h_diag, grid.h, cfg);
  }

  if (snapshot_every > 0 && traj.states.size() > 1) {
    res.snapshot_times.assign(traj.times.begin(), traj.times.end() - 1);
    res.snapshots.assign(traj.states.begin(), traj.states.end() - 1);
  }
  const Eigen::VectorXd& u = traj.states.back();
  res.solution = u;
  res.exact = grid.points.unaryExpr(
      [&](double x) { return four_shapes_exact(x, cfg.t_final); });
  res.overshoot = u.maxCoeff() - 1.0;
  res.undershoot = -u.minCoeff();
  res.total_variation = (u.tail(n - 1) - u.head(n - 1)).cwiseAbs().sum();
  res.error_linf = (u - res.exact).cwiseAbs().maxCoeff();
  res.homogeneous_energy_ok = !traj.energy_increase_flagged;
  res.max_relative_energy_growth = traj.max_relative_energy_growth;
  // the square wave sits in x = [0.1, 0.3] at t = 1.9
  double sq = -2.0;
  for (int j = 0; j < n; ++j)
    if (grid.points[j] >= 0.0 && grid.points[j] <= 0.4) sq = std::max(sq, u[j]);
  res.square_overshoot = sq - 1.0;
  return res;
}

}  // namespace upsbp
