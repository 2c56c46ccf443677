#ifndef UPSBP_EXPERIMENTS_HPP
#define UPSBP_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "upsbp/sat_schemes.hpp"
#include "upsbp/stabilization.hpp"
#include "upsbp/time_integration.hpp"

namespace upsbp {

enum class SchemeKind { kLinearAdvection, kLinearSystem, kWenoAdvection };

/// Manufactured smooth problems on [0,1] with t_final = 1: the advection
/// solution sin(2 pi (x - t) + 1) and the 2x2 system pair
/// U = -sin(2 pi (x+t)) + cos(2 pi (x-t)), V = sin(2 pi (x+t)) + cos(2 pi (x-t)).
double advection_exact(double x, double t);
double system_exact_u(double x, double t);
double system_exact_v(double x, double t);

/// Inflow signal of the discontinuous benchmark: a Gaussian triple, a square
/// wave, a triangle and an ellipse triple entering through x = -1.
double four_shapes_inflow(double t);
/// Exact profile g(t - (x + 1)) for t >= x + 1, zero before the wave arrives.
double four_shapes_exact(double x, double t);

struct ConvergenceParams {
  double tau = -1.0;               // advection / weno penalty
  double alpha0 = 0.5, alpha1 = 0.0;
  double tau1 = -4.0 / 3.0, tau2 = -1.0 / 3.0, tau3 = 0.0, tau4 = 1.0;
  double cfl = 0.0;                // 0: per-scheme default
  double dt_override = 0.0;        // > 0 replaces cfl * h on every grid
  double t_final = 1.0;
  double epsilon = 0.0;            // 0: h^2
  double delta = 0.0;              // 0: h^4
};

/// Step-size defaults that keep the temporal error below the targeted spatial
/// rates (the fourth-order pair needs a smaller Courant number than 0.5 for its
/// boundary-data stages not to contaminate the 3.5 rate).
double default_cfl(SchemeKind kind, int p);

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double error = 0.0;          // H-weighted discrete L2 error at t_final
  double pairwise_rate = 0.0;  // vs the previous surviving row (0 for the first)
  bool blew_up = false;
};

struct ConvergenceTable {
  SchemeKind kind;
  int p = 0;
  std::vector<ConvergenceRow> rows;
  double slope_all = 0.0;      // least-squares slope over all surviving rows
  double slope_finest3 = 0.0;  // least-squares slope over the three finest survivors
};

/// Least-squares slope of log(error) against log(h). Throws
/// std::invalid_argument with fewer than two valid rows.
double fit_rate(const std::vector<double>& errors, const std::vector<double>& hs);

ConvergenceTable run_convergence(SchemeKind kind, int p, const ConvergenceParams& params,
                                 const std::vector<int>& grids);

struct FourShapesResult {
  int n = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd solution;
  Eigen::VectorXd exact;
  double overshoot = 0.0;         // max(u) - 1 over the whole domain
  double undershoot = 0.0;        // -min(u)
  double square_overshoot = 0.0;  // max(u) - 1 over the square-wave window
  double total_variation = 0.0;
  double error_linf = 0.0;
  StabilizationStats stab;        // meaningful for the WENO scheme only
  bool homogeneous_energy_ok = true;
  double max_relative_energy_growth = 0.0;
  std::vector<double> snapshot_times;        // populated when snapshot_every > 0
  std::vector<Eigen::VectorXd> snapshots;
};

/// Integrates the discontinuous benchmark on [-1,1] to t = 1.9 with penalty
/// tau = -1. `weno` selects the stabilized SBP-WENO operator, otherwise the
/// linear pair is used on the same grid. `certificate_samples` > 0 samples
/// mineig(R_mw + R_s) that many times (roughly evenly) across the run.
FourShapesResult run_four_shapes(int p, int n, bool weno, double cfl = 0.0,
                                 int certificate_samples = 0,
                                 bool homogeneous_variant = false, int snapshot_every = 0);

}  // namespace upsbp

#endif
