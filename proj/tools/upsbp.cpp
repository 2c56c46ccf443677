// Command-line driver: operator verification, normal-mode reports, convergence
// sweeps, the discontinuous four-shapes benchmark and stabilization reports,
// all emitted as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "upsbp/experiments.hpp"
#include "upsbp/normal_mode.hpp"
#include "upsbp/sat_schemes.hpp"
#include "upsbp/stabilization.hpp"
#include "upsbp/upwind_ops.hpp"

namespace {

using namespace upsbp;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  std::string path;       // empty: stdout
  std::ostringstream text;

  void flush() {
    if (path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot open output file " + path);
      f << text.str();
    }
  }
};

void emit_gnuplot(const std::string& csv_path, const std::string& title, int x_col, int y_col,
                  bool loglog) {
  if (csv_path.empty())
    throw std::runtime_error("--gnuplot needs --out so the script can reference the CSV");
  std::ofstream f(csv_path + ".gnuplot");
  f << "set datafile separator ','\n";
  f << "set key top left\n";
  if (loglog) f << "set logscale xy\n";
  f << "set title '" << title << "'\n";
  f << "plot '" << csv_path << "' using " << x_col << ":" << y_col
    << " every ::1 with linespoints title '" << title << "'\n";
}

Eigen::VectorXd make_state(const std::string& kind, const Grid& grid) {
  const int n = grid.n;
  Eigen::VectorXd u(n);
  if (kind == "smooth") {
    for (int j = 0; j < n; ++j) u[j] = std::sin(2.0 * M_PI * grid.points[j]);
  } else if (kind == "step") {
    const double mid = 0.5 * (grid.x_left + grid.x_right);
    for (int j = 0; j < n; ++j) u[j] = grid.points[j] > mid ? 1.0 : 0.0;
  } else if (kind == "random") {
    std::mt19937 rng(12345);
    std::normal_distribution<double> dist;
    for (int j = 0; j < n; ++j) u[j] = dist(rng);
  } else {
    throw std::runtime_error("unknown state kind: " + kind);
  }
  return u;
}

int cmd_verify_sbp(int p, int n, const std::string& out, const std::string& export_prefix) {
  const Grid grid = build_grid(n, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(p, grid);
  const SbpPropertyReport rep = verify_sbp(pair);
  Output o{out, {}};
  o.text << "quantity,value\n";
  o.text << "p," << p << "\nn," << n << "\nboundary_order," << pair.b << "\nclosure_width,"
         << pair.r << '\n';
  o.text << "sbp_residual," << fmt(rep.sbp_residual) << '\n';
  o.text << "qm_min_eig," << fmt(rep.qm_min_eig) << '\n';
  o.text << "h_sum_error," << fmt(rep.h_sum_error) << '\n';
  o.text << "row,accuracy_order\n";
  for (int j = 0; j < n; ++j) o.text << j << ',' << rep.rowwise_accuracy_orders[j] << '\n';
  o.flush();
  if (!export_prefix.empty()) {
    auto dump = [&](const std::string& name, const Eigen::MatrixXd& m) {
      std::ofstream f(export_prefix + "_" + name + ".csv");
      write_matrix_csv(f, m);
    };
    dump("dm", pair.Dm);
    dump("dp", pair.Dp);
    dump("h", pair.h_diag.asDiagonal());
    dump("b", pair.B());
  }
  return 0;
}

int cmd_normal_mode(double tau, double s_re, double s_im, bool have_system, double alpha0,
                    double tau1, double tau2, const std::string& out) {
  const std::complex<double> st(s_re, s_im);
  Output o{out, {}};
  o.text << "quantity,value\n";
  for (auto side : {BoundarySide::kInflow, BoundarySide::kOutflow}) {
    const char* name = side == BoundarySide::kInflow ? "inflow" : "outflow";
    const RootSet rs = characteristic_roots(3, side, st);
    for (int i = 0; i < 3; ++i) {
      o.text << name << "_root" << i << "_re," << fmt(rs.roots[i].real()) << '\n';
      o.text << name << "_root" << i << "_im," << fmt(rs.roots[i].imag()) << '\n';
      o.text << name << "_root" << i << "_admissible," << (rs.admissible[i] ? 1 : 0) << '\n';
      o.text << name << "_root" << i << "_slow," << (rs.slow[i] ? 1 : 0) << '\n';
    }
  }
  const std::complex<double> det = boundary_determinant_scalar(tau, st);
  o.text << "det_C3_re," << fmt(det.real()) << '\n';
  o.text << "det_C3_im," << fmt(det.imag()) << '\n';
  const SigmaSolution sig = sigma_scalar(tau);
  o.text << "sigma1," << fmt(sig.sigma1) << '\n';
  o.text << "sigma2," << fmt(sig.sigma2) << '\n';
  o.text << "sigma_closed_numeric_gap," << fmt(sig.closed_numeric_gap) << '\n';
  o.text << "predicted_rate," << (sig.sigma1 == 0.0 ? "2.5" : "2") << '\n';
  if (have_system) {
    const Sigma2System s2 = sigma2_system(alpha0, tau1, tau2);
    o.text << "system_sigma2_closed," << fmt(s2.closed_form) << '\n';
    o.text << "system_sigma2_numeric," << fmt(s2.numeric) << '\n';
    o.text << "system_det_Cs," << fmt(system_boundary_matrix(alpha0, tau1, tau2).determinant())
           << '\n';
  }
  o.flush();
  return 0;
}

int cmd_converge(const std::string& kind_str, int p, const ConvergenceParams& params,
                 const std::vector<int>& grids, const std::string& out, bool gnuplot) {
  SchemeKind kind;
  if (kind_str == "advection") kind = SchemeKind::kLinearAdvection;
  else if (kind_str == "system") kind = SchemeKind::kLinearSystem;
  else if (kind_str == "weno") kind = SchemeKind::kWenoAdvection;
  else throw std::runtime_error("unknown scheme kind: " + kind_str);

  const ConvergenceTable table = run_convergence(kind, p, params, grids);
  Output o{out, {}};
  o.text << "n,h,error_l2h,pairwise_rate,blew_up\n";
  for (const ConvergenceRow& r : table.rows)
    o.text << r.n << ',' << fmt(r.h) << ',' << fmt(r.error) << ',' << fmt(r.pairwise_rate) << ','
           << (r.blew_up ? 1 : 0) << '\n';
  o.text << "# slope_all," << fmt(table.slope_all) << '\n';
  o.text << "# slope_finest3," << fmt(table.slope_finest3) << '\n';
  o.flush();
  if (gnuplot) emit_gnuplot(out, kind_str + " convergence", 2, 3, true);
  return 0;
}

int cmd_four_shapes(const std::string& scheme, int p, int n, double cfl, int snapshot_every,
                    const std::string& out, bool gnuplot) {
  const bool weno = scheme == "weno";
  if (!weno && scheme != "linear") throw std::runtime_error("scheme must be weno or linear");
  const FourShapesResult res = run_four_shapes(p, n, weno, cfl, weno ? 120 : 0, false,
                                               snapshot_every);
  Output o{out, {}};
  if (!res.snapshot_times.empty()) {
    o.text << "t,x,u\n";
    for (std::size_t k = 0; k < res.snapshot_times.size(); ++k)
      for (int j = 0; j < res.n; ++j)
        o.text << fmt(res.snapshot_times[k]) << ',' << fmt(res.x[j]) << ','
               << fmt(res.snapshots[k][j]) << '\n';
  }
  o.text << "x,u,exact\n";
  for (int j = 0; j < res.n; ++j)
    o.text << fmt(res.x[j]) << ',' << fmt(res.solution[j]) << ',' << fmt(res.exact[j]) << '\n';
  o.text << "# overshoot," << fmt(res.overshoot) << '\n';
  o.text << "# undershoot," << fmt(res.undershoot) << '\n';
  o.text << "# square_overshoot," << fmt(res.square_overshoot) << '\n';
  o.text << "# total_variation," << fmt(res.total_variation) << '\n';
  o.text << "# error_linf," << fmt(res.error_linf) << '\n';
  if (weno) {
    o.text << "# stab_min_eig_scaled," << fmt(res.stab.min_eig_scaled) << '\n';
    o.text << "# stab_eig_samples," << res.stab.eig_samples << '\n';
    o.text << "# stab_fallbacks," << res.stab.fallbacks << '\n';
    o.text << "# stab_max_residual," << fmt(res.stab.max_residual) << '\n';
    o.text << "# stab_max_rs_entry," << fmt(res.stab.max_rs_entry) << '\n';
  }
  o.flush();
  if (gnuplot) emit_gnuplot(out, "four shapes", 1, 2, false);
  return 0;
}

int cmd_stabilization_report(int p, int n, const std::string& state_kind,
                             const std::string& out) {
  const Grid grid = build_grid(n, 0.0, 1.0);
  const double eps = grid.h * grid.h;
  const double del = std::pow(grid.h, 4);
  StabilizedWenoOperator op(p, grid, eps, del);
  const Eigen::VectorXd u = make_state(state_kind, grid);

  const SymmetricBands bands = op.r_bands(u);
  const LambdaFactors lf = extract_lambdas(bands, p);
  op.sample_certificate(u);

  Output o{out, {}};
  o.text << "quantity,value\n";
  o.text << "p," << p << "\nn," << n << "\nstate," << state_kind << '\n';
  o.text << "extraction_residual," << fmt(lf.residual) << '\n';
  o.text << "min_eig_scaled," << fmt(op.stats().min_eig_scaled) << '\n';
  o.text << "fallbacks," << op.stats().fallbacks << '\n';
  o.text << "max_rs_entry," << fmt(op.stats().max_rs_entry) << '\n';
  o.text << "lambda1_min," << fmt(lf.lambda1.minCoeff()) << '\n';
  o.text << "lambda2_min," << fmt(lf.lambda2.minCoeff()) << '\n';
  o.text << "lambda3_min," << fmt(lf.lambda3.minCoeff()) << '\n';
  o.flush();
  return 0;
}

int cmd_weno_report(int p, int n, const std::string& state_kind, const std::string& out) {
  const Grid grid = build_grid(n, 0.0, 1.0);
  WenoOperator op(p, grid, grid.h * grid.h);
  const Eigen::VectorXd u = make_state(state_kind, grid);
  Output o{out, {}};
  o.text << "flux_index,xbar,beta1,beta2,beta3,tau,w1,w2,w3\n";
  for (int i = 0; i <= n; ++i) {
    const SmoothnessData sd = op.nonlinear_weights(u, i);
    o.text << i << ',' << fmt(op.flux_grid().bar_points[i]);
    for (int k = 0; k < 3; ++k)
      o.text << ',' << (k < static_cast<int>(sd.beta.size()) ? fmt(sd.beta[k]) : "");
    o.text << ',' << fmt(sd.tau);
    for (int k = 0; k < 3; ++k)
      o.text << ',' << (k < static_cast<int>(sd.weights.size()) ? fmt(sd.weights[k]) : "");
    o.text << '\n';
  }
  o.flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"upwind SBP-SAT / SBP-WENO experiment driver"};
  app.set_config("--config", "", "key=value file presetting any option; flags win");
  app.require_subcommand(1);

  std::string out, export_prefix, state_kind = "smooth", kind_str = "advection",
              scheme = "weno";
  bool gnuplot = false;
  int p = 3, n = 101;
  double tau = -1.0, s_re = 0.0, s_im = 0.0;
  ConvergenceParams params;
  std::vector<int> grids = {41, 81, 161, 321, 641};
  double cfl = 0.0;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out, "write CSV here instead of stdout");
    c->add_flag("--gnuplot", gnuplot, "also write a <out>.gnuplot companion script");
  };

  auto* vs = app.add_subcommand("verify-sbp", "SBP identity, PSD and accuracy report");
  vs->add_option("--p", p, "interior order")->check(CLI::IsMember({3, 4}));
  vs->add_option("--n", n, "grid points");
  vs->add_option("--export-prefix", export_prefix, "dump Dm/Dp/H/B as (row,col,value) CSV");
  add_common(vs);

  auto* nm = app.add_subcommand("normal-mode", "characteristic roots and boundary-system report");
  nm->add_option("--tau", tau, "scalar penalty parameter");
  nm->add_option("--s-re", s_re, "Re of s-tilde");
  nm->add_option("--s-im", s_im, "Im of s-tilde");
  auto* a0_opt = nm->add_option("--alpha0", params.alpha0, "system boundary coefficient");
  nm->add_option("--tau1", params.tau1, "system penalty tau1");
  nm->add_option("--tau2", params.tau2, "system penalty tau2");
  add_common(nm);

  auto* cv = app.add_subcommand("converge", "convergence sweep and rate fit");
  cv->add_option("kind", kind_str, "advection | system | weno")->required();
  cv->add_option("--p", p, "interior order")->check(CLI::IsMember({3, 4}));
  cv->add_option("--tau", params.tau, "advection/weno penalty");
  cv->add_option("--alpha0", params.alpha0, "system alpha0");
  cv->add_option("--alpha1", params.alpha1, "system alpha1");
  cv->add_option("--tau1", params.tau1, "system tau1");
  cv->add_option("--tau2", params.tau2, "system tau2");
  cv->add_option("--tau3", params.tau3, "system tau3");
  cv->add_option("--tau4", params.tau4, "system tau4");
  cv->add_option("--grids", grids, "grid sizes")->delimiter(',');
  cv->add_option("--cfl", params.cfl, "Courant number (0: per-scheme default)");
  cv->add_option("--dt", params.dt_override, "fixed step size overriding cfl*h");
  cv->add_option("--t-final", params.t_final, "final time");
  cv->add_option("--epsilon", params.epsilon, "WENO epsilon (0: h^2)");
  cv->add_option("--delta", params.delta, "stabilization delta (0: h^4)");
  add_common(cv);

  auto* fs = app.add_subcommand("four-shapes", "discontinuous advection benchmark");
  fs->add_option("--scheme", scheme, "weno | linear");
  fs->add_option("--p", p, "interior order")->check(CLI::IsMember({3, 4}));
  fs->add_option("--n", n, "grid points")->default_val(401);
  fs->add_option("--cfl", cfl, "Courant number (0: default)");
  int snapshot_every = 0;
  fs->add_option("--snapshot-every", snapshot_every, "also emit every k-th step as t,x,u rows");
  add_common(fs);

  auto* sr = app.add_subcommand("stabilization-report", "factor extraction and PSD certificate");
  sr->add_option("--p", p, "interior order")->check(CLI::IsMember({3, 4}));
  sr->add_option("--n", n, "grid points");
  sr->add_option("--state", state_kind, "smooth | step | random");
  add_common(sr);

  auto* wr = app.add_subcommand("weno-report", "per-flux-point beta/tau/weights dump");
  wr->add_option("--p", p, "interior order")->check(CLI::IsMember({3, 4}));
  wr->add_option("--n", n, "grid points");
  wr->add_option("--state", state_kind, "smooth | step | random");
  add_common(wr);

  CLI11_PARSE(app, argc, argv);

  try {
    if (vs->parsed()) return cmd_verify_sbp(p, n, out, export_prefix);
    if (nm->parsed())
      return cmd_normal_mode(tau, s_re, s_im, a0_opt->count() > 0, params.alpha0, params.tau1,
                             params.tau2, out);
    if (cv->parsed()) return cmd_converge(kind_str, p, params, grids, out, gnuplot);
    if (fs->parsed()) return cmd_four_shapes(scheme, p, n, cfl, snapshot_every, out, gnuplot);
    if (sr->parsed()) return cmd_stabilization_report(p, n, state_kind, out);
    if (wr->parsed()) return cmd_weno_report(p, n, state_kind, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
