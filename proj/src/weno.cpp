#include "upsbp/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace upsbp {

namespace {

inline double sq(double x) { return x * x; }

// beta indicators and tau for one flux point; u is the full state, n the grid size.
void indicators(WeightRule rule, const Eigen::VectorXd& u, int i, int n,
                std::vector<double>& beta, double& tau) {
  switch (rule) {
    case WeightRule::kInterior3: {
      // used for flux points 2..n-2 and, with the same differences shifted to the
      // last three points, for the outflow ansatz at i = n-1
      const int c = (i <= n - 2) ? i - 1 : n - 2;
      const double um = u[c - 1], uc = u[c], up = u[c + 1];
      beta = {sq(uc - um), sq(up - uc)};
      tau = sq(up - 2.0 * uc + um);
      return;
    }
    case WeightRule::kInterior4: {
      const double u0 = u[i], um1 = u[i - 1], um2 = u[i - 2], um3 = u[i - 3];
      beta = {sq(u0 - um1), sq(um1 - um2),
              13.0 / 12.0 * sq(um1 - 2.0 * um2 + um3) + 0.25 * sq(5.0 * um1 - 8.0 * um2 + 3.0 * um3)};
      tau = sq(u0 - 3.0 * um1 + 3.0 * um2 - um3);
      return;
    }
    case WeightRule::kP4Left1: {
      const double b1 = sq(u[1] - u[0]);
      const double b2 = sq(9.0 * u[1] - 14.0 * u[2] + 5.0 * u[3]) / 16.0 +
                        49.0 / 48.0 * sq(u[1] - 2.0 * u[2] + u[3]);
      beta = {b1, b2};
      tau = sq(b2 - b1);
      return;
    }
    case WeightRule::kP4Left2: {
      const double b1 = sq(u[1] - u[0]);
      const double b2 = 13.0 / 12.0 * sq(u[1] - 2.0 * u[2] + u[3]) +
                        0.25 * sq(3.0 * u[1] - 4.0 * u[2] + u[3]);
      beta = {b1, b2};
      tau = std::abs(b2 - b1);
      return;
    }
    case WeightRule::kP4Left3: {
      const double b1 = sq(u[3] - u[2]);
      const double b2 = sq(u[2] - u[1]);
      const double b3 = 13.0 / 12.0 * sq(u[0] - 2.0 * u[1] + u[2]) +
                        0.25 * sq(u[0] - 4.0 * u[1] + 3.0 * u[2]);
      beta = {b1, b2, b3};
      tau = std::abs(b1 + b2 - 2.0 * b3);
      return;
    }
    case WeightRule::kP4Right1: {
      const double b1 = sq(u[n - 1] - u[n - 2]);
      const double b2 = sq(u[n - 2] - u[n - 3]);
      const double b3 = 13.0 / 12.0 * sq(u[n - 2] - 2.0 * u[n - 3] + u[n - 4]) +
                        0.25 * sq(3.0 * u[n - 2] - 4.0 * u[n - 3] + u[n - 4]);
      beta = {b1, b2, b3};
      tau = std::abs(b1 + b2 - 2.0 * b3);
      return;
    }
    case WeightRule::kP4Right2: {
      const double b1 = sq(u[n - 1] - u[n - 2]);
      const double b2 = sq(u[n - 2] - u[n - 3]);
      const double b3 = 13.0 / 12.0 * sq(u[n - 3] - 2.0 * u[n - 4] + u[n - 5]) +
                        0.25 * sq(3.0 * u[n - 3] - 4.0 * u[n - 4] + u[n - 5]);
      beta = {b1, b2, b3};
      tau = std::abs(b1 + b2 - 2.0 * b3);
      return;
    }
    case WeightRule::kP4Right3: {
      const double b1 =
          781.0 / 720.0 * sq(u[n - 1] - 3.0 * u[n - 2] + 3.0 * u[n - 3] - u[n - 4]) +
          13.0 / 12.0 * sq(u[n - 1] - 4.0 * u[n - 2] + 5.0 * u[n - 3] - 2.0 * u[n - 4]) +
          sq(3.0 * u[n - 1] - 13.0 * u[n - 2] + 25.0 * u[n - 3] - 15.0 * u[n - 4]) / 64.0;
      const double b2 = 13.0 / 12.0 * sq(u[n - 3] - 2.0 * u[n - 4] + u[n - 5]) +
                        0.25 * sq(u[n - 3] - u[n - 5]);
      const double b3 = 13.0 / 12.0 * sq(u[n - 4] - 2.0 * u[n - 5] + u[n - 6]) +
                        0.25 * sq(3.0 * u[n - 4] - 4.0 * u[n - 5] + u[n - 6]);
      beta = {b1, b2, b3};
      tau = std::abs(4.0 * b1 - 3.0 * b2 - b3);
      return;
    }
    case WeightRule::kFixed:
      beta.clear();
      tau = 0.0;
      return;
  }
  throw std::logic_error("indicators: unhandled weight rule");
}

}  // namespace

WenoOperator::WenoOperator(int p, const Grid& grid, double epsilon)
    : p_(p), grid_(grid), epsilon_(epsilon),
      flux_grid_(build_flux_grid(p, grid)),
      candidates_(p, grid.n) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("WenoOperator: epsilon must be positive");
}

SmoothnessData WenoOperator::nonlinear_weights(const Eigen::VectorXd& u, int i) const {
  const FluxPointRule& r = candidates_.at(i);
  SmoothnessData sd;
  sd.epsilon = epsilon_;
  if (r.rule == WeightRule::kFixed) {
    sd.weights = {1.0};
    return sd;
  }
  indicators(r.rule, u, i, grid_.n, sd.beta, sd.tau);
  double total = 0.0;
  sd.weights.resize(r.stencils.size());
  for (std::size_t j = 0; j < r.stencils.size(); ++j) {
    sd.weights[j] = r.stencils[j].d * (1.0 + sd.tau / (epsilon_ + sd.beta[j]));
    total += sd.weights[j];
  }
  for (double& w : sd.weights) w /= total;
  return sd;
}

void WenoOperator::fluxes(const Eigen::VectorXd& u, Eigen::VectorXd& fhat,
                          bool linear_weights) const {
  const int n = grid_.n;
  if (u.size() != n) throw std::invalid_argument("WenoOperator: state length mismatch");
  fhat.resize(n + 1);
  std::vector<double> beta;
  double tau;
  for (int i = 0; i <= n; ++i) {
    const FluxPointRule& r = candidates_.at(i);
    if (linear_weights || r.rule == WeightRule::kFixed) {
      fhat[i] = candidates_.linear_flux(u, i);
      continue;
    }
    indicators(r.rule, u, i, n, beta, tau);
    double total = 0.0, value = 0.0;
    for (std::size_t j = 0; j < r.stencils.size(); ++j) {
      const Substencil& s = r.stencils[j];
      const double a = s.d * (1.0 + tau / (epsilon_ + beta[j]));
      double f = 0.0;
      for (std::size_t k = 0; k < s.coeffs.size(); ++k) f += s.coeffs[k] * u[s.first + k];
      value += a * f;
      total += a;
    }
    fhat[i] = value / total;
  }
}

Eigen::VectorXd WenoOperator::apply(const Eigen::VectorXd& u, bool linear_weights) const {
  Eigen::VectorXd fhat;
  fluxes(u, fhat, linear_weights);
  const int n = grid_.n;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i)
    out[i] = (fhat[i + 1] - fhat[i]) / flux_grid_.bar_spacings[i];
  return out;
}

WenoOperator::SparseRow WenoOperator::frozen_flux_row_sparse(const Eigen::VectorXd& state, int i,
                                                             bool linear_weights) const {
  const FluxPointRule& r = candidates_.at(i);
  SparseRow row;
  int lo = r.stencils[0].first, hi = lo;
  for (const Substencil& s : r.stencils) {
    lo = std::min(lo, s.first);
    hi = std::max(hi, s.first + static_cast<int>(s.coeffs.size()));
  }
  row.first = lo;
  row.size = hi - lo;
  std::vector<double> w;
  if (linear_weights || r.rule == WeightRule::kFixed) {
    w.resize(r.stencils.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = r.stencils[j].d;
    if (r.rule == WeightRule::kFixed) w = {1.0};
  } else {
    w = nonlinear_weights(state, i).weights;
  }
  for (std::size_t j = 0; j < r.stencils.size(); ++j) {
    const Substencil& s = r.stencils[j];
    for (std::size_t k = 0; k < s.coeffs.size(); ++k)
      row.coeffs[s.first + static_cast<int>(k) - lo] += w[j] * s.coeffs[k];
  }
  return row;
}

void WenoOperator::frozen_flux_row(const Eigen::VectorXd& state, int i, Eigen::VectorXd& row,
                                   bool linear_weights) const {
  row.setZero(grid_.n);
  SparseRow sr = frozen_flux_row_sparse(state, i, linear_weights);
  for (int k = 0; k < sr.size; ++k) row[sr.first + k] = sr.coeffs[k];
}

Eigen::MatrixXd WenoOperator::dmw_matrix(const Eigen::VectorXd& state, bool linear_weights) const {
  const int n = grid_.n;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  SparseRow prev = frozen_flux_row_sparse(state, 0, linear_weights);
  for (int i = 0; i < n; ++i) {
    SparseRow cur = frozen_flux_row_sparse(state, i + 1, linear_weights);
    const double inv = 1.0 / flux_grid_.bar_spacings[i];
    for (int k = 0; k < cur.size; ++k) D(i, cur.first + k) += inv * cur.coeffs[k];
    for (int k = 0; k < prev.size; ++k) D(i, prev.first + k) -= inv * prev.coeffs[k];
    prev = cur;
  }
  return D;
}

}  // namespace upsbp
