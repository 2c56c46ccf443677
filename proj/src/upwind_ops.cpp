#include "upsbp/upwind_ops.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "upsbp/flux_points.hpp"

namespace upsbp {

Eigen::MatrixXd UpwindPair::B() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(grid.n, grid.n);
  b(0, 0) = -1.0;
  b(grid.n - 1, grid.n - 1) = 1.0;
  return b;
}

Eigen::MatrixXd UpwindPair::Qm() const {
  Eigen::MatrixXd q = h_diag.asDiagonal() * Dm;
  q(0, 0) += 0.5;  // Qm = H Dm - B/2 with B(0,0) = -1
  q(grid.n - 1, grid.n - 1) -= 0.5;
  return q;
}

UpwindPair build_upwind_pair(int p, const Grid& grid) {
  if (p != 3 && p != 4) throw std::invalid_argument("unsupported order: p must be 3 or 4");
  const int n = grid.n;
  if (n < CandidateFluxSet::min_points(p))
    throw std::invalid_argument("build_upwind_pair: grid too small for boundary closures");

  const FluxGrid fg = build_flux_grid(p, grid);
  const CandidateFluxSet fluxes(p, n);

  UpwindPair pair;
  pair.p = p;
  pair.b = p == 3 ? 1 : 2;
  pair.r = p == 3 ? 2 : 4;
  pair.grid = grid;
  pair.h_diag = fg.bar_spacings;

  // Dm row i = (flux row i+1 - flux row i) / hbar_i
  pair.Dm.setZero(n, n);
  Eigen::VectorXd row_lo(n), row_hi(n);
  fluxes.linear_row(0, row_lo);
  for (int i = 0; i < n; ++i) {
    fluxes.linear_row(i + 1, row_hi);
    pair.Dm.row(i) = (row_hi - row_lo).transpose() / fg.bar_spacings[i];
    row_lo.swap(row_hi);
  }

  // Dp = H^{-1} (B - (H Dm)^T)
  Eigen::MatrixXd hdm_t = (pair.h_diag.asDiagonal() * pair.Dm).transpose();
  pair.Dp = -hdm_t;
  pair.Dp(0, 0) -= 1.0;
  pair.Dp(n - 1, n - 1) += 1.0;
  pair.Dp = pair.h_diag.cwiseInverse().asDiagonal() * pair.Dp;
  return pair;
}

SbpPropertyReport verify_sbp(const UpwindPair& pair) {
  const int n = pair.grid.n;
  SbpPropertyReport rep;

  Eigen::MatrixXd hdm = pair.h_diag.asDiagonal() * pair.Dm;
  Eigen::MatrixXd hdp = pair.h_diag.asDiagonal() * pair.Dp;
  Eigen::MatrixXd res = hdm + hdp.transpose() - pair.B();
  rep.sbp_residual = res.cwiseAbs().maxCoeff();

  Eigen::MatrixXd qm = pair.Qm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qm + qm.transpose());
  rep.qm_min_eig = es.eigenvalues().minCoeff();

  rep.h_sum_error = std::abs(pair.h_diag.sum() - (pair.grid.x_right - pair.grid.x_left));

  // per-row exactness: largest k with (Dm x^k)_j = k x_j^{k-1} for all k' <= k
  const Eigen::VectorXd& x = pair.grid.points;
  rep.rowwise_accuracy_orders.assign(n, -1);
  std::vector<bool> alive(n, true);
  const double span = std::max(std::abs(pair.grid.x_left), std::abs(pair.grid.x_right));
  for (int k = 0; k <= pair.p; ++k) {
    Eigen::VectorXd xk = x.array().pow(k);
    Eigen::VectorXd want =
        k == 0 ? Eigen::VectorXd::Zero(n).eval()
               : (k * x.array().pow(k - 1)).matrix().eval();
    Eigen::VectorXd got = pair.Dm * xk;
    const double tol = 1e-10 * std::max(1.0, std::pow(span, k)) / pair.grid.h;
    for (int j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (std::abs(got[j] - want[j]) <= tol)
        rep.rowwise_accuracy_orders[j] = k;
      else
        alive[j] = false;
    }
  }
  return rep;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  os << "row,col,value\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) os << i << ',' << j << ',' << m(i, j) << '\n';
}

}  // namespace upsbp
