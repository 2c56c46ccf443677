#ifndef UPSBP_UPWIND_OPS_HPP
#define UPSBP_UPWIND_OPS_HPP

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "upsbp/grid.hpp"

namespace upsbp {

/// An upwind SBP pair (D_m, D_p) with diagonal norm H and boundary matrix
/// B = diag(-1, 0, ..., 0, 1). D_m is assembled in conservative form from the
/// linear numerical fluxes; D_p follows from Q_m = -Q_p^T.
struct UpwindPair {
  int p = 0;  // interior order (3 or 4)
  int b = 0;  // boundary closure order
  int r = 0;  // boundary closure width in grid points
  Grid grid;
  Eigen::MatrixXd Dm;
  Eigen::MatrixXd Dp;
  Eigen::VectorXd h_diag;  // diagonal of H (units of length)

  Eigen::MatrixXd H() const { return h_diag.asDiagonal(); }
  Eigen::MatrixXd B() const;
  Eigen::MatrixXd Qm() const;  // H*Dm - B/2
};

/// Requires n >= 8 for p=3 and n >= 12 for p=4 so the closures do not overlap.
UpwindPair build_upwind_pair(int p, const Grid& grid);

struct SbpPropertyReport {
  double sbp_residual = 0.0;               // max|H Dm + (H Dp)^T - B|
  double qm_min_eig = 0.0;                 // min eig of Qm + Qm^T
  double h_sum_error = 0.0;                // |sum(H) - domain length|
  std::vector<int> rowwise_accuracy_orders;  // per-row polynomial exactness of Dm
};

SbpPropertyReport verify_sbp(const UpwindPair& pair);

/// Writes (row, col, value) triplets of a dense matrix, skipping exact zeros.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

}  // namespace upsbp

#endif
