#ifndef UPSBP_WENO_HPP
#define UPSBP_WENO_HPP

#include <vector>

#include <Eigen/Core>

#include "upsbp/flux_points.hpp"
#include "upsbp/grid.hpp"

namespace upsbp {

/// Smoothness indicators and resulting nonlinear weights at one flux point.
struct SmoothnessData {
  std::vector<double> beta;
  double tau = 0.0;
  std::vector<double> weights;  // convex, matches the candidate stencils
  double epsilon = 0.0;
};

/// Nonlinear conservative difference operator D_mw built from WENO-Z style
/// reweighting of the candidate fluxes. With weights forced linear it reduces
/// to the underlying upwind operator D_m exactly.
class WenoOperator {
 public:
  WenoOperator(int p, const Grid& grid, double epsilon);

  int p() const { return p_; }
  int n() const { return grid_.n; }
  double epsilon() const { return epsilon_; }
  const Grid& grid() const { return grid_; }
  const FluxGrid& flux_grid() const { return flux_grid_; }
  const CandidateFluxSet& candidates() const { return candidates_; }

  SmoothnessData nonlinear_weights(const Eigen::VectorXd& u, int i) const;

  /// Numerical fluxes \hat u^w at all n+1 flux points.
  void fluxes(const Eigen::VectorXd& u, Eigen::VectorXd& fhat, bool linear_weights = false) const;

  /// Row i of D_mw u equals (\hat u^w_i - \hat u^w_{i-1}) / hbar_i.
  Eigen::VectorXd apply(const Eigen::VectorXd& u, bool linear_weights = false) const;

  /// The linear operator obtained by freezing the nonlinear weights at `state`,
  /// so that dmw_matrix(state) * state == apply(state).
  Eigen::MatrixXd dmw_matrix(const Eigen::VectorXd& state, bool linear_weights = false) const;

  /// Frozen flux coefficient row at flux point i (dense length-n row).
  void frozen_flux_row(const Eigen::VectorXd& state, int i, Eigen::VectorXd& row,
                       bool linear_weights = false) const;

  /// Compact frozen flux row: coefficients on grid columns first..first+m-1.
  struct SparseRow {
    int first = 0;
    int size = 0;
    double coeffs[8] = {0};
  };
  SparseRow frozen_flux_row_sparse(const Eigen::VectorXd& state, int i,
                                   bool linear_weights = false) const;

 private:
  int p_;
  Grid grid_;
  double epsilon_;
  FluxGrid flux_grid_;
  CandidateFluxSet candidates_;
};

}  // namespace upsbp

#endif
