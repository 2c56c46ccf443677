#ifndef UPSBP_FLUX_POINTS_HPP
#define UPSBP_FLUX_POINTS_HPP

#include <vector>

#include <Eigen/Core>

#include "upsbp/grid.hpp"

namespace upsbp {

/// Flux-point grid complementing an n-point grid: n+1 points xbar_0..xbar_n with
/// xbar_0 = x_0, xbar_n = x_{n-1}, midpoints in the interior and shifted points near
/// the boundaries. The spacings hbar_i = xbar_i - xbar_{i-1} are the diagonal of the
/// SBP norm matrix H.
struct FluxGrid {
  int n = 0;
  Eigen::VectorXd bar_points;    // size n+1
  Eigen::VectorXd bar_spacings;  // size n, bar_spacings[i] = xbar_{i+1} - xbar_i
};

FluxGrid build_flux_grid(int p, const Grid& grid);

/// One candidate stencil of a numerical flux: a low-order flux on a few grid
/// points together with its linear weight d.
struct Substencil {
  double d = 1.0;
  int first = 0;                // first grid column (0-based)
  std::vector<double> coeffs;   // flux coefficients on columns first, first+1, ...
};

/// Classifies how the nonlinear weights at a flux point are computed.
enum class WeightRule {
  kFixed,       // injection / fixed-stencil flux, weights stay linear
  kInterior3,   // three-point WENO-Z family (also used at the p=3 outflow point)
  kInterior4,   // four-point stencil family with Jiang-Shu style third indicator
  kP4Left1, kP4Left2, kP4Left3,
  kP4Right1, kP4Right2, kP4Right3,
};

/// Full description of one flux point: its candidate decomposition plus the rule
/// selecting the smoothness indicators.
struct FluxPointRule {
  std::vector<Substencil> stencils;
  WeightRule rule = WeightRule::kFixed;
};

/// Candidate stencils, linear weights and weight rules for every flux point
/// 0..n of the order-p pair on an n-point grid.
class CandidateFluxSet {
 public:
  CandidateFluxSet(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  const FluxPointRule& at(int i) const { return rules_[i]; }

  /// Linear flux value \hat u_i = sum_j d_j \hat u^{(j)}_i.
  double linear_flux(const Eigen::VectorXd& u, int i) const;

  /// Combined linear coefficient row of flux i (length n, sparse in practice).
  void linear_row(int i, Eigen::VectorXd& row) const;

  /// Minimum admissible n for the boundary closures of order p.
  static int min_points(int p);

 private:
  int p_, n_;
  std::vector<FluxPointRule> rules_;
};

}  // namespace upsbp

#endif
