#ifndef UPSBP_STABILIZATION_HPP
#define UPSBP_STABILIZATION_HPP

#include <Eigen/Core>

#include "upsbp/weno.hpp"

namespace upsbp {

/// Split of H*D into a skew part (up to B/2) and a symmetric remainder:
/// Q = (H*D - (H*D)^T + B)/2,  R = (H*D + (H*D)^T - B)/2,  H*D = Q + R.
struct SymmetricSplit {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
};

SymmetricSplit symmetric_split(const Eigen::VectorXd& h_diag, const Eigen::MatrixXd& D);

/// The n x (n+1) forward-difference factor with rows (-1, 1); every product in
/// the stabilization ansatz is built from it.
Eigen::MatrixXd difference_factor(int n);

/// Diagonal factors of the banded decomposition
///   R = G L3 G^T + K L2 K^T + Delta L1 Delta^T,
/// where Delta is the n x (n+1) forward difference, K = Delta Delta^T and
/// G = K Delta. L1, L3 have n+1 entries, L2 has n. For p=3 the L3 term is absent.
struct LambdaFactors {
  Eigen::VectorXd lambda1;  // n+1
  Eigen::VectorXd lambda2;  // n
  Eigen::VectorXd lambda3;  // n+1, identically zero when p=3
  double residual = 0.0;    // max |R - reconstruction| over the unused band entries
};

/// Symmetric banded storage of R: band(k) holds R(i, i+k).
struct SymmetricBands {
  int n = 0;
  int width = 0;                      // largest k with a stored band
  Eigen::VectorXd band[4];            // band[k] has n-k entries
};

/// Band-matching extraction: outermost diagonal first, then inward, with two
/// small corner solves per side. Exact whenever R admits the decomposition.
LambdaFactors extract_lambdas(const SymmetricBands& R, int p);
LambdaFactors extract_lambdas(const Eigen::MatrixXd& R, int p);

/// 0.5*(sqrt(value^2 + delta^2) - value): the nonnegative lift used to build
/// the stabilizing factors; equals max(-value, 0) when delta = 0.
double modify_lambda(double value, double delta);

/// Running statistics of the stabilized operator, reported with experiments.
struct StabilizationStats {
  long evaluations = 0;
  long fallbacks = 0;
  long eig_samples = 0;
  double min_eig_scaled = 0.0;   // min over samples of mineig(R+Rs)/max(1,|R|_max)
  double max_residual = 0.0;
  double max_rs_entry = 0.0;
};

/// SBP-WENO operator with the stabilizing symmetric correction:
/// D_mws u = D_mw u + H^{-1} R_s u with R_mw + R_s positive semidefinite.
class StabilizedWenoOperator {
 public:
  /// delta scales the lift of L1 and L2 (h^4 in the experiments). Boundary-coupled
  /// entries (L1 ends, L2 ends, all of L3) are lifted with delta = 0 so that the
  /// correction keeps D_mws exact on constants.
  StabilizedWenoOperator(int p, const Grid& grid, double epsilon, double delta);

  const WenoOperator& weno() const { return weno_; }
  int n() const { return weno_.n(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;

  /// Frozen-weight R_mw bands at the given state.
  SymmetricBands r_bands(const Eigen::VectorXd& state, bool linear_weights = false) const;

  /// Dense R_s built from the modified factors at the given state.
  Eigen::MatrixXd rs_matrix(const Eigen::VectorXd& state) const;

  /// Samples mineig(R_mw + R_s) at the given state into the running stats.
  void sample_certificate(const Eigen::VectorXd& state) const;

  StabilizationStats& stats() const { return stats_; }

 private:
  void factors(const Eigen::VectorXd& state, LambdaFactors& lf, Eigen::VectorXd& l1s,
               Eigen::VectorXd& l2s, Eigen::VectorXd& l3s) const;
  void apply_rs(const Eigen::VectorXd& l1s, const Eigen::VectorXd& l2s,
                const Eigen::VectorXd& l3s, const Eigen::VectorXd& u,
                Eigen::VectorXd& out) const;

  WenoOperator weno_;
  double delta_;
  mutable StabilizationStats stats_;
  mutable Eigen::VectorXd scratch_[4];
};

}  // namespace upsbp

#endif
