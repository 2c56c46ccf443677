#ifndef UPSBP_GRID_HPP
#define UPSBP_GRID_HPP

#include <Eigen/Core>

namespace upsbp {

/// Uniform grid of n points spanning [x_left, x_right], h = (x_right-x_left)/(n-1).
struct Grid {
  int n = 0;
  double h = 0.0;
  double x_left = 0.0;
  double x_right = 1.0;
  Eigen::VectorXd points;
};

/// Throws std::invalid_argument for n < 2 or a degenerate domain.
Grid build_grid(int n, double x_left, double x_right);

}  // namespace upsbp

#endif
