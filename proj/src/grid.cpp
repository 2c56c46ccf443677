#include "upsbp/grid.hpp"

#include <stdexcept>

namespace upsbp {

Grid build_grid(int n, double x_left, double x_right) {
  if (n < 2) throw std::invalid_argument("build_grid: need at least 2 grid points");
  if (!(x_left < x_right)) throw std::invalid_argument("build_grid: degenerate domain");
  Grid g;
  g.n = n;
  g.x_left = x_left;
  g.x_right = x_right;
  g.h = (x_right - x_left) / (n - 1);
  g.points.resize(n);
  for (int j = 0; j < n; ++j) g.points[j] = x_left + j * g.h;
  g.points[n - 1] = x_right;  // avoid trailing rounding on the right endpoint
  return g;
}

}  // namespace upsbp
