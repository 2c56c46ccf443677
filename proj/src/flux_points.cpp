#include "upsbp/flux_points.hpp"

#include <stdexcept>

namespace upsbp {

namespace {

void check_order(int p) {
  if (p != 3 && p != 4) throw std::invalid_argument("unsupported order: p must be 3 or 4");
}

}  // namespace

int CandidateFluxSet::min_points(int p) {
  check_order(p);
  return p == 3 ? 8 : 12;
}

FluxGrid build_flux_grid(int p, const Grid& grid) {
  check_order(p);
  const int n = grid.n;
  if (n < CandidateFluxSet::min_points(p))
    throw std::invalid_argument("build_flux_grid: grid too small for boundary closures");
  const double h = grid.h;
  FluxGrid fg;
  fg.n = n;
  fg.bar_spacings.setConstant(n, h);
  if (p == 3) {
    fg.bar_spacings[0] = 5.0 / 12.0 * h;
    fg.bar_spacings[1] = 13.0 / 12.0 * h;
    fg.bar_spacings[n - 2] = 13.0 / 12.0 * h;
    fg.bar_spacings[n - 1] = 5.0 / 12.0 * h;
  } else {
    const double edge[4] = {49.0 / 144.0, 61.0 / 48.0, 41.0 / 48.0, 149.0 / 144.0};
    for (int k = 0; k < 4; ++k) {
      fg.bar_spacings[k] = edge[k] * h;
      fg.bar_spacings[n - 1 - k] = edge[k] * h;
    }
  }
  fg.bar_points.resize(n + 1);
  fg.bar_points[0] = grid.x_left;
  for (int i = 0; i < n; ++i) fg.bar_points[i + 1] = fg.bar_points[i] + fg.bar_spacings[i];
  fg.bar_points[n] = grid.x_right;
  return fg;
}

CandidateFluxSet::CandidateFluxSet(int p, int n) : p_(p), n_(n) {
  check_order(p);
  if (n < min_points(p))
    throw std::invalid_argument("CandidateFluxSet: grid too small for boundary closures");
  rules_.resize(n + 1);

  auto fixed = [](int first, std::vector<double> c) {
    FluxPointRule r;
    r.stencils.push_back({1.0, first, std::move(c)});
    r.rule = WeightRule::kFixed;
    return r;
  };

  if (p == 3) {
    rules_[0] = fixed(0, {1.0});
    rules_[1] = fixed(0, {7.0 / 12.0, 5.0 / 12.0});
    for (int i = 2; i <= n - 2; ++i) {
      FluxPointRule r;
      r.stencils.push_back({1.0 / 3.0, i - 2, {-0.5, 1.5}});       // upwind {x_{i-2}, x_{i-1}}
      r.stencils.push_back({2.0 / 3.0, i - 1, {0.5, 0.5}});        // central {x_{i-1}, x_i}
      r.rule = WeightRule::kInterior3;
      rules_[i] = r;
    }
    {
      FluxPointRule r;  // outflow ansatz, weights follow the interior family
      r.stencils.push_back({2.0 / 7.0, n - 3, {-7.0 / 12.0, 19.0 / 12.0}});
      r.stencils.push_back({5.0 / 7.0, n - 2, {5.0 / 12.0, 7.0 / 12.0}});
      r.rule = WeightRule::kInterior3;
      rules_[n - 1] = r;
    }
    rules_[n] = fixed(n - 1, {1.0});
    return;
  }

  // p = 4
  rules_[0] = fixed(0, {1.0});
  {
    FluxPointRule r;
    r.stencils.push_back({15.0 / 19.0, 0, {95.0 / 144.0, 49.0 / 144.0}});
    r.stencils.push_back({4.0 / 19.0, 1, {1741.0 / 1152.0, -209.0 / 576.0, -19.0 / 128.0}});
    r.rule = WeightRule::kP4Left1;
    rules_[1] = r;
  }
  {
    FluxPointRule r;
    r.stencils.push_back({5.0 / 16.0, 0, {-11.0 / 18.0, 29.0 / 18.0}});
    r.stencils.push_back({11.0 / 16.0, 1, {5.0 / 11.0, 95.0 / 198.0, 13.0 / 198.0}});
    r.rule = WeightRule::kP4Left2;
    rules_[2] = r;
  }
  {
    FluxPointRule r;
    r.stencils.push_back({39.0 / 67.0, 2, {77.0 / 144.0, 67.0 / 144.0}});
    r.stencils.push_back({689.0 / 1809.0, 1, {-67.0 / 144.0, 211.0 / 144.0}});
    r.stencils.push_back({1.0 / 27.0, 0, {9.0 / 32.0, -37.0 / 36.0, 503.0 / 288.0}});
    r.rule = WeightRule::kP4Left3;
    rules_[3] = r;
  }
  for (int i = 4; i <= n - 4; ++i) {
    FluxPointRule r;
    r.stencils.push_back({0.5, i - 1, {0.5, 0.5}});
    r.stencils.push_back({0.25, i - 2, {-0.5, 1.5}});
    r.stencils.push_back({0.25, i - 3, {1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0}});
    r.rule = WeightRule::kInterior4;
    rules_[i] = r;
  }
  {
    FluxPointRule r;
    r.stencils.push_back(
        {5.0 / 53.0, n - 4, {49.0 / 80.0, -131.0 / 1440.0, 583.0 / 720.0, -53.0 / 160.0}});
    r.stencils.push_back({3576.0 / 5353.0, n - 5, {-53.0 / 288.0, 5.0 / 6.0, 101.0 / 288.0}});
    r.stencils.push_back({24.0 / 101.0, n - 6, {101.0 / 288.0, -89.0 / 72.0, 181.0 / 96.0}});
    r.rule = WeightRule::kP4Right3;
    rules_[n - 3] = r;
  }
  {
    FluxPointRule r;  // first linear weight is 31/176 (the printed 31/197 breaks sum-to-one)
    r.stencils.push_back({31.0 / 176.0, n - 2, {29.0 / 18.0, -11.0 / 18.0}});
    r.stencils.push_back({45.0 / 88.0, n - 3, {11.0 / 18.0, 7.0 / 18.0}});
    r.stencils.push_back({5.0 / 16.0, n - 5, {24.0 / 90.0, -83.0 / 90.0, 149.0 / 90.0}});
    r.rule = WeightRule::kP4Right2;
    rules_[n - 2] = r;
  }
  {
    FluxPointRule r;
    r.stencils.push_back({69.0 / 95.0, n - 2, {49.0 / 144.0, 95.0 / 144.0}});
    r.stencils.push_back({1127.0 / 4465.0, n - 3, {-95.0 / 144.0, 239.0 / 144.0}});
    r.stencils.push_back({1.0 / 47.0, n - 4, {47.0 / 96.0, -59.0 / 36.0, 619.0 / 288.0}});
    r.rule = WeightRule::kP4Right1;
    rules_[n - 1] = r;
  }
  rules_[n] = fixed(n - 1, {1.0});
}

double CandidateFluxSet::linear_flux(const Eigen::VectorXd& u, int i) const {
  if (i < 0 || i > n_) throw std::out_of_range("linear_flux: flux index out of range");
  const FluxPointRule& r = rules_[i];
  double v = 0.0;
  for (const Substencil& s : r.stencils) {
    double f = 0.0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) f += s.coeffs[k] * u[s.first + k];
    v += s.d * f;
  }
  return v;
}

void CandidateFluxSet::linear_row(int i, Eigen::VectorXd& row) const {
  row.setZero(n_);
  const FluxPointRule& r = rules_[i];
  for (const Substencil& s : r.stencils)
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) row[s.first + k] += s.d * s.coeffs[k];
}

}  // namespace upsbp
