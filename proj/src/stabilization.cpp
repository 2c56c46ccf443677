#include "upsbp/stabilization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace upsbp {

namespace {

constexpr double kResidualTol = 1e-10;

// forward difference and its products, applied as O(n) kernels
void delta_t(const Eigen::VectorXd& u, Eigen::VectorXd& v) {  // v = Delta^T u, size n+1
  const int n = static_cast<int>(u.size());
  v.resize(n + 1);
  v[0] = -u[0];
  for (int k = 1; k < n; ++k) v[k] = u[k - 1] - u[k];
  v[n] = u[n - 1];
}

void delta_f(const Eigen::VectorXd& v, Eigen::VectorXd& u) {  // u = Delta v, size n
  const int n = static_cast<int>(v.size()) - 1;
  u.resize(n);
  for (int i = 0; i < n; ++i) u[i] = v[i + 1] - v[i];
}

void k_apply(const Eigen::VectorXd& u, Eigen::VectorXd& v) {  // v = (Delta Delta^T) u
  const int n = static_cast<int>(u.size());
  v.resize(n);
  for (int i = 0; i < n; ++i) {
    double s = 2.0 * u[i];
    if (i > 0) s -= u[i - 1];
    if (i + 1 < n) s -= u[i + 1];
    v[i] = s;
  }
}

Eigen::MatrixXd dense_from_bands(const SymmetricBands& b) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(b.n, b.n);
  for (int k = 0; k <= b.width; ++k)
    for (int i = 0; i + k < b.n; ++i) {
      R(i, i + k) = b.band[k][i];
      R(i + k, i) = b.band[k][i];
    }
  return R;
}

}  // namespace

SymmetricSplit symmetric_split(const Eigen::VectorXd& h_diag, const Eigen::MatrixXd& D) {
  const Eigen::Index n = D.rows();
  Eigen::MatrixXd hd = h_diag.asDiagonal() * D;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  B(0, 0) = -1.0;
  B(n - 1, n - 1) = 1.0;
  SymmetricSplit s;
  s.Q = 0.5 * (hd - hd.transpose() + B);
  s.R = 0.5 * (hd + hd.transpose() - B);
  return s;
}

Eigen::MatrixXd difference_factor(int n) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) {
    D(i, i) = -1.0;
    D(i, i + 1) = 1.0;
  }
  return D;
}

double modify_lambda(double value, double delta) {
  return 0.5 * (std::sqrt(value * value + delta * delta) - value);
}

LambdaFactors extract_lambdas(const SymmetricBands& R, int p) {
  const int n = R.n;
  if ((p == 4 && n < 12) || (p == 3 && n < 8) || (p != 3 && p != 4))
    throw std::invalid_argument("extract_lambdas: matrix too small for the closure bands");
  LambdaFactors lf;
  lf.lambda1.setZero(n + 1);
  lf.lambda2.setZero(n);
  lf.lambda3.setZero(n + 1);
  const Eigen::VectorXd& b0 = R.band[0];
  const Eigen::VectorXd& b1 = R.band[1];
  const Eigen::VectorXd& b2 = R.band[2];
  Eigen::VectorXd& l1 = lf.lambda1;
  Eigen::VectorXd& l2 = lf.lambda2;
  Eigen::VectorXd& l3 = lf.lambda3;

  if (p == 4) {
    const Eigen::VectorXd& b3 = R.band[3];
    for (int i = 2; i <= n - 2; ++i) l3[i] = -b3[i - 2];
    for (int i = 1; i <= n - 4; ++i) l2[i + 1] = b2[i] - 3.0 * (l3[i + 1] + l3[i + 2]);
    for (int i = 2; i <= n - 4; ++i)
      l1[i + 1] = -b1[i] - 3.0 * l3[i] - 9.0 * l3[i + 1] - 3.0 * l3[i + 2] -
                  2.0 * (l2[i] + l2[i + 1]);
    {  // left corner: (l3[1], l2[1], l1[2]) then (l2[0], l1[0], l1[1]) with l3[0] = 0
      const double r1 = b2[0] - 3.0 * l3[2];
      const double r2 = b1[1] + 9.0 * l3[2] + 3.0 * l3[3] + 2.0 * l2[2];
      const double r3 = b0[2] - (9.0 * l3[2] + 9.0 * l3[3] + l3[4]) - (4.0 * l2[2] + l2[3]) - l1[3];
      l3[1] = r1 + r2 + r3;
      l2[1] = -2.0 * r1 - 3.0 * r2 - 3.0 * r3;
      l1[2] = r1 + 2.0 * r2 + 3.0 * r3;
      const double q1 = b0[0] - 9.0 * l3[1] - l3[2] - l2[1];
      const double q2 = b1[0] + 9.0 * l3[1] + 3.0 * l3[2] + 2.0 * l2[1];
      const double q3 = b0[1] - 9.0 * l3[1] - 9.0 * l3[2] - l3[3] - 4.0 * l2[1] - l2[2] - l1[2];
      l2[0] = -(q2 + q3);
      l1[0] = q1 + 3.0 * q2 + 2.0 * q3;
      l1[1] = q2 + 2.0 * q3;
    }
    {  // right corner: (l3[n-1], l2[n-2], l1[n-2]) then (l2[n-1], l1[n], l1[n-1]), l3[n] = 0
      const double r1 = b2[n - 3] - 3.0 * l3[n - 2];
      const double r2 = b1[n - 3] + 3.0 * l3[n - 3] + 9.0 * l3[n - 2] + 2.0 * l2[n - 3];
      const double r3 = b0[n - 3] - (l3[n - 4] + 9.0 * l3[n - 3] + 9.0 * l3[n - 2]) -
                        (l2[n - 4] + 4.0 * l2[n - 3]) - l1[n - 3];
      l3[n - 1] = r1 + r2 + r3;
      l2[n - 2] = -2.0 * r1 - 3.0 * r2 - 3.0 * r3;
      l1[n - 2] = r1 + 2.0 * r2 + 3.0 * r3;
      const double q1 = b0[n - 1] - l3[n - 2] - 9.0 * l3[n - 1] - l2[n - 2];
      const double q2 = b1[n - 2] + 3.0 * l3[n - 2] + 9.0 * l3[n - 1] + 2.0 * l2[n - 2];
      const double q3 = b0[n - 2] - l3[n - 3] - 9.0 * l3[n - 2] - 9.0 * l3[n - 1] - l2[n - 3] -
                        4.0 * l2[n - 2] - l1[n - 2];
      l2[n - 1] = -(q2 + q3);
      l1[n] = q1 + 3.0 * q2 + 2.0 * q3;
      l1[n - 1] = q2 + 2.0 * q3;
    }
    double res = 0.0;
    for (int i = 3; i <= n - 4; ++i) {
      const double diag = l3[i - 1] + 9.0 * l3[i] + 9.0 * l3[i + 1] + l3[i + 2] + l2[i - 1] +
                          4.0 * l2[i] + l2[i + 1] + l1[i] + l1[i + 1];
      res = std::max(res, std::abs(b0[i] - diag));
    }
    lf.residual = res;
    return lf;
  }

  // p = 3: no L3 term
  for (int i = 0; i <= n - 3; ++i) l2[i + 1] = b2[i];
  for (int i = 1; i <= n - 3; ++i) l1[i + 1] = -b1[i] - 2.0 * (l2[i] + l2[i + 1]);
  {
    const double q1 = b0[0] - l2[1];
    const double q2 = b1[0] + 2.0 * l2[1];
    const double q3 = b0[1] - 4.0 * l2[1] - l2[2] - l1[2];
    l2[0] = -(q2 + q3);
    l1[0] = q1 + 3.0 * q2 + 2.0 * q3;
    l1[1] = q2 + 2.0 * q3;
  }
  {
    const double q1 = b0[n - 1] - l2[n - 2];
    const double q2 = b1[n - 2] + 2.0 * l2[n - 2];
    const double q3 = b0[n - 2] - 4.0 * l2[n - 2] - l2[n - 3] - l1[n - 2];
    l2[n - 1] = -(q2 + q3);
    l1[n] = q1 + 3.0 * q2 + 2.0 * q3;
    l1[n - 1] = q2 + 2.0 * q3;
  }
  double res = 0.0;
  for (int i = 2; i <= n - 3; ++i) {
    const double diag = l2[i - 1] + 4.0 * l2[i] + l2[i + 1] + l1[i] + l1[i + 1];
    res = std::max(res, std::abs(b0[i] - diag));
  }
  lf.residual = res;
  return lf;
}

LambdaFactors extract_lambdas(const Eigen::MatrixXd& R, int p) {
  SymmetricBands b;
  b.n = static_cast<int>(R.rows());
  b.width = p == 4 ? 3 : 2;
  for (int k = 0; k <= b.width; ++k) {
    b.band[k].resize(b.n - k);
    for (int i = 0; i + k < b.n; ++i) b.band[k][i] = R(i, i + k);
  }
  return extract_lambdas(b, p);
}

StabilizedWenoOperator::StabilizedWenoOperator(int p, const Grid& grid, double epsilon,
                                               double delta)
    : weno_(p, grid, epsilon), delta_(delta) {
  if (delta < 0.0) throw std::invalid_argument("StabilizedWenoOperator: delta must be >= 0");
}

SymmetricBands StabilizedWenoOperator::r_bands(const Eigen::VectorXd& state,
                                               bool linear_weights) const {
  const int n = weno_.n();
  SymmetricBands b;
  b.n = n;
  b.width = weno_.p() == 4 ? 3 : 2;
  for (int k = 0; k <= b.width; ++k) b.band[k].setZero(n - k);

  WenoOperator::SparseRow prev = weno_.frozen_flux_row_sparse(state, 0, linear_weights);
  for (int i = 0; i < n; ++i) {
    WenoOperator::SparseRow cur = weno_.frozen_flux_row_sparse(state, i + 1, linear_weights);
    // accumulate row i of H D_mw = (flux row i+1) - (flux row i) into R = (M + M^T)/2;
    // a diagonal entry receives M(i,i) from both M and its transpose
    auto add = [&](int col, double v) {
      if (col == i) {
        b.band[0][i] += v;
        return;
      }
      const int k = col >= i ? col - i : i - col;
      const int base = col >= i ? i : col;
      b.band[k][base] += 0.5 * v;
    };
    for (int k = 0; k < cur.size; ++k) add(cur.first + k, cur.coeffs[k]);
    for (int k = 0; k < prev.size; ++k) add(prev.first + k, -prev.coeffs[k]);
    prev = cur;
  }
  b.band[0][0] += 0.5;      // -B/2 contribution
  b.band[0][n - 1] -= 0.5;
  return b;
}

void StabilizedWenoOperator::factors(const Eigen::VectorXd& state, LambdaFactors& lf,
                                     Eigen::VectorXd& l1s, Eigen::VectorXd& l2s,
                                     Eigen::VectorXd& l3s) const {
  const int n = weno_.n();
  const SymmetricBands bands = r_bands(state);
  lf = extract_lambdas(bands, weno_.p());
  stats_.max_residual = std::max(stats_.max_residual, lf.residual);
  l1s.resize(n + 1);
  l2s.resize(n);
  l3s.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double d1 = (k == 0 || k == n) ? 0.0 : delta_;
    l1s[k] = modify_lambda(lf.lambda1[k], d1);
    l3s[k] = modify_lambda(lf.lambda3[k], 0.0);
  }
  for (int k = 0; k < n; ++k) {
    const double d2 = (k == 0 || k == n - 1) ? 0.0 : delta_;
    l2s[k] = modify_lambda(lf.lambda2[k], d2);
  }
}

void StabilizedWenoOperator::apply_rs(const Eigen::VectorXd& l1s, const Eigen::VectorXd& l2s,
                                      const Eigen::VectorXd& l3s, const Eigen::VectorXd& u,
                                      Eigen::VectorXd& out) const {
  Eigen::VectorXd& a = scratch_[0];
  Eigen::VectorXd& b = scratch_[1];
  Eigen::VectorXd& c = scratch_[2];
  out.setZero(u.size());
  // Delta L1 Delta^T
  delta_t(u, a);
  a.array() *= l1s.array();
  delta_f(a, b);
  out += b;
  // K L2 K
  k_apply(u, a);
  a.array() *= l2s.array();
  k_apply(a, b);
  out += b;
  // G L3 G^T with G = K Delta
  k_apply(u, a);
  delta_t(a, c);
  c.array() *= l3s.array();
  delta_f(c, a);
  k_apply(a, b);
  out += b;
}

Eigen::VectorXd StabilizedWenoOperator::apply(const Eigen::VectorXd& u) const {
  ++stats_.evaluations;
  LambdaFactors lf;
  Eigen::VectorXd l1s, l2s, l3s;
  factors(u, lf, l1s, l2s, l3s);

  Eigen::VectorXd rsu;
  if (lf.residual <= kResidualTol) {
    apply_rs(l1s, l2s, l3s, u, rsu);
  } else {
    // decomposition failed: shift away the negative spectrum of R_mw directly
    ++stats_.fallbacks;
    Eigen::MatrixXd R = dense_from_bands(r_bands(u));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    Eigen::VectorXd lift = (-es.eigenvalues().array()).max(0.0);
    rsu = es.eigenvectors() * (lift.asDiagonal() * (es.eigenvectors().transpose() * u));
  }

  Eigen::VectorXd out = weno_.apply(u);
  out.array() += rsu.array() / weno_.flux_grid().bar_spacings.array();
  return out;
}

Eigen::MatrixXd StabilizedWenoOperator::rs_matrix(const Eigen::VectorXd& state) const {
  LambdaFactors lf;
  Eigen::VectorXd l1s, l2s, l3s;
  factors(state, lf, l1s, l2s, l3s);
  const int n = weno_.n();
  Eigen::MatrixXd Rs(n, n);
  Eigen::VectorXd col, e = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply_rs(l1s, l2s, l3s, e, col);
    Rs.col(j) = col;
    e[j] = 0.0;
  }
  return Rs;
}

void StabilizedWenoOperator::sample_certificate(const Eigen::VectorXd& state) const {
  Eigen::MatrixXd R = dense_from_bands(r_bands(state));
  Eigen::MatrixXd Rs = rs_matrix(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R + Rs, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, R.cwiseAbs().maxCoeff());
  const double v = es.eigenvalues().minCoeff() / scale;
  if (stats_.eig_samples == 0 || v < stats_.min_eig_scaled) stats_.min_eig_scaled = v;
  ++stats_.eig_samples;
  stats_.max_rs_entry = std::max(stats_.max_rs_entry, Rs.cwiseAbs().maxCoeff());
}

}  // namespace upsbp
