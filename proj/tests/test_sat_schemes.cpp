#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "upsbp/experiments.hpp"
#include "upsbp/sat_schemes.hpp"

using namespace upsbp;

TEST_CASE("advection rhs on constants and linears") {
  const Grid grid = build_grid(30, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);

  SUBCASE("constants with matching data give zero") {
    AdvectionScheme s{&pair, -3.7, [](double) { return 4.0; }};
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(30, 4.0);
    CHECK(advection_rhs(s, u, 0.0).cwiseAbs().maxCoeff() < 1e-11);
  }
  SUBCASE("derivative of x is one, no penalty") {
    AdvectionScheme s{&pair, 0.0, [](double) { return 0.0; }};
    const Eigen::VectorXd r = advection_rhs(s, grid.points, 0.0);
    CHECK((r.array() + 1.0).abs().maxCoeff() < 1e-10);
  }
  SUBCASE("penalty vanishes when the boundary value matches the data") {
    AdvectionScheme s{&pair, -1.0, [](double) { return 0.0; }};
    const Eigen::VectorXd r = advection_rhs(s, grid.points, 0.0);  // u_0 = x_0 = 0
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-10));
  }
  SUBCASE("length mismatch throws") {
    AdvectionScheme s{&pair, -1.0, {}};
    CHECK_THROWS_AS(advection_rhs(s, Eigen::VectorXd::Zero(7), 0.0), std::invalid_argument);
  }
}

TEST_CASE("advection energy matrix") {
  const Grid grid = build_grid(30, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);

  SUBCASE("tau = -1/2 removes the inflow term") {
    AdvectionScheme s{&pair, -0.5, {}};
    const Eigen::MatrixXd M = advection_stability_matrix(s);
    Eigen::MatrixXd qm = pair.Qm();
    Eigen::MatrixXd base = -(qm + qm.transpose());
    base(29, 29) -= 1.0;
    CHECK((M - base).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("tau = -1 is certified, tau = 0 is not") {
    AdvectionScheme stable{&pair, -1.0, {}};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(advection_stability_matrix(stable));
    CHECK(es.eigenvalues().maxCoeff() <= 1e-12);
    CHECK(stable.certified_stable());

    AdvectionScheme loose{&pair, 0.0, {}};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(advection_stability_matrix(loose));
    CHECK(es2.eigenvalues().maxCoeff() > 0.0);
    CHECK(!loose.certified_stable());
  }
  SUBCASE("quadratic form matches the energy rate") {
    AdvectionScheme s{&pair, -1.0, [](double) { return 0.0; }};
    const Eigen::MatrixXd M = advection_stability_matrix(s);
    std::mt19937 rng(9);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd u(30);
      for (int j = 0; j < 30; ++j) u[j] = dist(rng);
      const Eigen::VectorXd r = advection_rhs(s, u, 0.0);
      const double rate = 2.0 * u.dot(pair.h_diag.asDiagonal() * r);
      CHECK(rate == doctest::Approx(u.dot(M * u)).epsilon(1e-9));
      CHECK(rate <= 1e-10 * u.squaredNorm());
    }
  }
}

TEST_CASE("system stability conditions") {
  {
    const SystemStability s = system_stability_check(0.5, 0.0, -4.0 / 3.0, -1.0 / 3.0, 0.0, 1.0);
    CHECK(s.wellposed);
    CHECK(s.stable);
    CHECK(s.lhs0 == doctest::Approx(-8.0 / 9.0).epsilon(1e-13));
    CHECK(s.lhs1 == doctest::Approx(0.0).epsilon(1e-13));
  }
  {
    // tau1 = 0 forces tau2 = -1
    const SystemStability s = system_stability_check(0.7, 0.0, 0.0, -1.0, 0.0, 1.0);
    CHECK(s.stable);
    CHECK(s.lhs0 == doctest::Approx(0.0).epsilon(1e-13));
  }
  {
    const SystemStability s = system_stability_check(0.5, 0.0, -4.0 / 3.0, 0.0, 0.0, 1.0);
    CHECK(!s.stable);
    CHECK(s.lhs0 == doctest::Approx(25.0 / 9.0 - 8.0 / 3.0).epsilon(1e-12));
  }
  CHECK(!system_stability_check(-0.1, 0.0, -1.0, -1.0, 0.0, 1.0).wellposed);
  CHECK(!system_stability_check(0.5, 0.2, -4.0 / 3.0, -1.0 / 3.0, 0.0, 1.0).wellposed);
}

TEST_CASE("system rhs structure") {
  const Grid grid = build_grid(24, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);
  const int n = 24;

  SUBCASE("constants with matching boundary data") {
    SystemScheme s;
    s.pair = &pair;
    s.alpha0 = 0.5;
    s.alpha1 = 0.0;
    const double cu = 2.0, cv = -3.0;
    s.g1 = [&](double) { return cu + 0.5 * cv; };
    s.gn = [&](double) { return cu; };
    Eigen::VectorXd w(2 * n);
    w.head(n).setConstant(cu);
    w.tail(n).setConstant(cv);
    CHECK(system_rhs(s, w, 0.0).cwiseAbs().maxCoeff() < 1e-11);
  }
  SUBCASE("SAT contribution isolates to the v-block via tau2") {
    SystemScheme with;
    with.pair = &pair;
    with.alpha0 = 0.5;
    with.tau1 = 0.0;
    with.tau2 = -1.0;
    with.tau3 = 0.0;
    with.tau4 = 0.0;
    SystemScheme without = with;
    without.tau2 = 0.0;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * n);
    w[n] = 1.0;  // v_0 = 1, boundary residual = alpha0 * v_0 = 1/2
    const Eigen::VectorXd diff = system_rhs(with, w, 0.0) - system_rhs(without, w, 0.0);
    CHECK(diff.head(n).cwiseAbs().maxCoeff() == 0.0);
    CHECK(diff[n] == doctest::Approx(-0.5 / pair.h_diag[0]).epsilon(1e-13));
    CHECK(diff.tail(n - 1).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("linearity with zero data") {
    SystemScheme s;
    s.pair = &pair;
    std::mt19937 rng(4);
    std::normal_distribution<double> dist;
    Eigen::VectorXd w1(2 * n), w2(2 * n);
    for (int j = 0; j < 2 * n; ++j) {
      w1[j] = dist(rng);
      w2[j] = dist(rng);
    }
    const Eigen::VectorXd lhs = system_rhs(s, 2.0 * w1 - 3.0 * w2, 0.0);
    const Eigen::VectorXd rhs = 2.0 * system_rhs(s, w1, 0.0) - 3.0 * system_rhs(s, w2, 0.0);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("characteristic variables decouple into the two advection directions") {
    SystemScheme s;
    s.pair = &pair;
    s.alpha0 = 0.5;
    s.alpha1 = 0.0;
    // profile vanishing at both ends so every boundary residual is zero
    Eigen::VectorXd phi(n);
    for (int j = 0; j < n; ++j) {
      const double x = pair.grid.points[j];
      phi[j] = std::sin(M_PI * x) * x * (1.0 - x);
    }
    Eigen::VectorXd w(2 * n);
    w.head(n) = phi;
    w.tail(n) = phi;  // u - v = 0
    Eigen::VectorXd r = system_rhs(s, w, 0.0);
    CHECK((r.head(n) + pair.Dm * phi).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((r.tail(n) + pair.Dm * phi).cwiseAbs().maxCoeff() < 1e-10);
    w.tail(n) = -phi;  // u + v = 0
    r = system_rhs(s, w, 0.0);
    CHECK((r.head(n) - pair.Dp * phi).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((r.tail(n) + pair.Dp * phi).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("system scheme carries its certification flags") {
  SystemScheme s;  // default parameters satisfy both conditions
  CHECK(s.wellposed());
  CHECK(s.certified_stable());
  s.tau2 = 0.0;
  CHECK(!s.certified_stable());
  s.alpha1 = 1.0;
  CHECK(!s.wellposed());
}

TEST_CASE("system energy rate is nonpositive for certified parameters") {
  const Grid grid = build_grid(30, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);
  SystemScheme s;
  s.pair = &pair;  // defaults alpha0=1/2, tau = (-4/3, -1/3, 0, 1): certified
  REQUIRE(system_stability_check(s.alpha0, s.alpha1, s.tau1, s.tau2, s.tau3, s.tau4).stable);
  std::mt19937 rng(11);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd w(60);
    for (int j = 0; j < 60; ++j) w[j] = dist(rng);
    const Eigen::VectorXd r = system_rhs(s, w, 0.0);
    double rate = 0.0;
    for (int j = 0; j < 60; ++j) rate += 2.0 * pair.h_diag[j % 30] * w[j] * r[j];
    CHECK(rate <= 1e-10 * w.squaredNorm());
  }
}

TEST_CASE("manufactured system solution satisfies the scheme to truncation order") {
  // residual rhs - w_t measured on two grids: boundary rows first order,
  // interior rows third order
  double bdry[2], intr[2];
  const int ns[2] = {51, 101};
  for (int k = 0; k < 2; ++k) {
    const int n = ns[k];
    const Grid grid = build_grid(n, 0.0, 1.0);
    const UpwindPair pair = build_upwind_pair(3, grid);
    SystemScheme s;
    s.pair = &pair;
    s.g1 = [&](double t) { return system_exact_u(0.0, t) + 0.5 * system_exact_v(0.0, t); };
    s.gn = [&](double t) { return system_exact_u(1.0, t); };
    Eigen::VectorXd w(2 * n), wt(2 * n);
    const double dt = 1e-6;
    for (int j = 0; j < n; ++j) {
      const double x = grid.points[j];
      w[j] = system_exact_u(x, 0.0);
      w[n + j] = system_exact_v(x, 0.0);
      wt[j] = (system_exact_u(x, dt) - system_exact_u(x, -dt)) / (2.0 * dt);
      wt[n + j] = (system_exact_v(x, dt) - system_exact_v(x, -dt)) / (2.0 * dt);
    }
    const Eigen::VectorXd res = (system_rhs(s, w, 0.0) - wt).cwiseAbs();
    bdry[k] = std::max({res[0], res[1], res[n - 2], res[n - 1], res[n], res[n + 1],
                        res[2 * n - 2], res[2 * n - 1]});
    double worst = 0.0;
    for (int j = 4; j < n - 4; ++j) worst = std::max({worst, res[j], res[n + j]});
    intr[k] = worst;
  }
  const double rate_bdry = std::log2(bdry[0] / bdry[1]);
  const double rate_intr = std::log2(intr[0] / intr[1]);
  CHECK(rate_bdry > 0.7);   // O(h) boundary truncation
  CHECK(rate_bdry < 1.6);
  CHECK(rate_intr > 2.7);   // O(h^3) interior truncation
}
