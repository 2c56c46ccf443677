#include <doctest.h>

#include "upsbp/flux_points.hpp"
#include "upsbp/upwind_ops.hpp"

using namespace upsbp;

TEST_CASE("flux grid matches the norm weights") {
  SUBCASE("p=3, n=13") {
    const Grid grid = build_grid(13, 0.0, 1.0);  // h = 1/12
    const FluxGrid fg = build_flux_grid(3, grid);
    CHECK(fg.bar_points[0] == 0.0);
    CHECK(fg.bar_points[1] == doctest::Approx(5.0 / 144.0).epsilon(1e-14));
    CHECK(fg.bar_spacings[0] == doctest::Approx(5.0 / 144.0).epsilon(1e-14));
    CHECK(fg.bar_spacings[1] == doctest::Approx(13.0 / 12.0 / 12.0).epsilon(1e-14));
    // interior points are midpoints with uniform spacing
    CHECK(fg.bar_points[6] == doctest::Approx(0.5 * (grid.points[5] + grid.points[6])).epsilon(1e-14));
    CHECK(fg.bar_spacings[6] == doctest::Approx(grid.h).epsilon(1e-14));
    CHECK(fg.bar_points[13] == 1.0);
  }
  SUBCASE("p=4 shifted points") {
    const Grid grid = build_grid(20, 0.0, 1.0);
    const FluxGrid fg = build_flux_grid(4, grid);
    CHECK(fg.bar_points[2] == doctest::Approx(29.0 / 18.0 * grid.h).epsilon(1e-13));
    CHECK(fg.bar_points[3] == doctest::Approx(355.0 / 144.0 * grid.h).epsilon(1e-13));
    CHECK(fg.bar_points[20] - fg.bar_points[17] ==
          doctest::Approx(355.0 / 144.0 * grid.h).epsilon(1e-13));
  }
  SUBCASE("spacings equal the H diagonal and telescope to the domain length") {
    for (int p : {3, 4}) {
      const Grid grid = build_grid(25, -1.0, 1.0);
      const UpwindPair pair = build_upwind_pair(p, grid);
      const FluxGrid fg = build_flux_grid(p, grid);
      CHECK((fg.bar_spacings - pair.h_diag).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(fg.bar_spacings.sum() == doctest::Approx(2.0).epsilon(1e-13));
      for (int i = 0; i < grid.n; ++i) CHECK(fg.bar_spacings[i] > 0.0);
    }
  }
}

TEST_CASE("candidate decompositions are convex and consistent") {
  for (int p : {3, 4}) {
    const int n = 20;
    const CandidateFluxSet fluxes(p, n);
    Eigen::VectorXd row;
    for (int i = 0; i <= n; ++i) {
      const FluxPointRule& r = fluxes.at(i);
      double dsum = 0.0;
      for (const Substencil& s : r.stencils) {
        CHECK(s.d > 0.0);
        dsum += s.d;
        double csum = 0.0;
        for (double c : s.coeffs) csum += c;
        CHECK(csum == doctest::Approx(1.0).epsilon(1e-13));  // each candidate is consistent
      }
      CHECK(dsum == doctest::Approx(1.0).epsilon(1e-13));
      fluxes.linear_row(i, row);
      CHECK(row.sum() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("interior combinations reproduce the upwind fluxes coefficientwise") {
  SUBCASE("third order: 1/3 upwind + 2/3 central") {
    const CandidateFluxSet fluxes(3, 20);
    Eigen::VectorXd row;
    fluxes.linear_row(10, row);
    CHECK(row[8] == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
    CHECK(row[9] == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(row[10] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("fourth order interior: d = (1/2, 1/4, 1/4)") {
    const CandidateFluxSet fluxes(4, 20);
    Eigen::VectorXd row;
    fluxes.linear_row(10, row);
    CHECK(row[7] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(row[8] == doctest::Approx(-5.0 / 12.0).epsilon(1e-14));
    CHECK(row[9] == doctest::Approx(13.0 / 12.0).epsilon(1e-14));
    CHECK(row[10] == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("fourth order first shifted point") {
    const CandidateFluxSet fluxes(4, 20);
    Eigen::VectorXd row;
    fluxes.linear_row(1, row);
    CHECK(row[0] == doctest::Approx(25.0 / 48.0).epsilon(1e-14));
    CHECK(row[1] == doctest::Approx(169.0 / 288.0).epsilon(1e-14));
    CHECK(row[2] == doctest::Approx(-11.0 / 144.0).epsilon(1e-14));
    CHECK(row[3] == doctest::Approx(-1.0 / 32.0).epsilon(1e-14));
  }
  SUBCASE("fourth order right closures") {
    const int n = 20;
    const CandidateFluxSet fluxes(4, n);
    Eigen::VectorXd row;
    fluxes.linear_row(n - 1, row);
    CHECK(row[n - 1] == doctest::Approx(23.0 / 48.0).epsilon(1e-14));
    CHECK(row[n - 2] == doctest::Approx(205.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 3] == doctest::Approx(-29.0 / 144.0).epsilon(1e-14));
    CHECK(row[n - 4] == doctest::Approx(1.0 / 96.0).epsilon(1e-14));
    fluxes.linear_row(n - 2, row);
    CHECK(row[n - 1] == doctest::Approx(-31.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 2] == doctest::Approx(139.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 3] == doctest::Approx(239.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 4] == doctest::Approx(-83.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 5] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    fluxes.linear_row(n - 3, row);
    CHECK(row[n - 1] == doctest::Approx(-1.0 / 32.0).epsilon(1e-14));
    CHECK(row[n - 2] == doctest::Approx(11.0 / 144.0).epsilon(1e-14));
    CHECK(row[n - 3] == doctest::Approx(65.0 / 288.0).epsilon(1e-14));
    CHECK(row[n - 4] == doctest::Approx(17.0 / 16.0).epsilon(1e-14));
    CHECK(row[n - 5] == doctest::Approx(-5.0 / 12.0).epsilon(1e-14));
    CHECK(row[n - 6] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  }
}

TEST_CASE("third-order boundary fluxes") {
  const int n = 20;
  const CandidateFluxSet fluxes(3, n);
  Eigen::VectorXd u = Eigen::VectorXd::Random(n);
  CHECK_THROWS_AS(fluxes.linear_flux(u, -1), std::out_of_range);
  CHECK_THROWS_AS(fluxes.linear_flux(u, n + 1), std::out_of_range);
  CHECK(fluxes.linear_flux(u, 0) == u[0]);
  CHECK(fluxes.linear_flux(u, 1) ==
        doctest::Approx(7.0 / 12.0 * u[0] + 5.0 / 12.0 * u[1]).epsilon(1e-14));
  CHECK(fluxes.linear_flux(u, n) == u[n - 1]);
  // outflow ansatz with d = (2/7, 5/7)
  const double expect = 2.0 / 7.0 * (-7.0 / 12.0 * u[n - 3] + 19.0 / 12.0 * u[n - 2]) +
                        5.0 / 7.0 * (5.0 / 12.0 * u[n - 2] + 7.0 / 12.0 * u[n - 1]);
  CHECK(fluxes.linear_flux(u, n - 1) == doctest::Approx(expect).epsilon(1e-14));
}
