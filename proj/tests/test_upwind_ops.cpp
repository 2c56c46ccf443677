#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "upsbp/upwind_ops.hpp"

using namespace upsbp;

TEST_CASE("third-order pair reproduces the closed-form rows") {
  const Grid grid = build_grid(30, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);
  const double h = grid.h;
  const int n = grid.n;

  CHECK(pair.b == 1);
  CHECK(pair.r == 2);
  CHECK(pair.h_diag[0] == doctest::Approx(5.0 / 12.0 * h).epsilon(1e-14));
  CHECK(pair.h_diag[1] == doctest::Approx(13.0 / 12.0 * h).epsilon(1e-14));

  // row 0: (-1, 1)/h
  CHECK(pair.Dm(0, 0) * h == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(pair.Dm(0, 1) * h == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pair.Dm(0, 2) == 0.0);
  // row 1: (-9/13, 5/13, 4/13)/h
  CHECK(pair.Dm(1, 0) * h == doctest::Approx(-9.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(1, 1) * h == doctest::Approx(5.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(1, 2) * h == doctest::Approx(4.0 / 13.0).epsilon(1e-13));
  // interior row: (1/6, -1, 1/2, 1/3)/h at offsets -2..+1
  const int i = n / 2;
  CHECK(pair.Dm(i, i - 2) * h == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(pair.Dm(i, i - 1) * h == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(pair.Dm(i, i) * h == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pair.Dm(i, i + 1) * h == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // last two rows
  CHECK(pair.Dm(n - 2, n - 4) * h == doctest::Approx(2.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 2, n - 3) * h == doctest::Approx(-12.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 2, n - 2) * h == doctest::Approx(5.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 2, n - 1) * h == doctest::Approx(5.0 / 13.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 1, n - 3) * h == doctest::Approx(2.0 / 5.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 1, n - 2) * h == doctest::Approx(-9.0 / 5.0).epsilon(1e-13));
  CHECK(pair.Dm(n - 1, n - 1) * h == doctest::Approx(7.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("fourth-order pair interior row and norm weights") {
  const Grid grid = build_grid(30, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(4, grid);
  const double h = grid.h;
  const int i = 15;

  CHECK(pair.b == 2);
  CHECK(pair.r == 4);
  CHECK(pair.h_diag[0] == doctest::Approx(49.0 / 144.0 * h).epsilon(1e-14));
  CHECK(pair.h_diag[1] == doctest::Approx(61.0 / 48.0 * h).epsilon(1e-14));
  CHECK(pair.h_diag[2] == doctest::Approx(41.0 / 48.0 * h).epsilon(1e-14));
  CHECK(pair.h_diag[3] == doctest::Approx(149.0 / 144.0 * h).epsilon(1e-14));
  CHECK(pair.h_diag[grid.n - 1] == doctest::Approx(49.0 / 144.0 * h).epsilon(1e-14));

  CHECK(pair.Dm(i, i - 3) * h == doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
  CHECK(pair.Dm(i, i - 2) * h == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pair.Dm(i, i - 1) * h == doctest::Approx(-1.5).epsilon(1e-13));
  CHECK(pair.Dm(i, i) * h == doctest::Approx(5.0 / 6.0).epsilon(1e-13));
  CHECK(pair.Dm(i, i + 1) * h == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("SBP identity, semidefiniteness and quadrature consistency") {
  for (int p : {3, 4}) {
    for (int n : {20, 50, 101}) {
      const Grid grid = build_grid(n, 0.0, 1.0);
      const UpwindPair pair = build_upwind_pair(p, grid);
      const SbpPropertyReport rep = verify_sbp(pair);
      CAPTURE(p);
      CAPTURE(n);
      CHECK(rep.sbp_residual < 1e-12);
      CHECK(rep.qm_min_eig >= -1e-12);
      CHECK(rep.h_sum_error < 1e-12);
      for (Eigen::Index j = 0; j < pair.h_diag.size(); ++j) CHECK(pair.h_diag[j] > 0.0);
    }
  }
}

TEST_CASE("rowwise accuracy orders") {
  const Grid grid = build_grid(50, 0.0, 1.0);
  {
    const SbpPropertyReport rep = verify_sbp(build_upwind_pair(3, grid));
    CHECK(rep.rowwise_accuracy_orders[0] == 1);
    CHECK(rep.rowwise_accuracy_orders[1] == 1);
    CHECK(rep.rowwise_accuracy_orders[48] == 1);
    CHECK(rep.rowwise_accuracy_orders[49] == 1);
    for (int j = 2; j < 48; ++j) CHECK(rep.rowwise_accuracy_orders[j] >= 3);
  }
  {
    const SbpPropertyReport rep = verify_sbp(build_upwind_pair(4, grid));
    for (int j : {0, 1, 2, 3, 46, 47, 48, 49}) CHECK(rep.rowwise_accuracy_orders[j] == 2);
    for (int j = 4; j < 46; ++j) CHECK(rep.rowwise_accuracy_orders[j] >= 4);
  }
}

TEST_CASE("unsupported order and tiny grids are rejected") {
  const Grid g8 = build_grid(8, 0.0, 1.0);
  CHECK_THROWS_AS(build_upwind_pair(2, g8), std::invalid_argument);
  CHECK_THROWS_AS(build_upwind_pair(5, g8), std::invalid_argument);
  CHECK_THROWS_AS(build_upwind_pair(3, build_grid(7, 0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_upwind_pair(4, build_grid(11, 0.0, 1.0)), std::invalid_argument);
  CHECK_NOTHROW(build_upwind_pair(3, g8));
  CHECK_NOTHROW(build_upwind_pair(4, build_grid(12, 0.0, 1.0)));
}

TEST_CASE("csv triplet export") {
  const Grid grid = build_grid(8, 0.0, 1.0);
  const UpwindPair pair = build_upwind_pair(3, grid);
  std::ostringstream os;
  write_matrix_csv(os, pair.Dm);
  const std::string s = os.str();
  CHECK(s.rfind("row,col,value", 0) == 0);
  CHECK(s.find("0,0,") != std::string::npos);
}
