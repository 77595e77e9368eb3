#include "polyeig/linalg.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace polyeig;

TEST_SUITE("linalg") {
  TEST_CASE("square nonsingular system interpolates") {
    PrecisionScope scope(60);
    Matrix a(3, 3, 60);
    const double v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = v[i][j];
    std::vector<BigReal> b{BigReal(1), BigReal(2), BigReal(3)};
    const auto sol = least_squares(a, b, 60);
    CHECK(sol.residual_norm < BigReal("1e-55"));
    for (int i = 0; i < 3; ++i) {
      BigReal r = -b[static_cast<size_t>(i)];
      for (int j = 0; j < 3; ++j) r += a(i, j) * sol.x[static_cast<size_t>(j)];
      CHECK(abs(r) < BigReal("1e-55"));
    }
  }

  TEST_CASE("polynomial data is recovered exactly") {
    PrecisionScope scope(100);
    const std::vector<BigReal> c{BigReal(3), BigReal(-1) / 7, BigReal(5) / 3, BigReal(2)};
    Matrix a(12, 4, 100);
    std::vector<BigReal> b(12);
    for (int i = 0; i < 12; ++i) {
      const BigReal x = BigReal(1) / (i + 13);
      BigReal p = 1;
      b[static_cast<size_t>(i)] = 0;
      for (int j = 0; j < 4; ++j) {
        a(i, j) = p;
        b[static_cast<size_t>(i)] += c[static_cast<size_t>(j)] * p;
        p *= x;
      }
    }
    const auto sol = least_squares(a, b, 100);
    for (int j = 0; j < 4; ++j) CHECK(testing::agreement(sol.x[static_cast<size_t>(j)], c[static_cast<size_t>(j)]) > 85);
  }

  TEST_CASE("duplicated column is reported") {
    PrecisionScope scope(40);
    Matrix a(5, 3, 40);
    for (int i = 0; i < 5; ++i) {
      a(i, 0) = i + 1;
      a(i, 1) = (i + 1) * (i + 1);
      a(i, 2) = i + 1;
    }
    std::vector<BigReal> b(5, BigReal(1));
    try {
      least_squares(a, b, 40);
      FAIL("expected a singular system");
    } catch (const SingularSystemError& e) {
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("overdetermined fit matches normal equations") {
    PrecisionScope scope(50);
    Matrix a(4, 2, 50);
    std::vector<BigReal> b{BigReal(1), BigReal(2), BigReal(2), BigReal(5)};
    for (int i = 0; i < 4; ++i) {
      a(i, 0) = 1;
      a(i, 1) = i;
    }
    // Line through (0,1),(1,2),(2,2),(3,5): slope 1.2, intercept 0.7.
    const auto sol = least_squares(a, b, 50);
    CHECK(testing::agreement(sol.x[0], BigReal("0.7")) > 45);
    CHECK(testing::agreement(sol.x[1], BigReal("1.2")) > 45);
    CHECK(testing::agreement(norm2(std::vector<BigReal>{BigReal(3), BigReal(4)}), BigReal(5)) > 45);
  }
}
