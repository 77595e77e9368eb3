#include "polyeig/eigensolver.hpp"
#include "polyeig/specfun.hpp"
#include "polyeig/table_file.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace polyeig;

namespace {

BigReal pi50() { return testing::mpfr_ref_pi(60); }

EigenInterval solve_at(long s, int digits) {
  MpsConfig cfg;
  cfg.target_digits = digits;
  return solve(PolygonSpec(s, Convention::transcribed), cfg);
}

}  // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("single centre term reduces to the disk eigenfunction") {
    const CircleConstant c = circle_constant(1, 40);
    const std::vector<BigReal> one{BigReal(1)};
    for (long s : {3L, 8L, 40L}) {
      CHECK(abs(trial_function(s, c.lambda_circle, one, BigReal(1), BigReal("0.3"), 40)) <
            BigReal("1e-35"));
      CHECK(trial_function(s, c.lambda_circle, one, BigReal(0), BigReal(0), 40) == 1);
    }
  }

  TEST_CASE("trial function symmetries") {
    const std::vector<BigReal> coeffs{BigReal(1), BigReal("-0.3"), BigReal("0.05")};
    const BigReal lambda("6.1"), r("0.8"), theta("0.21");
    for (long s : {5L, 9L}) {
      const BigReal pi = pi50();
      const BigReal base = trial_function(s, lambda, coeffs, r, theta, 40);
      CHECK(testing::agreement(trial_function(s, lambda, coeffs, r, theta + 2 * pi / s, 40), base) > 35);
      CHECK(testing::agreement(trial_function(s, lambda, coeffs, r, -theta, 40), base) > 35);
    }
  }

  TEST_CASE("basis functions are dihedrally invariant") {
    MpsBasis b(7, BasisSize{3, 4}, 40);
    b.set_lambda(BigReal("5.95"));
    const BigReal pi = pi50();
    const BigReal x("0.4"), y("0.25");
    std::vector<BigReal> v0, v1, v2;
    b.evaluate(x, y, v0);
    const BigReal a = 2 * pi / 7;
    b.evaluate(x * cos(a) - y * sin(a), x * sin(a) + y * cos(a), v1);
    b.evaluate(x, -y, v2);
    REQUIRE(v0.size() == 7);
    for (size_t i = 0; i < v0.size(); ++i) {
      CAPTURE(i);
      CHECK(testing::agreement(v1[i], v0[i]) > 30);
      CHECK(testing::agreement(v2[i], v0[i]) > 30);
    }
  }

  TEST_CASE("basis functions solve the Helmholtz equation") {
    MpsBasis b(6, BasisSize{2, 3}, 40);
    const BigReal lambda("5.9");
    b.set_lambda(lambda);
    const BigReal x("0.3"), y("0.2"), h("1e-6");
    std::vector<BigReal> c, e, w, n, s;
    b.evaluate(x, y, c);
    b.evaluate(x + h, y, e);
    b.evaluate(x - h, y, w);
    b.evaluate(x, y + h, n);
    b.evaluate(x, y - h, s);
    for (size_t i = 0; i < c.size(); ++i) {
      const BigReal lap = (e[i] + w[i] + n[i] + s[i] - 4 * c[i]) / (h * h);
      CAPTURE(i);
      CHECK(abs(lap + lambda * c[i]) < BigReal("1e-9"));
    }
  }

  TEST_CASE("corner functions need a non-integer corner order") {
    CHECK_THROWS_AS(MpsBasis(4, BasisSize{2, 1}, 30), DomainError);
    CHECK_THROWS_AS(MpsBasis(3, BasisSize{2, 1}, 30), DomainError);
    CHECK_NOTHROW(MpsBasis(4, BasisSize{2, 0}, 30));
  }

  TEST_CASE("integer corner multiples are skipped") {
    MpsBasis b(6, BasisSize{1, 4}, 30);
    // nu = 3/2: n nu is an integer for even n only, so odd n all stay.
    CHECK(b.corner_multiples() == std::vector<int>{1, 3, 5, 7});
    MpsBasis c(5, BasisSize{1, 4}, 30);
    // nu = 5/3: n = 3, 9 give integers.
    CHECK(c.corner_multiples() == std::vector<int>{1, 5, 7, 11});
  }

  TEST_CASE("collocation heights lie on the half-edge") {
    const PolygonFrame f(9, 30);
    const auto ys = collocation_heights(f, 12);
    REQUIRE(ys.size() == 12);
    for (const auto& y : ys) {
      CHECK(y > 0);
      CHECK(y < f.half_edge);
    }
    CHECK(testing::agreement(f.apothem, f.circumradius * cos(pi50() / 9)) > 28);
  }

  TEST_CASE("config validation") {
    MpsConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.working_digits() == 100);
    cfg.prec = 40;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.prec = 0;
    cfg.basis = BasisSize{4, 4};
    cfg.collocation_count = 10;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }

  TEST_CASE("defect is bounded away from zero off an eigenvalue") {
    MpsBasis b(4, BasisSize{8, 0}, 40);
    b.set_lambda(BigReal("5.0"));
    const auto ys = collocation_heights(b.frame(), 20);
    const InnerFit fit = fit_coefficients(b, ys);
    const TrialFunction psi(b, fit.coeffs);
    CHECK(boundary_defect(psi, 2000) > 0.01);
  }

  TEST_CASE("defect at the square eigenvalue is tiny") {
    MpsBasis b(4, BasisSize{14, 0}, 80);
    b.set_lambda(2 * pi50());
    const auto ys = collocation_heights(b.frame(), 32);
    const InnerFit fit = fit_coefficients(b, ys);
    const TrialFunction psi(b, fit.coeffs);
    CHECK(boundary_defect(psi, 4000) < 1e-30);
  }

  TEST_CASE("zero coefficients are rejected") {
    MpsBasis b(4, BasisSize{2, 0}, 30);
    b.set_lambda(BigReal(6));
    CHECK_THROWS_AS(TrialFunction(b, {BigReal(0), BigReal(0)}), DomainError);
    CHECK_THROWS_AS(TrialFunction(b, {BigReal(1)}), DomainError);
  }

  TEST_CASE("certification fails for a boundary-heavy trial function") {
    MpsBasis b(4, BasisSize{3, 0}, 40);
    b.set_lambda(2 * pi50());
    const TrialFunction psi(b, {BigReal(1), BigReal(0), BigReal(1000000)});
    CHECK_THROWS_AS(certify(psi, 30, 2000), NotCertifiedError);
    CHECK_FALSE(certify_detailed(psi, 30, 2000).certified);
  }

  TEST_CASE("closed-form anchors") {
    const BigReal pi = pi50();
    const EigenInterval sq = solve_at(4, 30);
    CHECK(sq.contains(2 * pi));
    CHECK(sq.relative_gap() < BigReal("1e-30"));
    const EigenInterval tri = solve_at(3, 30);
    CHECK(tri.contains(4 * pi / sqrt(BigReal(3, 60))));
    CHECK(tri.relative_gap() < BigReal("1e-30"));
    CHECK(tri.lower > 0);
    CHECK(tri.lower <= tri.upper);
  }

  TEST_CASE("hexagon") {
    const EigenInterval h = solve_at(6, 20);
    CHECK(h.mean() > BigReal("5.90"));
    CHECK(h.mean() < BigReal("5.94"));
    CHECK(h.relative_gap() < BigReal("1e-20"));
  }

  TEST_CASE("boundary residual falls geometrically as the basis grows") {
    const EigenInterval ref = solve_at(7, 20);
    double prev = 0;
    int checked = 0;
    for (int corner : {4, 6, 8, 10}) {
      MpsBasis b(7, BasisSize{2, corner}, 60);
      b.set_lambda(lift(ref.mean(), 60));
      const auto ys = collocation_heights(b.frame(), 2 * (corner + 2) + 4);
      const double r = fit_coefficients(b, ys).residual.convert_to<double>();
      if (prev > 0) {
        CHECK(r / prev < 0.9);
        ++checked;
      }
      prev = r;
    }
    CHECK(checked == 3);
  }

  TEST_CASE("growing the basis never widens the certified gap") {
    const EigenInterval ref = solve_at(8, 20);
    double prev = 1;
    for (int corner : {6, 9, 12}) {
      MpsBasis b(8, BasisSize{2, corner}, 60);
      b.set_lambda(lift(ref.mean(), 60));
      const auto ys = collocation_heights(b.frame(), 2 * (corner + 2) + 4);
      const TrialFunction psi(b, fit_coefficients(b, ys).coeffs);
      const Certificate c = certify_detailed(psi, 20, 20000);
      REQUIRE(c.certified);
      const double gap = c.interval.relative_gap().convert_to<double>();
      CHECK(gap <= prev * 1.01);
      prev = gap;
    }
  }

  TEST_CASE("stored eigenvalues decrease towards the circle value") {
    const EigenTableFile f = read_table_file(testing::data_path("eigenvalues30.txt"));
    const BigReal l = circle_constant(1, 50).lambda_circle;
    const BigReal bound = 4 * pi50() / sqrt(BigReal(3, 60));
    BigReal prev = bound + BigReal("1e-30");
    for (const auto& row : f.table.rows()) {
      const BigReal lo = parse_real(row.lower, 50), up = parse_real(row.upper, 50);
      const BigReal mean = (lo + up) / 2;
      CAPTURE(row.sides);
      CHECK(mean < prev);
      CHECK(mean > l);
      CHECK((up - lo) / mean < BigReal("1e-30"));
      prev = mean;
    }
  }
}
