#include "polyeig/intrel.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace polyeig;

namespace {

const char* kC3 = "4.80822761263837714159895264604579996267";
const char* kC5 = "0.44964098545032430901630041683027";
const char* kC6 = "44.98497175863112456004906966023";
const char* kC7 = "-50.53932438813516438303806289079";
const char* kC8 = "200.87223780187035158705886400";

RelationProblem problem(int order, const std::string& value, int p = 30) {
  RelationProblem pr;
  pr.target = parse_real(value, 100);
  pr.target_digits = significant_digits(value);
  pr.terms = ansatz_for_order(order, lambda_power_for_order(order, 2), 100);
  pr.rounding_power = p;
  return pr;
}

std::vector<long> as_longs(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_SUITE("intrel") {
  TEST_CASE("identity is already reduced") {
    IntBasis id(3, std::vector<mpz_class>(3, 0));
    for (int i = 0; i < 3; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    const LllResult r = lll_reduce(id);
    CHECK(r.basis == id);
    CHECK(r.transform == id);
  }

  TEST_CASE("exact two-term relation") {
    const mpz_class big("1000000000000000000000000000000");
    IntBasis cols{{1, 2 * big}, {0, big}};
    const LllResult r = lll_reduce(cols);
    std::vector<long> v = as_longs(r.transform[0]);
    if (v[0] < 0) v = {-v[0], -v[1]};
    CHECK(v == std::vector<long>{1, -2});
    CHECK(r.basis[0][1] == 0);
  }

  TEST_CASE("dependent or ragged input") {
    IntBasis dep{{1, 2}, {2, 4}};
    CHECK_THROWS_AS(lll_reduce(dep), DomainError);
    IntBasis ragged{{1, 2}, {3}};
    CHECK_THROWS_AS(lll_reduce(ragged), DomainError);
    CHECK_THROWS_AS(lll_reduce({}), DomainError);
  }

  TEST_CASE("reduced basis stays in the lattice") {
    IntBasis cols{{7, 3, 11}, {2, 9, 4}, {5, 1, 13}};
    const LllResult r = lll_reduce(cols);
    for (size_t j = 0; j < 3; ++j)
      for (size_t i = 0; i < 3; ++i) {
        mpz_class s = 0;
        for (size_t k = 0; k < 3; ++k) s += cols[k][i] * r.transform[j][k];
        CHECK(s == r.basis[j][i]);
      }
  }

  TEST_CASE("ansatz enumeration") {
    auto args = [](int mu) {
      std::vector<std::vector<int>> out;
      for (const auto& t : ansatz_for_order(mu, 0, 30)) out.push_back(t.zeta_args);
      return out;
    };
    CHECK(args(8) == std::vector<std::vector<int>>{{3, 5}});
    CHECK(args(6) == std::vector<std::vector<int>>{{3, 3}});
    CHECK(args(9) == std::vector<std::vector<int>>{{3, 3, 3}, {9}});
    CHECK(args(2).empty());
    CHECK(ansatz_for_order(7, 2, 30).size() == 3);
    const auto t = ansatz_for_order(7, 2, 30);
    CHECK(t[2].label() == "L^2*zeta(7)");
    for (const auto& term : t) CHECK(term.value > 0);
    CHECK(lambda_power_for_order(3, 2) == 0);
    CHECK(lambda_power_for_order(5, 2) == 1);
    CHECK(lambda_power_for_order(6, 2) == 1);
    CHECK(lambda_power_for_order(8, 2) == 2);
    CHECK(lambda_power_for_order(13, 2) == 2);
  }

  TEST_CASE("relation lines for the five coefficients") {
    const std::pair<int, const char*> cases[] = {{3, kC3}, {5, kC5}, {6, kC6}, {7, kC7}, {8, kC8}};
    const char* lines[] = {
        "C_3= 4.808 relerr=8.11 e-38 v=[1,-4]",
        "C_5= 0.450 relerr=1.48 e-30 v=[1,-12,2]",
        "C_6=44.985 relerr=1.70 e-29 v=[1,-8,-4]",
        "C_7=-50.539 relerr=4.53 e-30 v=[2,-72,24,1]",
        "C_8=200.872 relerr=9.46 e-28 v=[1,-48,-8,-2]",
    };
    for (int i = 0; i < 5; ++i) {
      const RelationProblem pr = problem(cases[i].first, cases[i].second);
      const IntegerRelation rel = find_relation(pr, 100);
      CHECK(rel.accepted);
      CHECK(relation_line(cases[i].first, pr, rel) == lines[i]);
    }
  }

  TEST_CASE("closed forms from relations") {
    const RelationProblem p3 = problem(3, kC3);
    CHECK(relation_to_coefficient(find_relation(p3, 100), p3) == ClosedForm{1, 4, 0, 0, {3}});
    const RelationProblem p7 = problem(7, kC7);
    CHECK(relation_to_coefficient(find_relation(p7, 100), p7) == ClosedForm{2, 72, -24, -1, {7}});
    IntegerRelation zero;
    zero.v = {1, 0};
    zero.accepted = true;
    CHECK(relation_to_coefficient(zero, p3).is_zero());
    zero.accepted = false;
    CHECK_THROWS_AS(relation_to_coefficient(zero, p3), DomainError);
  }

  TEST_CASE("accepted vectors do not depend on the rounding power") {
    const std::pair<int, const char*> cases[] = {{3, kC3}, {5, kC5}, {6, kC6}, {7, kC7}, {8, kC8}};
    for (const auto& [mu, value] : cases) {
      const auto base = find_relation(problem(mu, value, 30), 100).v;
      for (int p : {25, 35}) {
        const RelationProblem pr = problem(mu, value, p);
        if (pr.target_digits <= p + 6) continue;  // too few digits for this p
        CAPTURE(mu);
        CAPTURE(p);
        CHECK(find_relation(pr, 100).v == base);
      }
    }
  }

  TEST_CASE("known coefficients give back their quadruples") {
    for (int mu : {3, 5, 6, 7, 8}) {
      const KnownCoefficient k = known_coefficient(mu, 60);
      RelationProblem pr;
      pr.target = k.value;
      pr.target_digits = 60;
      pr.terms = ansatz_for_order(mu, lambda_power_for_order(mu, 2), 100);
      pr.rounding_power = 30;
      const IntegerRelation rel = find_relation(pr, 100);
      CAPTURE(mu);
      REQUIRE(rel.accepted);
      CHECK(relation_to_coefficient(rel, pr) == k.closed_form);
    }
  }

  TEST_CASE("soundness of accepted relations") {
    const RelationProblem pr = problem(8, kC8);
    const IntegerRelation rel = find_relation(pr, 100);
    REQUIRE(rel.accepted);
    BigReal norm = pr.target * pr.target;
    for (const auto& t : pr.terms) norm += t.value * t.value;
    CHECK(abs(rel.residual) < pow(BigReal(10), -(pr.rounding_power - 6)) * sqrt(norm));
  }

  TEST_CASE("ninth order at 27 digits is rejected") {
    const RelationProblem pr = problem(9, "-317.770485073938802226545022");
    CHECK(pr.target_digits == 27);
    CHECK_FALSE(find_relation(pr, 100).accepted);
  }

  TEST_CASE("precision and ansatz checks") {
    RelationProblem pr = problem(3, kC3);
    CHECK_THROWS_AS(find_relation(pr, 40), DomainError);
    pr.terms.clear();
    CHECK_THROWS_AS(find_relation(pr, 100), DomainError);
    CHECK(default_rounding_power(38) == 30);
    CHECK(default_rounding_power(27) == 19);
  }

  TEST_CASE("significant digit counting") {
    CHECK(significant_digits("0.4496") == 4);
    CHECK(significant_digits("-50.50") == 4);
    CHECK(significant_digits("200.87223780187035158705886400") == 29);
    CHECK(significant_digits("1.5e10") == 2);
    CHECK(significant_digits("0.000") == 0);
  }
}
