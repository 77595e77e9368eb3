#include "polyeig/intrel.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace polyeig {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(std::vector<mpz_class>& y, const mpz_class& q, const std::vector<mpz_class>& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nearest integer to a / b for b > 0.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  const mpz_class num = 2 * a + b;
  const mpz_class den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

// Integral LLL (Cohen, A Course in Computational Algebraic Number Theory,
// Algorithm 2.6.7): all Gram-Schmidt data is kept as exact integers d_i and
// lambda_ij, so there is no floating-point drift.
LllResult lll_reduce(const IntBasis& columns) {
  const size_t n = columns.size();
  if (n == 0) throw DomainError("lll_reduce: empty basis");
  for (const auto& c : columns) {
    if (c.size() != n) throw DomainError("lll_reduce: matrix must be square");
  }
  LllResult out;
  out.basis = columns;
  out.transform.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) out.transform[i][i] = 1;
  auto& b = out.basis;
  auto& h = out.transform;

  std::vector<mpz_class> d(n + 1, 0);  // d[i + 1] belongs to vector i; d[0] = 1
  std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n, 0));
  auto D = [&](long i) -> mpz_class& { return d[static_cast<size_t>(i + 1)]; };
  d[0] = 1;
  D(0) = dot(b[0], b[0]);
  if (D(0) == 0) throw DomainError("lll_reduce: zero basis vector");

  auto red = [&](size_t k, size_t l) {
    if (2 * abs(lam[k][l]) <= D(static_cast<long>(l))) return;
    const mpz_class q = round_div(lam[k][l], D(static_cast<long>(l)));
    axpy(b[k], q, b[l]);
    axpy(h[k], q, h[l]);
    lam[k][l] -= q * D(static_cast<long>(l));
    for (size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  size_t kmax = 0;
  auto swap = [&](size_t k) {
    std::swap(b[k], b[k - 1]);
    std::swap(h[k], h[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    const long kk = static_cast<long>(k);
    const mpz_class l = lam[k][k - 1];
    const mpz_class big = exact_div(D(kk - 2) * D(kk) + l * l, D(kk - 1));
    for (size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lam[i][k];
      lam[i][k] = exact_div(D(kk) * lam[i][k - 1] - l * t, D(kk - 1));
      lam[i][k - 1] = exact_div(big * t + l * lam[i][k], D(kk));
    }
    D(kk - 1) = big;
  };

  size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (size_t j = 0; j <= k; ++j) {
        mpz_class u = dot(b[k], b[j]);
        for (size_t i = 0; i < j; ++i) {
          const long ii = static_cast<long>(i);
          u = exact_div(D(ii) * u - lam[k][i] * lam[j][i], D(ii - 1));
        }
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw DomainError("lll_reduce: columns are linearly dependent");
          D(static_cast<long>(k)) = u;
        }
      }
    }
    red(k, k - 1);
    const long kk = static_cast<long>(k);
    if (4 * D(kk) * D(kk - 2) < 3 * D(kk - 1) * D(kk - 1) - 4 * lam[k][k - 1] * lam[k][k - 1]) {
      swap(k);
      k = std::max<size_t>(1, k - 1);
    } else {
      for (size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return out;
}

std::string AnsatzTerm::label() const {
  std::string s;
  if (lambda_power == 1) s = "L*";
  if (lambda_power > 1) s = "L^" + std::to_string(lambda_power) + "*";
  for (size_t i = 0; i < zeta_args.size(); ++i) {
    if (i > 0) s += "*";
    s += "zeta(" + std::to_string(zeta_args[i]) + ")";
  }
  return s;
}

std::vector<AnsatzTerm> ansatz_for_order(int order, int max_lambda_power, int digits) {
  std::vector<AnsatzTerm> out;
  if (order < 3) return out;
  if (max_lambda_power < 0) throw DomainError("ansatz_for_order: negative lambda power");
  std::vector<std::vector<int>> products;
  std::vector<int> current;
  std::function<void(int, int)> extend = [&](int remaining, int smallest) {
    if (remaining == 0) {
      products.push_back(current);
      return;
    }
    for (int a = smallest; a <= remaining; a += 2) {
      current.push_back(a);
      extend(remaining - a, a);
      current.pop_back();
    }
  };
  extend(order, 3);
  std::sort(products.begin(), products.end());

  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  const BigReal lc = circle_constant(1, wp).lambda_circle;
  for (const auto& args : products) {
    BigReal z = 1;
    for (int a : args) z *= zeta(a, wp);
    BigReal power = 1;
    for (int p = 0; p <= max_lambda_power; ++p) {
      out.push_back({args, p, lift(z * power, digits)});
      power *= lc;
    }
  }
  return out;
}

int lambda_power_for_order(int order, int cap) {
  return std::clamp((order - 1) / 2 - 1, 0, std::max(cap, 0));
}

int default_rounding_power(int target_digits) { return std::min(30, target_digits - 8); }

IntegerRelation find_relation(const RelationProblem& problem, int prec) {
  if (problem.terms.empty()) throw DomainError("find_relation: empty ansatz");
  const int d = problem.target_digits > 0 ? problem.target_digits : prec;
  const int p = problem.rounding_power > 0 ? problem.rounding_power : default_rounding_power(d);
  if (p < 1) throw DomainError("find_relation: target has too few digits for a relation search");
  if (prec < p + 20) throw DomainError("find_relation: precision must be at least p + 20");
  PrecisionScope scope(prec);

  std::vector<BigReal> u;
  u.push_back(lift(problem.target, prec));
  for (const auto& t : problem.terms) u.push_back(lift(t.value, prec));
  const size_t n = u.size();

  const BigReal scale = pow(BigReal(10), p);
  std::vector<mpz_class> last(n);
  for (size_t j = 0; j < n; ++j) {
    const BigReal x = u[j] * scale;
    mpfr_get_z(last[j].get_mpz_t(), x.backend().data(), MPFR_RNDN);
  }
  IntBasis cols(n, std::vector<mpz_class>(n, 0));
  for (size_t j = 0; j < n; ++j) {
    if (j + 1 < n) cols[j][j] = 1;
    cols[j][n - 1] = last[j];
  }
  const LllResult red = lll_reduce(cols);

  IntegerRelation rel;
  rel.v = red.transform[0];
  const int sign = sgn(rel.v[0]);
  if (sign < 0) {
    for (auto& x : rel.v) x = -x;
  }
  rel.residual = BigReal(0);
  for (size_t j = 0; j < n; ++j) rel.residual += u[j] * BigReal(rel.v[j].get_str());
  rel.relerr = problem.target == 0 ? BigReal(abs(rel.residual)) : BigReal(abs(rel.residual / u[0]));

  mpz_class height = 0;
  for (const auto& x : rel.v) height = std::max(height, mpz_class(abs(x)));
  rel.accepted = sign != 0 && height <= problem.height_cap &&
                 rel.relerr < pow(BigReal(10), -(d - 6));
  return rel;
}

ClosedForm relation_to_coefficient(const IntegerRelation& rel, const RelationProblem& problem) {
  if (!rel.accepted) throw DomainError("relation_to_coefficient: relation was rejected");
  if (rel.v.size() != problem.terms.size() + 1) {
    throw DomainError("relation_to_coefficient: relation does not match the ansatz");
  }
  ClosedForm cf;
  cf.zeta_args = problem.terms.front().zeta_args;
  cf.a = rel.v[0].get_si();
  long* slots[] = {&cf.b, &cf.c, &cf.d};
  for (size_t j = 0; j < problem.terms.size(); ++j) {
    const AnsatzTerm& t = problem.terms[j];
    if (t.zeta_args != cf.zeta_args || t.lambda_power < 0 || t.lambda_power > 2) {
      throw DomainError("relation_to_coefficient: ansatz is not a single zeta product in L^0..L^2");
    }
    *slots[t.lambda_power] -= rel.v[j + 1].get_si();
  }
  return cf;
}

std::string relation_line(int order, const RelationProblem& problem, const IntegerRelation& rel) {
  char head[64];
  std::snprintf(head, sizeof head, "C_%d=%6.3f", order, problem.target.convert_to<double>());
  std::string out = head;
  out += " relerr=";
  if (rel.relerr == 0) {
    out += "0.00 e0";
  } else {
    long e = decimal_exponent(rel.relerr);
    BigReal m = rel.relerr / pow(BigReal(10), e);
    // Keep the two-decimal mantissa below 10 after rounding.
    if (m.convert_to<double>() >= 9.995) {
      ++e;
      m /= 10;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f e%ld", m.convert_to<double>(), e);
    out += buf;
  }
  out += " v=[";
  for (size_t j = 0; j < rel.v.size(); ++j) {
    if (j > 0) out += ",";
    out += rel.v[j].get_str();
  }
  return out + "]";
}

int significant_digits(const std::string& decimal) {
  std::string mant = decimal.substr(0, decimal.find_first_of("eE"));
  std::string digits;
  for (char c : mant) {
    if (c >= '0' && c <= '9') digits += c;
  }
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return 0;
  return static_cast<int>(digits.size() - first);
}

}  // namespace polyeig
