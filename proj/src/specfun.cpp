#include "polyeig/specfun.hpp"

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cmath>
#include <sstream>

namespace polyeig {

namespace {

using Rational = boost::multiprecision::mpq_rational;

void check_digits(int digits) {
  if (digits < kMinDigits) throw PrecisionError("requested precision below 10 digits");
}

// Digits lost to cancellation in the alternating Bessel series: the sum of
// absolute terms is bounded by e^x times the leading term.
int bessel_working_digits(int digits, double x) {
  const int extra = static_cast<int>(std::ceil(0.4343 * x)) + 5;
  const int wp = guard_digits(digits) + extra;
  if (wp > kMaxWorkingDigits) {
    throw PrecisionError("Bessel series needs " + std::to_string(wp) +
                         " working digits, above the configured cap");
  }
  return wp;
}

// Sum_m (-x^2/4)^m / (m! (nu+1)_m) times `lead`, at the precision of `lead`.
BigReal bessel_series(const BigReal& nu, const BigReal& x, const BigReal& lead, int wp) {
  PrecisionScope scope(wp);
  const BigReal q = -(x * x) / 4;
  const BigReal eps = pow(BigReal(10), -wp) * abs(lead);
  BigReal term = lead;
  BigReal sum = lead;
  const double peak = x.convert_to<double>() / 2;
  for (long m = 1;; ++m) {
    term *= q;
    term /= BigReal(m) * (nu + m);
    sum += term;
    if (m > peak && abs(term) < eps) break;
  }
  return sum;
}

// B_0..B_n by the classical recurrence; exact rationals.
std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b(static_cast<size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
    Rational acc = 0;
    boost::multiprecision::mpz_int binom = 1;  // C(m+1, 0)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * b[static_cast<size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<size_t>(m)] = -acc / (m + 1);
  }
  return b;
}

BigReal to_big(const Rational& q, int wp) {
  BigReal out(0, static_cast<unsigned>(wp));
  mpfr_set_q(out.backend().data(), q.backend().data(), MPFR_RNDN);
  return out;
}

}  // namespace

BigReal bessel_j(int order, const BigReal& x, int digits) {
  check_digits(digits);
  if (order < 0) throw DomainError("bessel_j: negative order");
  if (x < 0) throw DomainError("bessel_j: negative argument");
  if (x == 0) return BigReal(order == 0 ? 1 : 0, static_cast<unsigned>(digits));
  const int wp = bessel_working_digits(digits, x.convert_to<double>());
  PrecisionScope scope(wp);
  const BigReal xw = lift(x, wp);
  BigReal lead = pow(xw / 2, order);
  for (int k = 2; k <= order; ++k) lead /= k;
  return lift(bessel_series(BigReal(order), xw, lead, wp), digits);
}

BigReal bessel_j(const BigReal& order, const BigReal& x, int digits) {
  check_digits(digits);
  if (order < 0) throw DomainError("bessel_j: negative order");
  if (x < 0) throw DomainError("bessel_j: negative argument");
  if (x == 0) return BigReal(order == 0 ? 1 : 0, static_cast<unsigned>(digits));
  const int wp = bessel_working_digits(digits, x.convert_to<double>());
  PrecisionScope scope(wp);
  const BigReal nu = lift(order, wp);
  const BigReal xw = lift(x, wp);
  const BigReal lead = exp(nu * log(xw / 2) - boost::multiprecision::lgamma(nu + 1));
  return lift(bessel_series(nu, xw, lead, wp), digits);
}

CircleConstant circle_constant(int root_index, int digits) {
  check_digits(digits);
  if (root_index < 1) throw DomainError("circle_constant: root index must be >= 1");
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);

  BigReal lo;
  BigReal hi;
  if (root_index == 1) {
    lo = sqrt(BigReal("5.7"));
    hi = sqrt(BigReal("5.8"));
  } else {
    // McMahon: j_{0,k} ~ (k - 1/4) pi + 1/(8 (k - 1/4) pi), always above beta.
    const BigReal beta = (BigReal(root_index) - BigReal("0.25")) * pi_at(wp);
    lo = beta - BigReal("0.1");
    hi = beta + BigReal("0.3");
  }

  constexpr int kCoarse = 30;
  BigReal f_lo = bessel_j(0, lo, kCoarse);
  const BigReal f_hi = bessel_j(0, hi, kCoarse);
  if (f_lo * f_hi > 0) {
    throw BracketError("circle_constant: J0 has no sign change in the bracket for root " +
                       std::to_string(root_index));
  }
  // Bisection to ~1e-8 keeps Newton inside the basin of the bracketed root.
  for (int i = 0; i < 40; ++i) {
    const BigReal mid = (lo + hi) / 2;
    const BigReal f_mid = bessel_j(0, mid, kCoarse);
    if (f_mid == 0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  BigReal root = (lo + hi) / 2;
  const BigReal tol = pow(BigReal(10), -(wp - 3));
  for (int it = 0; it < 200; ++it) {
    // J0' = -J1
    const BigReal step = bessel_j(0, root, wp) / bessel_j(1, root, wp);
    root += step;
    if (abs(step) <= tol * root) break;
    if (it == 199) throw PrecisionError("circle_constant: Newton did not converge");
  }

  CircleConstant out;
  out.root_index = root_index;
  out.root = lift(root, digits);
  out.j_sq = lift(root * root, digits);
  out.lambda_circle = out.j_sq;
  return out;
}

BigReal zeta(int n, int digits) {
  check_digits(digits);
  if (n < 2) throw DomainError("zeta: argument must be an integer >= 2");
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);

  const long big_n = 2L * wp;
  const BigReal nn(big_n);
  BigReal sum = 0;
  for (long k = 1; k < big_n; ++k) sum += pow(BigReal(k), -n);
  sum += pow(nn, 1 - n) / (n - 1);
  sum += pow(nn, -n) / 2;

  const BigReal eps = pow(BigReal(10), -wp);
  // Correction term j: B_2j/(2j)! * n(n+1)...(n+2j-2) * N^(-n-2j+1).
  const int max_j = static_cast<int>(3 * big_n);
  std::vector<Rational> bern;
  BigReal rising = n;              // n (n+1) ... (n+2j-2)
  BigReal factorial = 2;           // (2j)!
  BigReal power = pow(nn, -n - 1);  // N^(-n-2j+1)
  const BigReal inv_n2 = 1 / (nn * nn);
  for (int j = 1; j <= max_j; ++j) {
    if (static_cast<int>(bern.size()) <= 2 * j) {
      bern = bernoulli_numbers(std::min(2 * max_j, 4 * j + 16));
    }
    const BigReal term = to_big(bern[static_cast<size_t>(2 * j)], wp) / factorial * rising * power;
    sum += term;
    if (abs(term) < eps * sum) break;
    rising *= BigReal(n + 2 * j - 1) * (n + 2 * j);
    factorial *= BigReal(2 * j + 1) * (2 * j + 2);
    power *= inv_n2;
  }
  return lift(sum, digits);
}

BigReal ClosedForm::evaluate(const BigReal& lambda_circle, int digits) const {
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  if (a == 0) throw DomainError("closed form with zero denominator");
  const BigReal l = lift(lambda_circle, wp);
  BigReal numer = BigReal(b) + BigReal(c) * l + BigReal(d) * l * l;
  for (int arg : zeta_args) numer *= zeta(arg, wp);
  return lift(numer / a, digits);
}

std::string ClosedForm::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](long coef, const char* symbol) {
    if (coef == 0) return;
    if (first) {
      os << (coef < 0 ? "-" : "");
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    os << (coef < 0 ? -coef : coef) << symbol;
    first = false;
  };
  os << "(";
  emit(b, "");
  emit(c, "*L");
  emit(d, "*L^2");
  os << ")";
  for (int arg : zeta_args) os << "*zeta(" << arg << ")";
  if (a != 1) os << "/" << a;
  return os.str();
}

KnownCoefficient known_coefficient(int order, int digits) {
  check_digits(digits);
  ClosedForm form;
  switch (order) {
    case 1:
    case 2:
    case 4:
      break;
    case 3:
      form = {1, 4, 0, 0, {3}};
      break;
    case 5:
      form = {1, 12, -2, 0, {5}};
      break;
    case 6:
      form = {1, 8, 4, 0, {3, 3}};
      break;
    case 7:
      form = {2, 72, -24, -1, {7}};
      break;
    case 8:
      form = {1, 48, 8, 2, {3, 5}};
      break;
    default:
      throw DomainError("known_coefficient: order must be in 1..8");
  }
  KnownCoefficient out;
  out.order = order;
  out.closed_form = form;
  if (form.is_zero()) {
    out.value = BigReal(0, static_cast<unsigned>(digits));
  } else {
    const int wp = guard_digits(digits);
    out.value = form.evaluate(circle_constant(1, wp).lambda_circle, digits);
  }
  return out;
}

Sides::Sides(long count) : count_(count) {
  if (count < 3) throw DomainError("a polygon needs at least 3 sides");
}

Sides Sides::infinite() { return Sides(); }

long Sides::count() const {
  if (!count_) throw DomainError("infinite side count has no integer value");
  return *count_;
}

std::vector<BigReal> series_coefficients(const SeriesTruncation& trunc, int digits) {
  if (trunc.order < 0) throw DomainError("truncation order must be >= 0");
  const int known = std::min(trunc.order, kHighestKnownOrder);
  if (trunc.order > kHighestKnownOrder &&
      static_cast<int>(trunc.extra.size()) < trunc.order - kHighestKnownOrder) {
    throw DomainError("truncation order " + std::to_string(trunc.order) +
                      " needs numeric coefficients from C_9 onward");
  }
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(trunc.order));
  for (int mu = 1; mu <= known; ++mu) out.push_back(known_coefficient(mu, digits).value);
  for (int mu = kHighestKnownOrder + 1; mu <= trunc.order; ++mu) {
    out.push_back(lift(trunc.extra[static_cast<size_t>(mu - kHighestKnownOrder - 1)], digits));
  }
  return out;
}

BigReal predict(Sides sides, const SeriesTruncation& trunc, int digits) {
  check_digits(digits);
  const int wp = guard_digits(digits);
  const BigReal lc = circle_constant(1, wp).lambda_circle;
  if (sides.is_infinite()) return lift(lc, digits);
  const std::vector<BigReal> coeffs = series_coefficients(trunc, wp);
  PrecisionScope scope(wp);
  const BigReal x = BigReal(1) / sides.count();
  // Horner in X = 1/S over 1 + C_1 X + ... + C_N X^N.
  BigReal acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * x;
  return lift(lc * (1 + acc), digits);
}

}  // namespace polyeig
