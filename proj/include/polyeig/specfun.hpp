#pragma once

// Special functions and the analytic side of the 1/S eigenvalue expansion:
// Bessel J, Bessel roots, Riemann zeta, the closed-form coefficients through
// eighth order and truncated-series prediction.

#include "polyeig/bigreal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyeig {

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest internal working precision (digits) the series evaluators accept.
inline constexpr int kMaxWorkingDigits = 6000;

/// J_n(x) for integer n >= 0 and x >= 0 by power series. Working precision
/// grows with the series' cancellation; throws PrecisionError past
/// kMaxWorkingDigits.
BigReal bessel_j(int order, const BigReal& x, int digits);

/// J_nu(x) for real nu >= 0, x >= 0. Reference path for non-integer orders.
BigReal bessel_j(const BigReal& order, const BigReal& x, int digits);

struct CircleConstant {
  int root_index = 1;
  BigReal root;           // k-th positive zero of J_0
  BigReal j_sq;           // root squared
  BigReal lambda_circle;  // equal to j_sq; the unit-disk eigenvalue for k = 1
};

/// Squared k-th positive root of J_0: bisection inside a per-root bracket,
/// then Newton at full precision.
CircleConstant circle_constant(int root_index, int digits);

/// Riemann zeta at integer n >= 2 by Euler-Maclaurin summation.
BigReal zeta(int n, int digits);

/// Closed form (b + c*L + d*L^2) * Z / a where L is the circle eigenvalue and
/// Z the product of zeta values at `zeta_args` (empty product = 1). The
/// all-zero numerator encodes a vanishing coefficient.
struct ClosedForm {
  long a = 1;
  long b = 0;
  long c = 0;
  long d = 0;
  std::vector<int> zeta_args;

  bool is_zero() const { return b == 0 && c == 0 && d == 0; }
  BigReal evaluate(const BigReal& lambda_circle, int digits) const;
  /// "(72 - 24*L - 1*L^2)*zeta(7)/2"-style rendering.
  std::string to_string() const;
  bool operator==(const ClosedForm&) const = default;
};

struct KnownCoefficient {
  int order = 0;
  BigReal value;
  ClosedForm closed_form;
};

inline constexpr int kHighestKnownOrder = 8;

KnownCoefficient known_coefficient(int order, int digits);

/// lambda-hat^[N]: known coefficients through min(N, 8); orders beyond 8 come
/// from `extra`, whose first entry is C_9.
struct SeriesTruncation {
  int order = kHighestKnownOrder;
  std::vector<BigReal> extra;
};

/// Side count that may be the circle limit S = infinity.
class Sides {
 public:
  explicit Sides(long count);
  static Sides infinite();
  bool is_infinite() const { return !count_.has_value(); }
  long count() const;

 private:
  Sides() = default;
  std::optional<long> count_;
};

BigReal predict(Sides sides, const SeriesTruncation& trunc, int digits);

/// Coefficients C_1..C_order of lambda-hat/L - 1, zeros included, using
/// `trunc.extra` above order 8.
std::vector<BigReal> series_coefficients(const SeriesTruncation& trunc, int digits);

}  // namespace polyeig
