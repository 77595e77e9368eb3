#include "polyeig/geometry.hpp"

#include "polyeig/specfun.hpp"

#include <algorithm>

namespace polyeig {

Convention parse_convention(const std::string& name) {
  if (name == "transcribed") return Convention::transcribed;
  if (name == "inscribed") return Convention::inscribed;
  throw DomainError("unknown convention '" + name + "'");
}

std::string to_string(Convention c) {
  return c == Convention::transcribed ? "transcribed" : "inscribed";
}

PolygonSpec::PolygonSpec(long s, Convention c) : sides(s), convention(c) {
  if (s < 3) throw DomainError("a polygon needs at least 3 sides");
}

BigReal area(const PolygonSpec& spec, int digits) {
  if (spec.sides < 3) throw DomainError("a polygon needs at least 3 sides");
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  const BigReal pi = pi_at(wp);
  if (spec.convention == Convention::transcribed) return lift(pi, digits);
  const BigReal angle = pi / spec.sides;
  return lift(BigReal(spec.sides) * cos(angle) * sin(angle), digits);
}

BigReal rescale_eigenvalue(const BigReal& value, const PolygonSpec& from, const PolygonSpec& to,
                           int digits) {
  if (from.sides != to.sides) throw DomainError("rescale_eigenvalue: side counts differ");
  const int wp = guard_digits(digits);
  if (from.convention == to.convention) return lift(value, digits);
  PrecisionScope scope(wp);
  return lift(lift(value, wp) * area(from, wp) / area(to, wp), digits);
}

BigReal ExpansionPoly::evaluate(const BigReal& x) const {
  BigReal acc(0, x.precision());
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ExpansionPoly series_product(const ExpansionPoly& a, const ExpansionPoly& b, int order) {
  const unsigned prec = std::max(a.coefficients.empty() ? 0u : a.coefficients[0].precision(),
                                 b.coefficients.empty() ? 0u : b.coefficients[0].precision());
  ExpansionPoly out;
  out.coefficients.assign(static_cast<size_t>(order) + 1, BigReal(0, std::max(prec, 10u)));
  for (int i = 0; i <= order && i <= a.order(); ++i) {
    for (int j = 0; i + j <= order && j <= b.order(); ++j) {
      out.coefficients[static_cast<size_t>(i + j)] +=
          a.coefficients[static_cast<size_t>(i)] * b.coefficients[static_cast<size_t>(j)];
    }
  }
  return out;
}

ExpansionPoly series_reciprocal(const ExpansionPoly& a, int order) {
  if (a.coefficients.empty() || a.coefficients[0] == 0) {
    throw DomainError("series_reciprocal: zero constant term");
  }
  const unsigned prec = a.coefficients[0].precision();
  ExpansionPoly out;
  out.coefficients.assign(static_cast<size_t>(order) + 1, BigReal(0, prec));
  out.coefficients[0] = BigReal(1, prec) / a.coefficients[0];
  for (int n = 1; n <= order; ++n) {
    BigReal acc(0, prec);
    for (int k = 1; k <= n && k <= a.order(); ++k) {
      acc += a.coefficients[static_cast<size_t>(k)] * out.coefficients[static_cast<size_t>(n - k)];
    }
    out.coefficients[static_cast<size_t>(n)] = -acc / a.coefficients[0];
  }
  return out;
}

ExpansionPoly inverse_inscribed_area_series(int order, int digits) {
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  // A'(S)/pi = sin(2 pi X) / (2 pi X) with X = 1/S.
  const BigReal two_pi = 2 * pi_at(wp);
  ExpansionPoly sinc;
  sinc.coefficients.assign(static_cast<size_t>(order) + 1, BigReal(0));
  BigReal term = 1;  // (2 pi)^(2k) / (2k+1)!, signed
  for (int k = 0; 2 * k <= order; ++k) {
    sinc.coefficients[static_cast<size_t>(2 * k)] = term;
    term *= -(two_pi * two_pi) / (BigReal(2 * k + 2) * (2 * k + 3));
  }
  ExpansionPoly inv = series_reciprocal(sinc, order);
  for (auto& c : inv.coefficients) c = lift(c, digits);
  return inv;
}

ExpansionPoly inscribed_expansion(int order, int digits) {
  if (order < 0 || order > kMaxInscribedOrder) {
    throw DomainError("inscribed_expansion: order must be in 0..6");
  }
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  const BigReal lc = circle_constant(1, wp).lambda_circle;
  ExpansionPoly transcribed;
  transcribed.coefficients.push_back(lc);
  for (int mu = 1; mu <= kMaxInscribedOrder; ++mu) {
    transcribed.coefficients.push_back(lc * known_coefficient(mu, wp).value);
  }
  ExpansionPoly out = series_product(transcribed, inverse_inscribed_area_series(order, wp), order);
  for (auto& c : out.coefficients) c = lift(c, digits);
  return out;
}

}  // namespace polyeig
