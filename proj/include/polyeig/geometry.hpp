#pragma once

// Normalization conventions for the regular S-gon and the formal 1/S series
// arithmetic used to move the expansion between them.

#include "polyeig/bigreal.hpp"

#include <string>
#include <vector>

namespace polyeig {

/// transcribed: area pi (equal to the unit disk); inscribed: unit circumradius.
enum class Convention { transcribed, inscribed };

Convention parse_convention(const std::string& name);
std::string to_string(Convention c);

struct PolygonSpec {
  long sides = 3;
  Convention convention = Convention::transcribed;

  PolygonSpec() = default;
  PolygonSpec(long s, Convention c);
};

/// pi for transcribed polygons, S cos(pi/S) sin(pi/S) for inscribed ones.
BigReal area(const PolygonSpec& spec, int digits);

/// lambda * area is invariant: returns value * area(from) / area(to).
BigReal rescale_eigenvalue(const BigReal& value, const PolygonSpec& from, const PolygonSpec& to,
                           int digits);

/// Finite power series in X = 1/S; coefficients[i] multiplies X^i.
struct ExpansionPoly {
  std::vector<BigReal> coefficients;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  BigReal evaluate(const BigReal& x) const;
};

ExpansionPoly series_product(const ExpansionPoly& a, const ExpansionPoly& b, int order);
/// Multiplicative inverse; requires a nonzero constant term.
ExpansionPoly series_reciprocal(const ExpansionPoly& a, int order);

/// Taylor series of pi / A'(S) in 1/S through `order`.
ExpansionPoly inverse_inscribed_area_series(int order, int digits);

inline constexpr int kMaxInscribedOrder = 6;

/// lambda-hat^[6](S) * pi / A'(S) expanded through `order` <= 6.
ExpansionPoly inscribed_expansion(int order, int digits);

}  // namespace polyeig
