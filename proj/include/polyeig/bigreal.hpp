#pragma once

// Arbitrary-precision real scalar shared by every module.
//
// BigReal is Boost's variable-precision MPFR wrapper. Boost 1.74 gives the
// result of an arithmetic expression the precision of its operands, not the
// thread default, so routines that need a working precision must lift their
// inputs explicitly with lift(). PrecisionScope only governs freshly
// constructed values (literals, default-constructed temporaries).

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyeig {

using BigReal = boost::multiprecision::mpfr_float;

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMinDigits = 10;

/// Working precision used internally for a caller-requested digit count.
int guard_digits(int digits);

/// RAII override of the default precision (decimal digits) for new values.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Copy of x carried at `digits` decimal digits.
BigReal lift(const BigReal& x, int digits);

/// Parses a decimal string ("4.808", "-1.2e16") exactly rounded to `digits`.
BigReal parse_real(std::string_view text, int digits);

BigReal pi_at(int digits);

/// Digits of |x| truncated toward zero, rendered in positional notation with
/// `significant` significant digits ("5.78319922243209606").
std::string truncate_significant(const BigReal& x, int significant);

/// Positional rendering rounded to nearest with `significant` digits.
std::string to_rounded_string(const BigReal& x, int significant);

/// Rounded scientific rendering with `significant` digits, e.g. "1.262e+16".
std::string to_scientific(const BigReal& x, int significant);

/// Positional rendering with `significant` digits, rounding toward -inf
/// (`down`) or +inf; used so stored interval endpoints stay outward-rounded.
std::string to_directed_string(const BigReal& x, int significant, bool down);

/// floor(log10|x|); x must be nonzero.
long decimal_exponent(const BigReal& x);

}  // namespace polyeig
