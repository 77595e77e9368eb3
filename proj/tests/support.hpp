#pragma once

#include "polyeig/bigreal.hpp"

#include <mpfr.h>

#include <cmath>
#include <random>
#include <string>

#ifndef POLYEIG_TEST_DATA
#define POLYEIG_TEST_DATA "tests/data"
#endif

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(POLYEIG_TEST_DATA) + "/" + name; }

// -log10 |a - b| / |b|, or 1e9 when equal.
inline double agreement(const polyeig::BigReal& a, const polyeig::BigReal& b) {
  if (a == b) return 1e9;
  const polyeig::BigReal rel = abs(a - b) / (b == 0 ? polyeig::BigReal(1) : abs(b));
  return -log10(rel).convert_to<double>();
}

// Reference values straight from MPFR, independent of the hand-written series.
inline polyeig::BigReal mpfr_ref_jn(long n, const polyeig::BigReal& x, int digits) {
  polyeig::PrecisionScope scope(digits);
  polyeig::BigReal xx = polyeig::lift(x, digits);
  polyeig::BigReal out(0, digits);
  mpfr_jn(out.backend().data(), n, xx.backend().data(), MPFR_RNDN);
  return out;
}

inline polyeig::BigReal mpfr_ref_zeta(unsigned long n, int digits) {
  polyeig::PrecisionScope scope(digits);
  polyeig::BigReal out(0, digits);
  mpfr_zeta_ui(out.backend().data(), n, MPFR_RNDN);
  return out;
}

inline polyeig::BigReal mpfr_ref_pi(int digits) {
  polyeig::PrecisionScope scope(digits);
  polyeig::BigReal out(0, digits);
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

// Seeded generator shared by the property suites.
class Gen {
 public:
  explicit Gen(unsigned long seed) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  // Random signed decimal string: `digits` significant digits, `int_digits` before the point.
  std::string decimal(int digits, int int_digits = 1) {
    std::string s;
    if (integer(0, 1)) s += "-";
    s += std::to_string(integer(1, 9));
    for (int i = 1; i < int_digits; ++i) s += std::to_string(integer(0, 9));
    s += ".";
    for (int i = int_digits; i < digits; ++i) s += std::to_string(integer(0, 9));
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
