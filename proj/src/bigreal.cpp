#include "polyeig/bigreal.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <memory>

namespace polyeig {

namespace {

struct MpfrStringDeleter {
  void operator()(char* p) const { mpfr_free_str(p); }
};

// Significand digits and decimal exponent as produced by mpfr_get_str:
// value = 0.DIGITS * 10^exp.
struct DecimalDigits {
  bool negative = false;
  std::string digits;
  long exp = 0;
};

DecimalDigits decimal_digits(const BigReal& x, int significant, mpfr_rnd_t rnd) {
  mpfr_exp_t exp = 0;
  std::unique_ptr<char, MpfrStringDeleter> raw(
      mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(significant),
                   x.backend().data(), rnd));
  DecimalDigits out;
  std::string s(raw.get());
  if (!s.empty() && s.front() == '-') {
    out.negative = true;
    s.erase(0, 1);
  }
  out.digits = std::move(s);
  out.exp = static_cast<long>(exp);
  return out;
}

std::string positional(const DecimalDigits& d) {
  std::string out = d.negative ? "-" : "";
  if (std::all_of(d.digits.begin(), d.digits.end(), [](char c) { return c == '0'; })) {
    return "0";
  }
  if (d.exp <= 0) {
    out += "0.";
    out.append(static_cast<size_t>(-d.exp), '0');
    out += d.digits;
  } else if (static_cast<size_t>(d.exp) >= d.digits.size()) {
    out += d.digits;
    out.append(static_cast<size_t>(d.exp) - d.digits.size(), '0');
  } else {
    out += d.digits.substr(0, static_cast<size_t>(d.exp));
    out += '.';
    out += d.digits.substr(static_cast<size_t>(d.exp));
  }
  return out;
}

}  // namespace

int guard_digits(int digits) { return digits + std::max(20, digits / 10); }

PrecisionScope::PrecisionScope(int digits) : previous_(BigReal::default_precision()) {
  if (digits < kMinDigits) throw PrecisionError("precision below 10 digits");
  BigReal::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { BigReal::default_precision(previous_); }

BigReal lift(const BigReal& x, int digits) { return BigReal(x, static_cast<unsigned>(digits)); }

BigReal parse_real(std::string_view text, int digits) {
  BigReal out(0, static_cast<unsigned>(digits));
  std::string s(text);
  if (mpfr_set_str(out.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  return out;
}

BigReal pi_at(int digits) {
  BigReal out(0, static_cast<unsigned>(digits));
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

std::string truncate_significant(const BigReal& x, int significant) {
  return positional(decimal_digits(x, significant, MPFR_RNDZ));
}

std::string to_rounded_string(const BigReal& x, int significant) {
  return positional(decimal_digits(x, significant, MPFR_RNDN));
}

std::string to_directed_string(const BigReal& x, int significant, bool down) {
  return positional(decimal_digits(x, significant, down ? MPFR_RNDD : MPFR_RNDU));
}

std::string to_scientific(const BigReal& x, int significant) {
  if (x == 0) return "0";
  DecimalDigits d = decimal_digits(x, significant, MPFR_RNDN);
  std::string out = d.negative ? "-" : "";
  out += d.digits.substr(0, 1);
  if (d.digits.size() > 1) {
    out += '.';
    out += d.digits.substr(1);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%+03ld", d.exp - 1);
  return out + buf;
}

long decimal_exponent(const BigReal& x) {
  if (x == 0) throw DomainError("decimal_exponent of zero");
  DecimalDigits d = decimal_digits(x, 2, MPFR_RNDZ);
  return d.exp - 1;
}

}  // namespace polyeig
