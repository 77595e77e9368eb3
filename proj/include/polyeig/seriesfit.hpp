#pragma once

// Coefficient extraction from tabulated eigenvalue bounds.
//
// With X = 1/S and lambda_c the circle eigenvalue, each pass fits
//   Y = S^e [ Lambda(S)/lambda_c - 1 - sum_{mu in known} C_mu / S^mu ]
//     = sum_{mu in fitted} C_mu X^(mu - e)
// separately to the upper and lower bounds. The spread between the two fits
// is the digit-agreement diagnostic d_mu.

#include "polyeig/bigreal.hpp"
#include "polyeig/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyeig {

struct EigenRow {
  long sides = 0;
  std::string lower;  // decimal strings exactly as stored
  std::string upper;
  bool operator==(const EigenRow&) const = default;
};

class EigenTable {
 public:
  explicit EigenTable(int declared_digits = 30);

  int declared_digits() const { return declared_digits_; }
  const std::vector<EigenRow>& rows() const { return rows_; }

  /// Inserts or replaces the row for row.sides, keeping rows sorted. Throws
  /// DomainError on malformed numbers, lower > upper, or a relative gap of
  /// 10^(1 - declared digits) or more.
  void upsert(const EigenRow& row);
  const EigenRow* find(long sides) const;

  bool operator==(const EigenTable&) const = default;

 private:
  int declared_digits_;
  std::vector<EigenRow> rows_;
};

struct FitConfig {
  long s_min = 13;
  long s_max = 60;
  int max_order = 24;
  int prec = 200;
  double digit_cap = 50;
  std::map<int, BigReal> known;  // exact values promoted between passes

  /// Throws DomainError when prec < 2 x data digits or the window is empty.
  void validate(const EigenTable& table) const;
};

/// Fills cfg.known with the closed forms of C_1..C_8.
void install_closed_forms(FitConfig& cfg);

struct PassSpec {
  int id = 1;
  int exponent = 1;
  std::vector<int> known;   // subtracted from Y
  std::vector<int> fitted;  // orders solved for, ascending
};

/// Pass 1 fits everything, pass 2 drops the vanishing orders, pass 3
/// subtracts C_3, C_5, C_6 and pass 4 subtracts C_3, C_5..C_8.
PassSpec pass_spec(int id, int max_order);

enum class Bound { lower, upper };

struct LinearSystem {
  Matrix design;
  std::vector<BigReal> response;
  std::vector<long> sides;
  std::vector<int> orders;  // order of each design column
};

LinearSystem build_system(const EigenTable& table, const PassSpec& pass, const FitConfig& cfg,
                          Bound which);

std::vector<BigReal> solve_ls(const LinearSystem& system, int prec);

struct CoefficientEstimate {
  int order = 0;
  BigReal value_up;
  BigReal value_dn;
  BigReal mean;
  BigReal eps;
  double digits = 0;  // +inf when the fits agree exactly
  bool reportable() const { return digits > 1; }
};

CoefficientEstimate make_estimate(int order, const BigReal& up, const BigReal& dn);

std::vector<CoefficientEstimate> run_pass(const EigenTable& table, const PassSpec& pass,
                                          const FitConfig& cfg);

/// "C {d}" with the mean rounded to round(d)+1 significant digits, d shown to
/// one decimal and capped at digit_cap, e.g. "1.262×10^16 {3.4}".
std::string report(const CoefficientEstimate& est, double digit_cap = 50);

/// Number of leading decimal digits est.mean shares with `analytic` (cap when
/// they are equal, 0 on a sign mismatch).
int verify_candidate(const CoefficientEstimate& est, const BigReal& analytic, int cap = 50);

/// Rounded rendering of x with `significant` digits: positional when at
/// least one fractional digit is shown, otherwise "m×10^e".
std::string format_rounded(const BigReal& x, int significant);

}  // namespace polyeig
