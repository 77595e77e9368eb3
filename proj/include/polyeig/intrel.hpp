#pragma once

// Integer relations by LLL lattice reduction.
//
// For reals u_1..u_N the lattice is spanned by the columns of the identity
// whose last row is replaced by round(u * 10^p). A short reduced vector
// corresponds to integers v with sum u_j v_j ~ 0; v is read off as the first
// column of the unimodular transform.

#include "polyeig/bigreal.hpp"
#include "polyeig/specfun.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace polyeig {

/// Column-major square integer matrix: cols[j] is the j-th basis vector.
using IntBasis = std::vector<std::vector<mpz_class>>;

struct LllResult {
  IntBasis basis;      // reduced vectors
  IntBasis transform;  // reduced = input * transform (column j of each)
};

/// Exact-integer LLL with delta = 3/4. Throws DomainError when the columns
/// are linearly dependent or the matrix is not square.
LllResult lll_reduce(const IntBasis& columns);

struct AnsatzTerm {
  std::vector<int> zeta_args;  // ascending odd integers >= 3
  int lambda_power = 0;        // power of the circle eigenvalue
  BigReal value;
  std::string label() const;   // e.g. "L^2*zeta(3)*zeta(5)"
};

/// Products of zeta at odd arguments >= 3 summing to `order`, each times
/// L^0..L^max_lambda_power. Sorted by argument list, then power. Empty for
/// order < 3.
std::vector<AnsatzTerm> ansatz_for_order(int order, int max_lambda_power, int digits);

/// Highest L power worth trying at a given order: (order - 1)/2 - 1, capped.
/// Gives 0 for order 3, 1 for orders 5-6 and 2 for orders 7-8.
int lambda_power_for_order(int order, int cap);

struct RelationProblem {
  BigReal target;
  std::vector<AnsatzTerm> terms;
  int rounding_power = 30;  // p
  int target_digits = 0;    // d, digits to which the target is known
  long height_cap = 10000;
};

struct IntegerRelation {
  std::vector<mpz_class> v;  // v[0] multiplies the target
  BigReal residual;
  BigReal relerr;
  bool accepted = false;
};

/// p defaults to min(30, d - 8) when rounding_power <= 0.
int default_rounding_power(int target_digits);

/// Throws DomainError for an empty ansatz or when `prec` < p + 20.
IntegerRelation find_relation(const RelationProblem& problem, int prec);

/// Solves v_0 C + sum v_j term_j = 0 for C. Needs an accepted relation whose
/// terms share one zeta product with L powers 0..2.
ClosedForm relation_to_coefficient(const IntegerRelation& rel, const RelationProblem& problem);

/// "C_7=-50.539 relerr=4.53 e-30 v=[2,-72,24,1]"
std::string relation_line(int order, const RelationProblem& problem, const IntegerRelation& rel);

/// Significant digits in a decimal string ("0.4496" -> 4, "-50.50" -> 4).
int significant_digits(const std::string& decimal);

}  // namespace polyeig
