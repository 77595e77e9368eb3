#pragma once

// Fundamental Dirichlet eigenvalue of the pi-area regular S-gon by the method
// of particular solutions, with a certified enclosure.
//
// The inner problem fixes lambda, normalizes Psi(0) = 1 and minimizes the
// discrete boundary residual over the basis coefficients. The outer problem
// minimizes that residual in lambda. The enclosure is the Fox-Henrici-Moler
// bound: if Delta Psi + lambda Psi = 0 in the domain then some eigenvalue lies in
// [lambda/(1+eta), lambda/(1-eta)] with
//   eta = sqrt(area) * sup_boundary |Psi| / ||Psi||_2.

#include "polyeig/bigreal.hpp"
#include "polyeig/geometry.hpp"
#include "polyeig/mps_basis.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace polyeig {

class NotCertifiedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RefinementStep {
  BasisSize basis;
  int collocation_count = 0;
  int working_digits = 0;
  BigReal lambda;
  double residual = 0;  // rms of Psi over the collocation points
  double eta = 0;       // 0 when the trial function could not be certified
};

struct MpsConfig {
  int target_digits = 30;
  int prec = 0;                // working digits; 0 picks 3 * target + 10
  BasisSize basis{0, 0};       // starting basis; {0, 0} picks one from S
  int collocation_count = 0;   // boundary points; 0 picks 2K + 4
  int max_refinements = 16;
  std::function<void(const RefinementStep&)> on_step;  // progress hook

  int working_digits() const;
  /// Throws DomainError when prec < target + 20 or M < 2K.
  void validate() const;
};

struct SolveMeta {
  BasisSize basis;
  int collocation_count = 0;
  int working_digits = 0;
  double wall_seconds = 0;
  std::vector<RefinementStep> history;
};

struct EigenInterval {
  long sides = 0;
  BigReal lower;
  BigReal upper;
  int target_digits = 0;
  SolveMeta meta;

  BigReal mean() const;
  BigReal relative_gap() const;  // (upper - lower) / mean
  bool contains(const BigReal& x) const { return lower <= x && x <= upper; }
};

/// Centre expansion sum_k c_k J_{kS}(sqrt(lambda) r) cos(kS theta).
BigReal trial_function(long sides, const BigReal& lambda, std::span<const BigReal> coeffs,
                       const BigReal& r, const BigReal& theta, int digits);

/// A basis at a fixed lambda together with coefficients.
struct TrialFunction {
  MpsBasis basis;
  std::vector<BigReal> coeffs;

  /// Throws DomainError if the coefficients are all zero or mis-sized.
  TrialFunction(MpsBasis b, std::vector<BigReal> c);
  BigReal value(const BigReal& x, const BigReal& y) const;
  const BigReal& lambda() const { return basis.lambda(); }
};

/// Points (apothem, y_j) at Chebyshev-spaced y_j on the half-edge from the
/// edge midpoint to vertex 0.
std::vector<BigReal> collocation_heights(const PolygonFrame& frame, int count);

struct InnerFit {
  std::vector<BigReal> coeffs;
  BigReal residual;  // rms of Psi over the collocation points, Psi(0) = 1
};

/// Least-squares coefficients at the basis' current lambda. The system counts
/// as rank deficient once fewer than `kept_digits` digits survive the
/// conditioning (0: the least_squares default).
InnerFit fit_coefficients(const MpsBasis& basis, std::span<const BigReal> heights,
                          int kept_digits = 0);

/// Pieces of the boundary sup estimate.
struct DefectBound {
  double sampled = 0;    // max |Psi| over the samples
  double lipschitz = 0;  // allowance between samples, twice the sampled slope
  double rounding = 0;   // 10^(3 - digits) * max sum |c_l phi_l|
  double total() const { return sampled + lipschitz + rounding; }
};

DefectBound boundary_defect_bound(const TrialFunction& psi, int samples);

/// Upper estimate of sup |Psi| over the boundary: the maximum over `samples`
/// points on the half-edge plus a Lipschitz allowance between them.
double boundary_defect(const TrialFunction& psi, int samples);

/// Lower bound on ||Psi||_2^2 over the whole polygon from Gauss-Legendre
/// quadrature on the fundamental triangle (order 20 minus twice the
/// order 10 / order 20 discrepancy).
double interior_norm_sq_lower(const TrialFunction& psi);

struct Certificate {
  bool certified = false;
  EigenInterval interval;  // valid only when certified
  DefectBound defect;
  double norm_sq_lower = 0;
  double eta = 0;
};

Certificate certify_detailed(const TrialFunction& psi, int target_digits, int samples);

/// Enclosure around psi.lambda(). Throws NotCertifiedError when eta >= 1.
EigenInterval certify(const TrialFunction& psi, int target_digits, int samples);

EigenInterval solve(const PolygonSpec& spec, const MpsConfig& cfg);

}  // namespace polyeig
