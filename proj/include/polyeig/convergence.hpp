#pragma once

// Growth of the expansion coefficients: sign alternation, the model
// ln|C_mu| = a*mu + b*(1 - exp(-c*mu)), and the critical side count e^a.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyeig {

class GrowthFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (order, value) pairs with consecutive orders.
using CoefficientSeries = std::vector<std::pair<int, double>>;

/// Position in `coeffs` where the longest suffix with sign(C_mu) = (-1)^mu
/// begins. A suffix needs at least two entries to count; otherwise the
/// result is coeffs.size(). Throws DomainError on a gap in the orders.
size_t sign_pattern(const CoefficientSeries& coeffs);

struct GrowthFit {
  double a = 0, b = 0, c = 0;
  double sigma_a = 0, sigma_b = 0, sigma_c = 0;
  int mu_lo = 0, mu_hi = 0;
  std::vector<std::pair<int, double>> residuals;  // data minus model, fit window only
  int iterations = 0;

  double model(double mu) const;
};

struct GrowthFitOptions {
  int max_iterations = 200;
  double tolerance = 1e-13;  // relative parameter step that ends the iteration
};

/// Damped Gauss-Newton on ln|C_mu| over mu_lo..mu_hi with a central-difference
/// Jacobian. Starts from a = endpoint slope, b = -a*mu_lo, c = 0.1.
/// Throws DomainError for fewer than 6 points or a zero coefficient, and
/// GrowthFitError when the iteration does not settle.
GrowthFit growth_fit(const CoefficientSeries& coeffs, int mu_lo, int mu_hi,
                     const GrowthFitOptions& opts = {});

struct CriticalS {
  double point = 0;
  double lower = 0;
  double upper = 0;
};

CriticalS critical_s(const GrowthFit& fit, double k = 6);

/// e^b (e^a/S)^n / (1 - e^a/S): geometric tail of the series from order n.
/// Throws DomainError when S <= e^a, where the tail diverges.
double remainder_estimate(int n, const GrowthFit& fit, double sides);

/// Plot data: a header line, then "mu ln|C| fit residual*50 in_fit" per point.
std::string render_plot_data(const CoefficientSeries& coeffs, const GrowthFit& fit);

}  // namespace polyeig
