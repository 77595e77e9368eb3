#include "polyeig/convergence.hpp"

#include "polyeig/bigreal.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace polyeig {

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

double model_at(const Vec3& p, double mu) { return p[0] * mu + p[1] * (1 - std::exp(-p[2] * mu)); }

// Gaussian elimination with partial pivoting; false when a pivot vanishes.
bool solve3(Mat3 m, Vec3 r, Vec3& x) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int i = col + 1; i < 3; ++i) {
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    }
    if (!(std::abs(m[piv][col]) > 0)) return false;
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (int i = col + 1; i < 3; ++i) {
      const double f = m[i][col] / m[col][col];
      for (int j = col; j < 3; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return true;
}

struct Linearized {
  Mat3 jtj{};
  Vec3 jtr{};
  double ssr = 0;
  double jnorm = 0;
};

Linearized linearize(const Vec3& p, const std::vector<double>& mu, const std::vector<double>& y) {
  Linearized out;
  for (size_t i = 0; i < mu.size(); ++i) {
    Vec3 grad;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6 * std::max(std::abs(p[k]), 1e-3);
      Vec3 hi = p, lo = p;
      hi[k] += h;
      lo[k] -= h;
      grad[k] = (model_at(hi, mu[i]) - model_at(lo, mu[i])) / (2 * h);
    }
    const double r = y[i] - model_at(p, mu[i]);
    out.ssr += r * r;
    for (int j = 0; j < 3; ++j) {
      out.jtr[j] += grad[j] * r;
      out.jnorm += grad[j] * grad[j];
      for (int k = 0; k < 3; ++k) out.jtj[j][k] += grad[j] * grad[k];
    }
  }
  out.jnorm = std::sqrt(out.jnorm);
  return out;
}

double sum_sq(const Vec3& p, const std::vector<double>& mu, const std::vector<double>& y) {
  double s = 0;
  for (size_t i = 0; i < mu.size(); ++i) {
    const double r = y[i] - model_at(p, mu[i]);
    s += r * r;
  }
  return s;
}

}  // namespace

double GrowthFit::model(double mu) const { return model_at({a, b, c}, mu); }

size_t sign_pattern(const CoefficientSeries& coeffs) {
  for (size_t i = 1; i < coeffs.size(); ++i) {
    if (coeffs[i].first != coeffs[i - 1].first + 1) {
      throw DomainError("sign_pattern: orders must be consecutive");
    }
  }
  auto matches = [&](size_t i) {
    const int mu = coeffs[i].first;
    const double v = coeffs[i].second;
    return mu % 2 == 0 ? v > 0 : v < 0;
  };
  size_t start = coeffs.size();
  while (start > 0 && matches(start - 1)) --start;
  return coeffs.size() - start >= 2 ? start : coeffs.size();
}

GrowthFit growth_fit(const CoefficientSeries& coeffs, int mu_lo, int mu_hi,
                     const GrowthFitOptions& opts) {
  std::vector<double> mu, y;
  for (const auto& [order, value] : coeffs) {
    if (order < mu_lo || order > mu_hi) continue;
    if (value == 0 || !std::isfinite(value)) {
      throw DomainError("growth_fit: coefficient C_" + std::to_string(order) + " is zero");
    }
    mu.push_back(order);
    y.push_back(std::log(std::abs(value)));
  }
  if (mu.size() < 6) throw DomainError("growth_fit: need at least 6 points in the window");

  const double slope = (y.back() - y.front()) / (mu.back() - mu.front());
  Vec3 p{slope, -slope * mu.front(), 0.1};
  double damping = 1e-3;
  GrowthFit fit;
  fit.mu_lo = mu_lo;
  fit.mu_hi = mu_hi;
  bool done = false;
  int it = 0;
  for (; it < opts.max_iterations && !done; ++it) {
    const Linearized lin = linearize(p, mu, y);
    if (lin.ssr <= 1e-30 * static_cast<double>(mu.size())) {
      done = true;
      break;
    }
    // Levenberg damping on the diagonal; the weight shrinks after each
    // accepted step and grows while steps fail to reduce the residual.
    bool accepted = false;
    while (!accepted && damping < 1e16) {
      Mat3 m = lin.jtj;
      for (int k = 0; k < 3; ++k) m[k][k] += damping * std::max(lin.jtj[k][k], 1e-300);
      Vec3 step{};
      if (solve3(m, lin.jtr, step)) {
        const Vec3 trial{p[0] + step[0], p[1] + step[1], p[2] + step[2]};
        const double ssr = sum_sq(trial, mu, y);
        if (std::isfinite(ssr) && ssr <= lin.ssr) {
          double rel = 0;
          for (int k = 0; k < 3; ++k) rel = std::max(rel, std::abs(step[k]) / (std::abs(p[k]) + 1e-8));
          p = trial;
          damping = std::max(damping / 10, 1e-12);
          accepted = true;
          if (rel < opts.tolerance) done = true;
          continue;
        }
      }
      damping *= 10;
    }
    if (!accepted) {
      // No step reduces the residual: accept only if the gradient already vanishes.
      const double g = std::sqrt(lin.jtr[0] * lin.jtr[0] + lin.jtr[1] * lin.jtr[1] +
                                 lin.jtr[2] * lin.jtr[2]);
      if (g > 1e-8 * (lin.jnorm * std::sqrt(lin.ssr) + 1e-300)) {
        throw GrowthFitError("growth_fit: stalled away from a stationary point");
      }
      done = true;
    }
  }
  if (!done) throw GrowthFitError("growth_fit: no convergence within the iteration limit");

  fit.a = p[0];
  fit.b = p[1];
  fit.c = p[2];
  fit.iterations = it;
  double ssr = 0;
  for (size_t i = 0; i < mu.size(); ++i) {
    const double r = y[i] - model_at(p, mu[i]);
    fit.residuals.emplace_back(static_cast<int>(mu[i]), r);
    ssr += r * r;
  }
  const double s2 = ssr / static_cast<double>(mu.size() - 3);
  if (s2 > 0) {
    const Linearized lin = linearize(p, mu, y);
    Vec3 sig{};
    for (int k = 0; k < 3; ++k) {
      Vec3 e{}, col{};
      e[k] = 1;
      sig[k] = solve3(lin.jtj, e, col) ? std::sqrt(s2 * col[k])
                                       : std::numeric_limits<double>::infinity();
    }
    fit.sigma_a = sig[0];
    fit.sigma_b = sig[1];
    fit.sigma_c = sig[2];
  }
  return fit;
}

CriticalS critical_s(const GrowthFit& fit, double k) {
  return {std::exp(fit.a), std::exp(fit.a - k * fit.sigma_a), std::exp(fit.a + k * fit.sigma_a)};
}

double remainder_estimate(int n, const GrowthFit& fit, double sides) {
  const double ratio = std::exp(fit.a) / sides;
  if (!(ratio < 1)) throw DomainError("remainder_estimate: the series diverges for S <= e^a");
  return std::exp(fit.b) * std::pow(ratio, n) / (1 - ratio);
}

std::string render_plot_data(const CoefficientSeries& coeffs, const GrowthFit& fit) {
  std::ostringstream out;
  out << "# mu ln|C| fit residual*50 in_fit\n";
  for (const auto& [mu, value] : coeffs) {
    if (value == 0) continue;
    const double lc = std::log(std::abs(value));
    const double m = fit.model(mu);
    char line[128];
    std::snprintf(line, sizeof line, "%d %.10g %.10g %.10g %d\n", mu, lc, m, 50 * (lc - m),
                  mu >= fit.mu_lo && mu <= fit.mu_hi ? 1 : 0);
    out << line;
  }
  return out.str();
}

}  // namespace polyeig
