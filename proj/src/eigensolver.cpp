#include "polyeig/eigensolver.hpp"

#include "polyeig/linalg.hpp"
#include "polyeig/specfun.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace polyeig {

int MpsConfig::working_digits() const { return prec > 0 ? prec : 3 * target_digits + 10; }

void MpsConfig::validate() const {
  if (target_digits < 1) throw DomainError("MpsConfig: target_digits must be positive");
  if (working_digits() < target_digits + 20) {
    throw DomainError("MpsConfig: prec must be at least target_digits + 20");
  }
  if (basis.center < 0 || basis.corner < 0) throw DomainError("MpsConfig: negative basis size");
  if (collocation_count != 0 && collocation_count < 2 * basis.total()) {
    throw DomainError("MpsConfig: collocation_count must be at least twice the basis size");
  }
  if (max_refinements < 1) throw DomainError("MpsConfig: max_refinements must be positive");
}

BigReal EigenInterval::mean() const { return (lower + upper) / 2; }

BigReal EigenInterval::relative_gap() const { return (upper - lower) / mean(); }

BigReal trial_function(long sides, const BigReal& lambda, std::span<const BigReal> coeffs,
                       const BigReal& r, const BigReal& theta, int digits) {
  const int wp = guard_digits(digits);
  PrecisionScope scope(wp);
  const BigReal k = sqrt(lift(lambda, wp));
  const BigReal kr = k * lift(r, wp);
  const BigReal th = lift(theta, wp);
  BigReal acc = 0;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    const long order = static_cast<long>(j) * sides;
    acc += lift(coeffs[j], wp) * bessel_j(static_cast<int>(order), kr, wp) * cos(BigReal(order) * th);
  }
  return lift(acc, digits);
}

TrialFunction::TrialFunction(MpsBasis b, std::vector<BigReal> c)
    : basis(std::move(b)), coeffs(std::move(c)) {
  if (static_cast<int>(coeffs.size()) != basis.size().total()) {
    throw DomainError("TrialFunction: coefficient count does not match the basis");
  }
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const BigReal& x) { return x == 0; })) {
    throw DomainError("TrialFunction: all coefficients are zero");
  }
}

BigReal TrialFunction::value(const BigReal& x, const BigReal& y) const {
  std::vector<BigReal> row;
  basis.evaluate(x, y, row);
  BigReal acc(0, static_cast<unsigned>(basis.digits()));
  for (size_t l = 0; l < row.size(); ++l) acc += coeffs[l] * row[l];
  return acc;
}

std::vector<BigReal> collocation_heights(const PolygonFrame& frame, int count) {
  if (count < 1) throw DomainError("collocation_heights: count must be positive");
  const int wp = frame.half_edge.precision();
  PrecisionScope scope(wp);
  const BigReal pi = pi_at(wp);
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    const BigReal t = cos((BigReal(j) + BigReal(0.5)) * pi / count);
    out.push_back(frame.half_edge * (1 - t) / 2);
  }
  return out;
}

InnerFit fit_coefficients(const MpsBasis& basis, std::span<const BigReal> heights,
                          int kept_digits) {
  const int wp = basis.digits();
  const int k = basis.size().total();
  const int m = static_cast<int>(heights.size());
  if (m < k) throw DomainError("fit_coefficients: fewer collocation points than basis functions");
  PrecisionScope scope(wp);

  std::vector<BigReal> at_centre;
  basis.evaluate(BigReal(0), BigReal(0), at_centre);
  size_t pivot = 0;
  for (size_t l = 1; l < at_centre.size(); ++l) {
    if (abs(at_centre[l]) > abs(at_centre[pivot])) pivot = l;
  }
  if (at_centre[pivot] == 0) throw DomainError("fit_coefficients: basis vanishes at the centre");

  // Eliminate c_pivot through Psi(0) = 1 and fit the remaining coefficients.
  std::vector<BigReal> ratio(static_cast<size_t>(k));
  for (size_t l = 0; l < ratio.size(); ++l) ratio[l] = at_centre[l] / at_centre[pivot];
  const BigReal c_pivot_base = 1 / at_centre[pivot];

  Matrix a(m, k - 1, wp);
  std::vector<BigReal> rhs(static_cast<size_t>(m));
  std::vector<BigReal> row;
  for (int i = 0; i < m; ++i) {
    basis.evaluate(basis.frame().apothem, heights[static_cast<size_t>(i)], row);
    rhs[static_cast<size_t>(i)] = -row[pivot] * c_pivot_base;
    int col = 0;
    for (size_t l = 0; l < row.size(); ++l) {
      if (l == pivot) continue;
      a(i, col++) = row[l] - row[pivot] * ratio[l];
    }
  }

  InnerFit out;
  out.coeffs.assign(static_cast<size_t>(k), BigReal(0));
  BigReal residual_norm;
  if (k == 1) {
    residual_norm = norm2(rhs);
  } else {
    LeastSquaresSolution ls =
        least_squares(a, rhs, wp, kept_digits > 0 ? std::max(1, wp - kept_digits) : 0);
    residual_norm = ls.residual_norm;
    int col = 0;
    for (size_t l = 0; l < out.coeffs.size(); ++l) {
      if (l == pivot) continue;
      out.coeffs[l] = ls.x[static_cast<size_t>(col++)];
    }
  }
  BigReal c_pivot = c_pivot_base;
  for (size_t l = 0; l < out.coeffs.size(); ++l) {
    if (l != pivot) c_pivot -= ratio[l] * out.coeffs[l];
  }
  out.coeffs[pivot] = c_pivot;
  out.residual = residual_norm / sqrt(BigReal(m));
  return out;
}

DefectBound boundary_defect_bound(const TrialFunction& psi, int samples) {
  if (samples < 2) throw DomainError("boundary_defect: need at least two samples");
  const PolygonFrame& frame = psi.basis.frame();
  const int wp = psi.basis.digits();
  PrecisionScope scope(wp);
  const BigReal pi = pi_at(wp);

  // Parameter s in [0, 1] maps to y = half_edge (1 - cos(pi s)) / 2, which
  // crowds samples toward both ends of the half-edge.
  std::vector<double> values(static_cast<size_t>(samples));
  std::vector<BigReal> row;
  double magnitude = 0;  // largest sum |c_l phi_l|, for the rounding allowance
  for (int j = 0; j < samples; ++j) {
    const BigReal s = BigReal(j) / (samples - 1);
    const BigReal y = frame.half_edge * (1 - cos(pi * s)) / 2;
    psi.basis.evaluate(frame.apothem, y, row);
    BigReal acc = 0;
    BigReal size = 0;
    for (size_t l = 0; l < row.size(); ++l) {
      const BigReal term = psi.coeffs[l] * row[l];
      acc += term;
      size += abs(term);
    }
    values[static_cast<size_t>(j)] = std::abs(acc.convert_to<double>());
    magnitude = std::max(magnitude, size.convert_to<double>());
  }
  const double ds = 1.0 / (samples - 1);
  double slope = 0;
  double peak = 0;
  for (size_t j = 0; j + 1 < values.size(); ++j) {
    slope = std::max(slope, std::abs(values[j + 1] - values[j]) / ds);
    peak = std::max(peak, std::max(values[j], values[j + 1]));
  }
  DefectBound out;
  out.sampled = peak;
  out.lipschitz = 2 * slope * ds / 2;
  out.rounding = magnitude * std::pow(10.0, -(wp - 3));
  return out;
}

double boundary_defect(const TrialFunction& psi, int samples) {
  return boundary_defect_bound(psi, samples).total();
}

double interior_norm_sq_lower(const TrialFunction& psi) {
  const PolygonFrame& frame = psi.basis.frame();
  const int wp = psi.basis.digits();
  PrecisionScope scope(wp);
  const double apothem = frame.apothem.convert_to<double>();
  const double wedge = M_PI / static_cast<double>(frame.sides);

  auto integral = [&](auto rule) {
    auto radial = [&](double theta) {
      const double r_max = apothem / std::cos(theta);
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      return decltype(rule)::integrate(
          [&](double r) {
            const double v = psi.value(BigReal(r * c), BigReal(r * s)).convert_to<double>();
            return v * v * r;
          },
          0.0, r_max);
    };
    return 2.0 * static_cast<double>(frame.sides) * decltype(rule)::integrate(radial, 0.0, wedge);
  };
  const double q10 = integral(boost::math::quadrature::gauss<double, 10>{});
  const double q20 = integral(boost::math::quadrature::gauss<double, 20>{});
  return q20 - 2 * std::abs(q20 - q10);
}

Certificate certify_detailed(const TrialFunction& psi, int target_digits, int samples) {
  Certificate cert;
  cert.defect = boundary_defect_bound(psi, samples);
  cert.norm_sq_lower = interior_norm_sq_lower(psi);
  if (!(cert.norm_sq_lower > 0)) return cert;
  // Relative inflation covers double rounding in sup, norm and the square roots.
  cert.eta = std::sqrt(M_PI) * cert.defect.total() / std::sqrt(cert.norm_sq_lower) * (1 + 1e-12);
  if (!(cert.eta < 1)) return cert;

  const long sides = psi.basis.frame().sides;
  const int wp = psi.basis.digits();
  PrecisionScope scope(wp);
  const BigReal lambda = lift(psi.lambda(), wp);
  const BigReal e(cert.eta);
  const BigReal slack = lambda * pow(BigReal(10), -(wp - 5));

  EigenInterval& out = cert.interval;
  out.sides = sides;
  out.target_digits = target_digits;
  out.lower = lambda / (1 + e) - slack;
  out.upper = lambda / (1 - e) + slack;

  // A-priori bounds: Faber-Krahn below; the equilateral triangle above,
  // which is only used once there is more than one polygon to compare to.
  const BigReal circle = circle_constant(1, wp).lambda_circle;
  if (out.lower < circle) out.lower = circle;
  if (sides > 3) {
    const BigReal triangle = 4 * pi_at(wp) / sqrt(BigReal(3));
    if (out.upper > triangle) out.upper = triangle;
  }
  if (out.lower > out.upper) return cert;
  out.meta.basis = psi.basis.size();
  out.meta.working_digits = wp;
  cert.certified = true;
  return cert;
}

EigenInterval certify(const TrialFunction& psi, int target_digits, int samples) {
  Certificate cert = certify_detailed(psi, target_digits, samples);
  if (!cert.certified) {
    if (!(cert.norm_sq_lower > 0)) {
      throw NotCertifiedError("certify: no positive lower bound on the norm");
    }
    if (!(cert.eta < 1)) throw NotCertifiedError("certify: eta >= 1, refine the basis");
    throw NotCertifiedError("certify: enclosure misses the a-priori bounds");
  }
  return cert.interval;
}

namespace {

// Only columns dependent to within 10^-5 of the working precision count as
// rank deficient; milder ill-conditioning shows up in the rounding term of
// the defect bound instead.
constexpr int kKeptDigits = 5;

// Roughly the size that certifies `digits` at the first attempt.
BasisSize default_basis(long sides, int digits) {
  if (sides <= 4) return {std::max(4, digits / 3 + 2), 0};
  const int corner = std::max(4, (digits + 1) / 2);
  return {std::max(3, (corner + 2) / 3), corner};
}

// Centre orders jS whose Bessel function stays above 10^-(digits+10) on the
// polygon; higher ones only add cancellation. Uses the leading-term
// estimate log10 J_n(x) ~ n log10(e x / 2n) with x = k R <= 2.6.
int useful_center_terms(long sides, int digits) {
  int count = 1;
  for (long n = sides;; n += sides) {
    const double lg = static_cast<double>(n) * std::log10(M_E * 2.6 / (2.0 * static_cast<double>(n)));
    if (lg < -(digits + 10)) return count;
    ++count;
  }
}

BasisSize grow(BasisSize b, bool regular) {
  if (regular) return {b.center + std::max(2, b.center / 4), 0};
  const int corner = b.corner + std::max(2, b.corner / 4);
  return {std::max(b.center, (corner + 2) / 3), corner};
}

}  // namespace

EigenInterval solve(const PolygonSpec& spec, const MpsConfig& cfg) {
  cfg.validate();
  if (spec.convention != Convention::transcribed) {
    throw DomainError("solve: use the transcribed convention and rescale afterwards");
  }
  const auto start = std::chrono::steady_clock::now();
  const long sides = spec.sides;
  int wp = cfg.working_digits();
  const bool regular = sides <= 4;
  BasisSize size = cfg.basis.total() > 0 ? cfg.basis : default_basis(sides, cfg.target_digits);
  if (regular && size.corner > 0) size.corner = 0;
  const int center_cap = regular ? 1 << 20 : useful_center_terms(sides, cfg.target_digits);
  if (cfg.basis.total() == 0) size.center = std::min(size.center, center_cap);
  const double collocation_ratio =
      cfg.collocation_count > 0 ? static_cast<double>(cfg.collocation_count) / size.total() : 0;

  PrecisionScope outer(wp);
  BigReal centre_guess = predict(Sides(sides), SeriesTruncation{}, wp);
  BigReal width = BigReal(sides <= 4 ? 0.5 : 0.02);
  const int bits = static_cast<int>(std::ceil((cfg.target_digits + 6) * 3.33));

  SolveMeta meta;
  for (int round = 0; round < cfg.max_refinements; ++round) {
    PrecisionScope scope(wp);
    const int k = size.total();
    const int m = collocation_ratio > 0 ? static_cast<int>(std::ceil(collocation_ratio * k))
                                        : 2 * k + 4;
    RefinementStep step;
    step.basis = size;
    step.collocation_count = m;
    step.working_digits = wp;
    try {
      MpsBasis basis(sides, size, wp);
      const std::vector<BigReal> heights = collocation_heights(basis.frame(), m);
      auto objective = [&](const BigReal& lambda) {
        basis.set_lambda(lambda);
        const BigReal r = fit_coefficients(basis, heights, kKeptDigits).residual;
        return BigReal(r * r);
      };

      BigReal centre = lift(centre_guess, wp);
      BigReal w = lift(width, wp);
      BigReal best;
      bool bracketed = false;
      for (int attempt = 0; attempt < 12 && !bracketed; ++attempt) {
        BigReal lo = centre - w;
        BigReal hi = centre + w;
        if (lo <= 0) lo = centre / 2;
        boost::uintmax_t iterations = 400;
        const auto found =
            boost::math::tools::brent_find_minima(objective, lo, hi, bits, iterations);
        best = found.first;
        const BigReal edge = (hi - lo) / 100;
        bracketed = best - lo > edge && hi - best > edge;
        centre = best;
        if (!bracketed) w *= 4;
      }
      if (!bracketed) throw BracketError("solve: no interior minimum of the boundary residual");

      basis.set_lambda(best);
      InnerFit fit = fit_coefficients(basis, heights, kKeptDigits);
      step.lambda = best;
      step.residual = fit.residual.convert_to<double>();
      centre_guess = best;
      TrialFunction psi(basis, std::move(fit.coeffs));
      Certificate cert = certify_detailed(psi, cfg.target_digits, 8 * m);
      step.eta = cert.eta;
      meta.history.push_back(step);
      if (cfg.on_step) cfg.on_step(step);
      if (cert.certified) {
        width = best * std::max(10 * cert.eta, std::pow(10.0, -(cfg.target_digits + 4)));
        if (cert.interval.relative_gap() < pow(BigReal(10), -cfg.target_digits)) {
          meta.basis = size;
          meta.collocation_count = m;
          meta.working_digits = wp;
          meta.wall_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          cert.interval.meta = meta;
          return cert.interval;
        }
      } else {
        width = std::min(width, BigReal(abs(best) * 1e-3));
      }
      // Cancellation in the basis sum, not the basis size, is what limits
      // the enclosure: add digits and keep the basis.
      if (cert.defect.rounding > 0.25 * cert.defect.total()) {
        wp = wp * 3 / 2;
      } else {
        size = grow(size, regular);
        size.center = std::min(size.center, std::max(center_cap, cfg.basis.center));
      }
    } catch (const SingularSystemError&) {
      meta.history.push_back(step);
      if (cfg.on_step) cfg.on_step(step);
      wp = wp * 3 / 2;
    }
  }
  throw ConvergenceError("solve: no certified enclosure for S=" + std::to_string(sides) + " after " +
                         std::to_string(cfg.max_refinements) + " refinements");
}

}  // namespace polyeig
