#include "polyeig/mps_basis.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>

namespace polyeig {

namespace {

mpfr_ptr raw(BigReal& x) { return x.backend().data(); }
mpfr_srcptr raw(const BigReal& x) { return x.backend().data(); }

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

// Largest wavenumber^2 the precomputed series lengths are sized for; grown on
// demand by set_lambda.
constexpr double kInitialLambdaCap = 16.0;

// 1/(m! Gamma(order + m + 1)) for m = 0..terms-1 and their log10 values.
void build_series(const BigReal& order, int terms, int wp, std::vector<BigReal>& coeffs,
                  std::vector<double>& logs) {
  PrecisionScope scope(wp);
  coeffs.clear();
  logs.clear();
  const BigReal nu = lift(order, wp);
  BigReal a = 1 / boost::multiprecision::tgamma(nu + 1);
  const double nu_d = nu.convert_to<double>();
  double la = -std::lgamma(nu_d + 1) / std::log(10.0);
  for (int m = 0; m < terms; ++m) {
    coeffs.push_back(a);
    logs.push_back(la);
    a /= BigReal(m + 1) * (nu + m + 1);
    la -= std::log10((m + 1) * (nu_d + m + 1));
  }
}

// Terms needed so that the series tail at t = t_max drops wp digits below the
// largest term.
int series_length(double order, double t_max, int wp) {
  const double lt = std::log10(std::max(t_max, 1e-300));
  double la = -std::lgamma(order + 1) / std::log(10.0);
  double peak = la;
  for (int m = 0;; ++m) {
    const double v = la + m * lt;
    peak = std::max(peak, v);
    if (v < peak - wp - 4 && m > 2) return m + 2;
    la -= std::log10((m + 1) * (order + m + 1));
  }
}

}  // namespace

PolygonFrame::PolygonFrame(long s, int digits) : sides(s) {
  if (s < 3) throw DomainError("a polygon needs at least 3 sides");
  PrecisionScope scope(digits);
  const BigReal pi = pi_at(digits);
  const BigReal half_angle = pi / s;
  circumradius = sqrt(pi / (BigReal(s) * sin(half_angle) * cos(half_angle)));
  apothem = circumradius * cos(half_angle);
  half_edge = circumradius * sin(half_angle);
  corner_order = BigReal(s) / (s - 2);
  for (long m = 0; m < s; ++m) {
    const BigReal angle = BigReal(2 * m + 1) * pi / s;
    vertex_x.push_back(circumradius * cos(angle));
    vertex_y.push_back(circumradius * sin(angle));
    BigReal inward = angle + pi;
    if (inward > pi) inward -= 2 * pi;
    bisector.push_back(inward);
  }
}

MpsBasis::MpsBasis(long sides, BasisSize size, int digits)
    : frame_(sides, digits), size_(size), digits_(digits) {
  if (size.center < 0 || size.corner < 0 || size.total() == 0) {
    throw DomainError("MpsBasis: empty basis");
  }
  if (size.corner > 0 && frame_.corners_regular()) {
    throw DomainError("MpsBasis: corner functions are analytic for S <= 4; use centre terms");
  }
  PrecisionScope scope(digits);
  lambda_ = BigReal(0);
  wavenumber_ = BigReal(0);
  scratch_.assign(24, BigReal(0));
  center_series_.resize(static_cast<size_t>(size.center));
  center_log_.resize(static_cast<size_t>(size.center));
  // Odd multiples n with n*nu an integer give corner functions that are
  // analytic and numerically inside the span of the centre functions.
  for (long n = 1; static_cast<int>(corner_multiple_.size()) < size.corner; n += 2) {
    if ((n * sides) % (sides - 2) != 0) corner_multiple_.push_back(static_cast<int>(n));
  }
  corner_series_.resize(static_cast<size_t>(size.corner));
  corner_log_.resize(static_cast<size_t>(size.corner));
  set_lambda(BigReal(kInitialLambdaCap));
}

void MpsBasis::set_lambda(const BigReal& lambda) {
  if (lambda <= 0) throw DomainError("MpsBasis: lambda must be positive");
  PrecisionScope scope(digits_);
  lambda_ = lift(lambda, digits_);
  wavenumber_ = sqrt(lambda_);

  // Series must cover x = k * diameter for every point of the closed polygon.
  const double k = wavenumber_.convert_to<double>();
  const double diameter = 2 * frame_.circumradius.convert_to<double>();
  const double t_corner = std::pow(k * diameter / 2, 2);
  const double t_center = std::pow(k * frame_.circumradius.convert_to<double>() / 2, 2);
  for (int j = 0; j < size_.center; ++j) {
    const double order = static_cast<double>(j * frame_.sides);
    const int need = series_length(order, t_center, digits_);
    if (static_cast<int>(center_series_[static_cast<size_t>(j)].size()) < need) {
      build_series(BigReal(j * frame_.sides), need + 8, digits_,
                   center_series_[static_cast<size_t>(j)], center_log_[static_cast<size_t>(j)]);
    }
  }
  for (int i = 0; i < size_.corner; ++i) {
    const BigReal order = BigReal(corner_multiple_[static_cast<size_t>(i)]) * frame_.corner_order;
    const int need = series_length(order.convert_to<double>(), t_corner, digits_);
    if (static_cast<int>(corner_series_[static_cast<size_t>(i)].size()) < need) {
      build_series(order, need + 8, digits_, corner_series_[static_cast<size_t>(i)],
                   corner_log_[static_cast<size_t>(i)]);
    }
  }
}

int MpsBasis::cutoff(const std::vector<double>& log_coeffs, double log_t) const {
  double peak = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(log_coeffs.size());
  for (int m = 0; m < n; ++m) {
    const double v = log_coeffs[static_cast<size_t>(m)] + m * log_t;
    peak = std::max(peak, v);
    if (m > 0 && v < peak - digits_ - 4) return m;
  }
  return n - 1;
}

void MpsBasis::horner(const std::vector<BigReal>& coeffs, int last, const BigReal& q,
                      BigReal& out) const {
  mpfr_set(raw(out), raw(coeffs[static_cast<size_t>(last)]), kRnd);
  for (int m = last - 1; m >= 0; --m) {
    mpfr_fma(raw(out), raw(out), raw(q), raw(coeffs[static_cast<size_t>(m)]), kRnd);
  }
}

void MpsBasis::evaluate(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const {
  const auto n = static_cast<size_t>(size_.total());
  if (out.size() != n) {
    out.assign(n, BigReal(0, static_cast<unsigned>(digits_)));
  } else {
    for (auto& v : out) mpfr_set_ui(raw(v), 0, kRnd);
  }
  if (size_.center > 0) add_center(x, y, out);
  if (size_.corner > 0) add_corners(x, y, out);
}

void MpsBasis::add_center(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const {
  BigReal& r = scratch_[0];
  BigReal& theta = scratch_[1];
  BigReal& u = scratch_[2];
  BigReal& q = scratch_[3];
  BigReal& prefactor = scratch_[4];
  BigReal& step = scratch_[5];
  BigReal& c1 = scratch_[6];
  BigReal& c_prev = scratch_[7];
  BigReal& c_cur = scratch_[8];
  BigReal& c_next = scratch_[9];
  BigReal& sum = scratch_[10];

  mpfr_hypot(raw(r), raw(x), raw(y), kRnd);
  if (mpfr_zero_p(raw(r))) {
    mpfr_set_ui(raw(out[0]), 1, kRnd);  // only J_0 survives at the centre
    return;
  }
  mpfr_atan2(raw(theta), raw(y), raw(x), kRnd);
  mpfr_mul(raw(u), raw(wavenumber_), raw(r), kRnd);
  mpfr_div_ui(raw(u), raw(u), 2, kRnd);
  mpfr_sqr(raw(q), raw(u), kRnd);
  const double log_t = std::log10(q.convert_to<double>());
  const double log_step = static_cast<double>(frame_.sides) * std::log10(u.convert_to<double>());
  mpfr_neg(raw(q), raw(q), kRnd);

  mpfr_set_ui(raw(prefactor), 1, kRnd);
  mpfr_pow_ui(raw(step), raw(u), static_cast<unsigned long>(frame_.sides), kRnd);
  mpfr_mul_ui(raw(c1), raw(theta), static_cast<unsigned long>(frame_.sides), kRnd);
  mpfr_cos(raw(c1), raw(c1), kRnd);
  mpfr_set_ui(raw(c_prev), 1, kRnd);  // placeholder for cos(-S theta) at j = 0
  mpfr_set_ui(raw(c_cur), 1, kRnd);
  double log_prefactor = 0;
  for (int j = 0; j < size_.center; ++j) {
    const auto& logs = center_log_[static_cast<size_t>(j)];
    if (log_prefactor + logs[0] < -(digits_ + 10)) break;  // remaining orders underflow
    horner(center_series_[static_cast<size_t>(j)], cutoff(logs, log_t), q, sum);
    mpfr_mul(raw(sum), raw(sum), raw(prefactor), kRnd);
    mpfr_mul(raw(sum), raw(sum), raw(c_cur), kRnd);
    mpfr_add(raw(out[static_cast<size_t>(j)]), raw(out[static_cast<size_t>(j)]), raw(sum), kRnd);

    mpfr_mul(raw(prefactor), raw(prefactor), raw(step), kRnd);
    log_prefactor += log_step;
    if (j == 0) {
      mpfr_set(raw(c_next), raw(c1), kRnd);
    } else {
      mpfr_mul(raw(c_next), raw(c1), raw(c_cur), kRnd);
      mpfr_mul_2ui(raw(c_next), raw(c_next), 1, kRnd);
      mpfr_sub(raw(c_next), raw(c_next), raw(c_prev), kRnd);
    }
    mpfr_swap(raw(c_prev), raw(c_cur));
    mpfr_swap(raw(c_cur), raw(c_next));
  }
}

void MpsBasis::add_corners(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const {
  BigReal& dx = scratch_[0];
  BigReal& dy = scratch_[1];
  BigReal& rho = scratch_[2];
  BigReal& phi = scratch_[3];
  BigReal& u = scratch_[4];
  BigReal& g = scratch_[5];
  BigReal& prefactor = scratch_[6];
  BigReal& step = scratch_[7];
  BigReal& q = scratch_[8];
  BigReal& c1 = scratch_[9];
  BigReal& two_c2 = scratch_[10];
  BigReal& c_prev = scratch_[11];
  BigReal& c_cur = scratch_[12];
  BigReal& c_next = scratch_[13];
  BigReal& sum = scratch_[14];
  BigReal& pi = scratch_[15];
  BigReal& two_pi = scratch_[16];

  mpfr_const_pi(raw(pi), kRnd);
  mpfr_mul_2ui(raw(two_pi), raw(pi), 1, kRnd);
  const double nu = frame_.corner_order.convert_to<double>();
  const auto base = static_cast<size_t>(size_.center);

  for (long m = 0; m < frame_.sides; ++m) {
    const auto vm = static_cast<size_t>(m);
    mpfr_sub(raw(dx), raw(x), raw(frame_.vertex_x[vm]), kRnd);
    mpfr_sub(raw(dy), raw(y), raw(frame_.vertex_y[vm]), kRnd);
    mpfr_hypot(raw(rho), raw(dx), raw(dy), kRnd);
    if (mpfr_zero_p(raw(rho))) continue;  // every corner function of m vanishes at m

    mpfr_atan2(raw(phi), raw(dy), raw(dx), kRnd);
    mpfr_sub(raw(phi), raw(phi), raw(frame_.bisector[vm]), kRnd);
    if (mpfr_cmp(raw(phi), raw(pi)) > 0) mpfr_sub(raw(phi), raw(phi), raw(two_pi), kRnd);
    mpfr_neg(raw(pi), raw(pi), kRnd);
    if (mpfr_cmp(raw(phi), raw(pi)) <= 0) mpfr_add(raw(phi), raw(phi), raw(two_pi), kRnd);
    mpfr_neg(raw(pi), raw(pi), kRnd);

    mpfr_mul(raw(u), raw(wavenumber_), raw(rho), kRnd);
    mpfr_div_ui(raw(u), raw(u), 2, kRnd);
    mpfr_log(raw(g), raw(u), kRnd);
    mpfr_mul(raw(prefactor), raw(g), raw(frame_.corner_order), kRnd);
    mpfr_exp(raw(prefactor), raw(prefactor), kRnd);  // u^nu
    mpfr_sqr(raw(step), raw(prefactor), kRnd);        // u^(2 nu)
    mpfr_sqr(raw(q), raw(u), kRnd);
    const double log_u = std::log10(u.convert_to<double>());
    const double log_t = 2 * log_u;
    mpfr_neg(raw(q), raw(q), kRnd);

    // cos((2i+1) psi) by the three-term recurrence in steps of 2 psi.
    mpfr_mul(raw(c1), raw(phi), raw(frame_.corner_order), kRnd);
    mpfr_cos(raw(c1), raw(c1), kRnd);
    mpfr_sqr(raw(two_c2), raw(c1), kRnd);
    mpfr_mul_2ui(raw(two_c2), raw(two_c2), 1, kRnd);
    mpfr_sub_ui(raw(two_c2), raw(two_c2), 1, kRnd);
    mpfr_mul_2ui(raw(two_c2), raw(two_c2), 1, kRnd);
    mpfr_set(raw(c_prev), raw(c1), kRnd);
    mpfr_set(raw(c_cur), raw(c1), kRnd);

    double log_prefactor = nu * log_u;
    size_t slot = 0;
    for (int n = 1; slot < corner_multiple_.size(); n += 2) {
      if (log_prefactor + corner_log_[slot][0] < -(digits_ + 10)) break;
      if (corner_multiple_[slot] == n) {
        horner(corner_series_[slot], cutoff(corner_log_[slot], log_t), q, sum);
        mpfr_mul(raw(sum), raw(sum), raw(prefactor), kRnd);
        mpfr_mul(raw(sum), raw(sum), raw(c_cur), kRnd);
        mpfr_add(raw(out[base + slot]), raw(out[base + slot]), raw(sum), kRnd);
        ++slot;
      }
      mpfr_mul(raw(prefactor), raw(prefactor), raw(step), kRnd);
      log_prefactor += 2 * nu * log_u;
      mpfr_mul(raw(c_next), raw(two_c2), raw(c_cur), kRnd);
      mpfr_sub(raw(c_next), raw(c_next), raw(c_prev), kRnd);
      mpfr_swap(raw(c_prev), raw(c_cur));
      mpfr_swap(raw(c_cur), raw(c_next));
    }
  }
}

}  // namespace polyeig
