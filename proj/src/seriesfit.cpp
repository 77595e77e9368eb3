#include "polyeig/seriesfit.hpp"

#include "polyeig/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace polyeig {

EigenTable::EigenTable(int declared_digits) : declared_digits_(declared_digits) {
  if (declared_digits < 1) throw DomainError("EigenTable: declared digits must be positive");
}

void EigenTable::upsert(const EigenRow& row) {
  if (row.sides < 3) throw DomainError("EigenTable: S must be at least 3");
  const int wp = guard_digits(declared_digits_);
  PrecisionScope scope(wp);
  const BigReal lo = parse_real(row.lower, wp);
  const BigReal hi = parse_real(row.upper, wp);
  if (!(lo > 0) || lo > hi) {
    throw DomainError("EigenTable: S=" + std::to_string(row.sides) + " needs 0 < lower <= upper");
  }
  if ((hi - lo) / ((hi + lo) / 2) >= pow(BigReal(10), 1 - declared_digits_)) {
    throw DomainError("EigenTable: S=" + std::to_string(row.sides) +
                      " gap is too wide for the declared digits");
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), row.sides,
                             [](const EigenRow& r, long s) { return r.sides < s; });
  if (it != rows_.end() && it->sides == row.sides) {
    *it = row;
  } else {
    rows_.insert(it, row);
  }
}

const EigenRow* EigenTable::find(long sides) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), sides,
                             [](const EigenRow& r, long s) { return r.sides < s; });
  return it != rows_.end() && it->sides == sides ? &*it : nullptr;
}

void FitConfig::validate(const EigenTable& table) const {
  if (s_min < 3 || s_max < s_min) throw DomainError("FitConfig: empty fit window");
  if (max_order < 1) throw DomainError("FitConfig: max_order must be positive");
  if (prec < 2 * table.declared_digits()) {
    throw DomainError("FitConfig: prec must be at least twice the data digits");
  }
}

void install_closed_forms(FitConfig& cfg) {
  const int wp = guard_digits(cfg.prec);
  for (int mu = 1; mu <= kHighestKnownOrder; ++mu) {
    cfg.known[mu] = lift(known_coefficient(mu, wp).value, cfg.prec);
  }
}

PassSpec pass_spec(int id, int max_order) {
  PassSpec p;
  p.id = id;
  switch (id) {
    case 1:
      p.exponent = 1;
      break;
    case 2:
      p.exponent = 3;
      p.known = {1, 2, 4};
      break;
    case 3:
      p.exponent = 7;
      p.known = {1, 2, 3, 4, 5, 6};
      break;
    case 4:
      p.exponent = 9;
      p.known = {1, 2, 3, 4, 5, 6, 7, 8};
      break;
    default:
      throw DomainError("pass_spec: unknown pass " + std::to_string(id));
  }
  for (int mu = 1; mu <= max_order; ++mu) {
    if (mu >= p.exponent && std::find(p.known.begin(), p.known.end(), mu) == p.known.end()) {
      p.fitted.push_back(mu);
    }
  }
  if (p.fitted.empty()) throw DomainError("pass_spec: max_order leaves nothing to fit");
  return p;
}

LinearSystem build_system(const EigenTable& table, const PassSpec& pass, const FitConfig& cfg,
                          Bound which) {
  cfg.validate(table);
  if (pass.fitted.empty()) throw DomainError("build_system: pass has no fitted orders");
  for (int mu : pass.fitted) {
    if (mu < pass.exponent) throw DomainError("build_system: fitted order below the pass exponent");
  }
  std::vector<const EigenRow*> rows;
  for (const auto& r : table.rows()) {
    if (r.sides >= cfg.s_min && r.sides <= cfg.s_max) rows.push_back(&r);
  }
  if (rows.size() < pass.fitted.size()) {
    throw DomainError("build_system: " + std::to_string(rows.size()) + " rows for " +
                      std::to_string(pass.fitted.size()) + " unknowns");
  }
  std::vector<BigReal> known;
  for (int mu : pass.known) {
    auto it = cfg.known.find(mu);
    if (it == cfg.known.end()) {
      throw DomainError("build_system: C_" + std::to_string(mu) + " is not known");
    }
    known.push_back(lift(it->second, cfg.prec));
  }

  PrecisionScope scope(cfg.prec);
  const BigReal lc = lift(circle_constant(1, guard_digits(cfg.prec)).lambda_circle, cfg.prec);
  LinearSystem sys;
  sys.design = Matrix(static_cast<int>(rows.size()), static_cast<int>(pass.fitted.size()), cfg.prec);
  sys.orders = pass.fitted;
  for (size_t i = 0; i < rows.size(); ++i) {
    const long s = rows[i]->sides;
    const BigReal lambda =
        parse_real(which == Bound::upper ? rows[i]->upper : rows[i]->lower, cfg.prec);
    const BigReal x = 1 / BigReal(s);
    BigReal y = lambda / lc - 1;
    for (size_t j = 0; j < known.size(); ++j) y -= known[j] * pow(x, pass.known[j]);
    sys.response.push_back(y * pow(BigReal(s), pass.exponent));
    sys.sides.push_back(s);
    for (size_t j = 0; j < pass.fitted.size(); ++j) {
      sys.design(static_cast<int>(i), static_cast<int>(j)) = pow(x, pass.fitted[j] - pass.exponent);
    }
  }
  return sys;
}

std::vector<BigReal> solve_ls(const LinearSystem& system, int prec) {
  return least_squares(system.design, system.response, prec).x;
}

CoefficientEstimate make_estimate(int order, const BigReal& up, const BigReal& dn) {
  CoefficientEstimate e;
  e.order = order;
  e.value_up = up;
  e.value_dn = dn;
  e.mean = (up + dn) / 2;
  if (up == dn) {
    e.eps = BigReal(0, up.precision());
    e.digits = std::numeric_limits<double>::infinity();
  } else if (e.mean == 0) {
    e.eps = BigReal(0, up.precision());
    e.digits = -std::numeric_limits<double>::infinity();
  } else {
    e.eps = (up - dn) / e.mean;
    e.digits = -log10(abs(e.eps)).convert_to<double>();
  }
  return e;
}

std::vector<CoefficientEstimate> run_pass(const EigenTable& table, const PassSpec& pass,
                                          const FitConfig& cfg) {
  const auto up = solve_ls(build_system(table, pass, cfg, Bound::upper), cfg.prec);
  const auto dn = solve_ls(build_system(table, pass, cfg, Bound::lower), cfg.prec);
  std::vector<CoefficientEstimate> out;
  for (size_t j = 0; j < pass.fitted.size(); ++j) {
    out.push_back(make_estimate(pass.fitted[j], up[j], dn[j]));
  }
  return out;
}

std::string format_rounded(const BigReal& x, int significant) {
  if (significant < 1) throw DomainError("format_rounded: need at least one digit");
  if (x == 0) return "0";
  const std::string sci = to_scientific(x, significant);
  const auto e_pos = sci.find('e');
  const long exponent = std::stol(sci.substr(e_pos + 1));
  if (exponent <= significant - 2) return to_rounded_string(x, significant);
  return sci.substr(0, e_pos) + "×10^" + std::to_string(exponent);
}

std::string report(const CoefficientEstimate& est, double digit_cap) {
  const double d = std::min(est.digits, digit_cap);
  if (!(d > 0)) throw DomainError("report: non-positive digit agreement");
  const int significant = static_cast<int>(std::lround(d)) + 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, " {%.1f}", d);
  return format_rounded(est.mean, significant) + buf;
}

int verify_candidate(const CoefficientEstimate& est, const BigReal& analytic, int cap) {
  if (analytic == 0) throw DomainError("verify_candidate: analytic value is zero");
  if (est.mean == analytic) return cap;
  if ((est.mean < 0) != (analytic < 0)) return 0;
  // Leading decimal digits the two share, both read in the analytic value's
  // scale: 4.80822761263 vs 4.80822761287 share 9.
  const long e = decimal_exponent(analytic);
  const BigReal scale = pow(BigReal(10, analytic.precision()), -e);
  BigReal a = abs(analytic) * scale;
  BigReal m = abs(est.mean) * scale;
  int shared = 0;
  while (shared < cap && floor(a) == floor(m)) {
    ++shared;
    a *= 10;
    m *= 10;
  }
  return shared;
}

}  // namespace polyeig
