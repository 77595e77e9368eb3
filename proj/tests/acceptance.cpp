// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail 2,7] [--only 1,3]
//
// Exit status is 0 when every criterion passes, except those named in
// --expect-fail, which must fail. A criterion listed there that passes makes
// the run fail, so the list cannot silently go stale.

#include "polyeig/commands.hpp"
#include "polyeig/convergence.hpp"
#include "polyeig/eigensolver.hpp"
#include "polyeig/seriesfit.hpp"
#include "polyeig/specfun.hpp"
#include "polyeig/table_file.hpp"

#include "support.hpp"
#include "synthetic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace polyeig;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.insert(std::stoi(item));
  return out;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const CoefficientEstimate& order(const std::vector<CoefficientEstimate>& v, int mu) {
  for (const auto& e : v)
    if (e.order == mu) return e;
  throw std::out_of_range("order " + std::to_string(mu) + " not fitted");
}

FitConfig desk_fit() {
  const RunConfig rc;
  FitConfig fc;
  fc.s_min = rc.fit_s_min;
  fc.s_max = rc.fit_s_max;
  fc.max_order = rc.max_order;
  fc.prec = rc.fit_prec;
  install_closed_forms(fc);
  return fc;
}

EigenTable desk_table() { return read_table_file(testing::data_path("eigenvalues30.txt")).table; }

// ---- criterion 1

Outcome anchors() {
  const BigReal pi = testing::mpfr_ref_pi(60);
  const std::pair<long, BigReal> cases[] = {{3, 4 * pi / sqrt(BigReal(3, 60))}, {4, 2 * pi}};
  Outcome o{true, ""};
  for (const auto& [s, exact] : cases) {
    MpsConfig cfg;
    cfg.target_digits = 30;
    const auto t0 = std::chrono::steady_clock::now();
    const EigenInterval iv = solve(PolygonSpec(s, Convention::transcribed), cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool inside = iv.lower < exact && exact < iv.upper;
    const BigReal gap = iv.relative_gap();
    const bool ok = inside && gap < BigReal("1e-30") && secs <= 300;
    o.pass = o.pass && ok;
    o.detail += "S=" + std::to_string(s) + (inside ? " contains" : " misses") + " gap=" +
                to_scientific(gap, 3) + " " + fmt("%.1fs", secs) + "; ";
  }
  return o;
}

// ---- criterion 2

Outcome prediction() {
  const std::string expected = "5.78319922243209606";
  const auto t0 = std::chrono::steady_clock::now();
  const std::string got = cmd_predict(128, 8);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {got == expected && secs < 1,
          "predict(128,8)=" + got + " expected " + expected + " " + fmt("%.3fs", secs)};
}

// ---- criterion 3

Outcome relations() {
  struct Case {
    int order;
    const char* value;
    const char* v;
    double relerr;
  };
  const Case cases[] = {
      {3, "4.80822761263837714159895264604579996267", "v=[1,-4]", 8.11e-38},
      {5, "0.44964098545032430901630041683027", "v=[1,-12,2]", 1.48e-30},
      {6, "44.98497175863112456004906966023", "v=[1,-8,-4]", 1.70e-29},
      {7, "-50.53932438813516438303806289079", "v=[2,-72,24,1]", 4.53e-30},
      {8, "200.87223780187035158705886400", "v=[1,-48,-8,-2]", 9.46e-28},
  };
  std::vector<RelationInput> in;
  for (const auto& c : cases) in.push_back({c.order, c.value});
  const auto t0 = std::chrono::steady_clock::now();
  const std::string report = cmd_relation(in, RunConfig{});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::istringstream lines(report);
  std::string line;
  Outcome o{secs < 1, ""};
  for (const auto& c : cases) {
    if (!std::getline(lines, line)) return {false, "report too short"};
    // "... relerr=8.11 e-38 v=[...]"
    const size_t at = line.find("relerr=");
    double mant = 0;
    long ex = 0;
    const bool parsed = at != std::string::npos && std::sscanf(line.c_str() + at, "relerr=%lf e%ld", &mant, &ex) == 2;
    const double relerr = mant * std::pow(10.0, static_cast<double>(ex));
    const bool v_ok = line.size() >= std::strlen(c.v) && line.compare(line.size() - std::strlen(c.v), std::string::npos, c.v) == 0;
    const bool e_ok = parsed && relerr > c.relerr / 10 && relerr < c.relerr * 10;
    o.pass = o.pass && v_ok && e_ok;
    o.detail += "C_" + std::to_string(c.order) + (v_ok ? " v ok" : " v wrong") + (e_ok ? "" : " relerr off") + "; ";
  }
  o.detail += fmt("%.3fs", secs);
  return o;
}

// ---- criterion 4

struct Recovery {
  double near_zero = 0;  // max |C_1|, |C_2|, |C_4| from pass 1
  int c3 = 0, c5 = 0, c6 = 0, c7 = 0, c8 = 0;
  bool meets() const { return near_zero < 1e-15 && c3 >= 15 && c5 >= 10 && c6 >= 10 && c7 >= 6 && c8 >= 6; }
  std::string text() const {
    return "max|C1,C2,C4|=" + fmt("%.2e", near_zero) + " C3:" + std::to_string(c3) + " C5:" +
           std::to_string(c5) + " C6:" + std::to_string(c6) + " C7:" + std::to_string(c7) +
           " C8:" + std::to_string(c8);
  }
};

Recovery recover(const EigenTable& t) {
  const FitConfig fc = desk_fit();
  const auto p1 = run_pass(t, pass_spec(1, fc.max_order), fc);
  const auto p2 = run_pass(t, pass_spec(2, fc.max_order), fc);
  const auto p3 = run_pass(t, pass_spec(3, fc.max_order), fc);
  Recovery r;
  for (int mu : {1, 2, 4}) r.near_zero = std::max(r.near_zero, abs(order(p1, mu).mean).convert_to<double>());
  r.c3 = verify_candidate(order(p1, 3), fc.known.at(3));
  r.c5 = verify_candidate(order(p2, 5), fc.known.at(5));
  r.c6 = verify_candidate(order(p2, 6), fc.known.at(6));
  r.c7 = verify_candidate(order(p3, 7), fc.known.at(7));
  r.c8 = verify_candidate(order(p3, 8), fc.known.at(8));
  return r;
}

Outcome pipeline() {
  const auto synth = testing::synthetic_table(
      [](long s) { return testing::perturbed_prediction(s, -18.38, 7.86, 80); }, 13, 60, 30);
  const Recovery cal = recover(synth);
  const Recovery real = recover(desk_table());
  // The synthetic run sets floors; the computed table must reach both those
  // and the fixed bounds.
  const bool floors = real.c3 >= cal.c3 && real.c5 >= cal.c5 && real.c6 >= cal.c6 && real.c7 >= cal.c7 &&
                      real.c8 >= cal.c8;
  std::string why;
  if (!floors) why += " below synthetic floors;";
  if (real.near_zero >= 1e-15) why += " near-zero bound 1e-15 missed;";
  if (!real.meets() && real.near_zero < 1e-15) why += " digit bounds missed;";
  return {floors && real.meets(), "synthetic " + cal.text() + " | computed " + real.text() + (why.empty() ? "" : " |" + why)};
}

// ---- criterion 5

Outcome alternation() {
  const FitConfig fc = desk_fit();
  const auto p4 = run_pass(desk_table(), pass_spec(4, fc.max_order), fc);
  int last = 0;
  for (const auto& e : p4)
    if (e.digits > 1) last = e.order;
  bool ok = last > 9;
  int first_bad = 0;
  for (const auto& e : p4) {
    if (e.order > last) break;
    const bool negative = e.mean < 0;
    if (negative != (e.order % 2 == 1)) {
      ok = false;
      if (!first_bad) first_bad = e.order;
    }
  }
  return {ok, "mu=9.." + std::to_string(last) + (first_bad ? " breaks at " + std::to_string(first_bad) : " alternating")};
}

// ---- criterion 6

Outcome growth() {
  CoefficientSeries c;
  std::ifstream in(testing::data_path("growth_coefficients.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int mu;
    std::string v;
    ls >> mu >> v;
    c.emplace_back(mu, std::stod(v));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const GrowthFit f = growth_fit(c, 10, 29);
  const CriticalS s = critical_s(f, 6);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = f.a >= 2.135 && f.a <= 2.235 && s.point >= 8.4 && s.point <= 9.4 && s.lower <= 9.25 &&
                  s.upper >= 8.53 && secs < 1;
  return {ok, "a=" + fmt("%.4f", f.a) + " S_cr=" + fmt("%.2f", s.point) + " [" + fmt("%.2f", s.lower) + ", " +
                  fmt("%.2f", s.upper) + "] " + fmt("%.3fs", secs)};
}

// ---- criterion 7

Outcome error_law() {
  RunConfig rc;
  rc.error_s_min = 5;
  rc.error_s_max = 40;
  const ErrorLawFit e = check_error(desk_table(), rc);
  const bool ok = std::abs(e.exponent - 7.86) <= 0.4 && e.amplitude < 0 && e.amplitude <= -18.38 / 2 &&
                  e.amplitude >= -18.38 * 2;
  return {ok, "fit " + fmt("%+.2f", e.amplitude) + "/S^" + fmt("%.2f", e.exponent) + ", wanted -18.38/S^7.86"};
}

// ---- criterion 8

Outcome properties() {
  const std::string cmd = std::string(POLYEIG_PROPERTY_TESTS) + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return {rc == 0, rc == 0 ? "property suites pass" : "property suites failed (status " + std::to_string(rc) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail, only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expect_fail = parse_list(argv[++i]);
    } else if (a == "--only" && i + 1 < argc) {
      only = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--expect-fail N,M] [--only N,M]\n";
      return 2;
    }
  }

  const std::vector<std::function<Outcome()>> criteria{anchors, prediction, relations, pipeline,
                                                       alternation, growth, error_law, properties};
  int unexpected = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool expected_fail = expect_fail.count(n) > 0;
    std::cout << "Criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ("
              << fmt("%.1f", secs) << "s)" << (expected_fail ? "  [known failure]" : "") << std::endl;
    if (o.pass == expected_fail) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
