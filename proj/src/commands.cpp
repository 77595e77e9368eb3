#include "polyeig/commands.hpp"

#include "polyeig/convergence.hpp"
#include "polyeig/eigensolver.hpp"
#include "polyeig/intrel.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <cstring>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

namespace polyeig {

namespace {

// Runs one solve and renders the result as a single line for the parent.
std::string solve_line(long sides, const RunConfig& cfg) {
  try {
    MpsConfig mc;
    mc.target_digits = cfg.digits;
    mc.max_refinements = cfg.max_refinements;
    const EigenInterval iv = solve(PolygonSpec(sides, Convention::transcribed), mc);
    const EigenRow row = to_row(iv, cfg.digits);
    std::ostringstream out;
    out << "OK " << row.lower << ' ' << row.upper << " basis=" << iv.meta.basis.center << '+'
        << iv.meta.basis.corner << " M=" << iv.meta.collocation_count
        << " prec=" << iv.meta.working_digits << " gap=" << to_scientific(iv.relative_gap(), 3)
        << " time=" << iv.meta.wall_seconds << "s";
    return out.str();
  } catch (const std::exception& e) {
    return std::string("ERR ") + e.what();
  }
}

void write_all(int fd, const std::string& s) {
  size_t done = 0;
  while (done < s.size()) {
    const ssize_t n = ::write(fd, s.data() + done, s.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return;
    done += static_cast<size_t>(n);
  }
}

std::string read_all(int fd) {
  std::string out;
  char buf[4096];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    out.append(buf, static_cast<size_t>(n));
  }
  return out;
}

}  // namespace

std::vector<SolveOutcome> cmd_solve(const RunConfig& cfg, const std::string& table_path,
                                    std::ostream* progress) {
  cfg.check_guardrails();
  EigenTableFile file{EigenTable(cfg.digits), Convention::transcribed};
  if (std::filesystem::exists(table_path)) {
    file = read_table_file(table_path);
    if (file.table.declared_digits() != cfg.digits) {
      throw ConfigError(table_path + " holds " + std::to_string(file.table.declared_digits()) +
                        "-digit data, not " + std::to_string(cfg.digits));
    }
    if (file.convention != Convention::transcribed) {
      throw ConfigError(table_path + " is not a transcribed-polygon table");
    }
  }

  std::vector<SolveOutcome> outcomes;
  std::vector<long> pending;
  for (long s = cfg.s_from; s <= cfg.s_to; ++s) {
    if (file.table.find(s)) {
      outcomes.push_back({s, true, true, "already present"});
    } else {
      pending.push_back(s);
    }
  }

  // Boost's MPFR default precision is process-wide, so parallel solves run in
  // separate processes rather than threads.
  struct Job {
    long sides;
    int fd;
  };
  std::map<pid_t, Job> running;
  size_t next = 0;
  while (next < pending.size() || !running.empty()) {
    while (next < pending.size() && static_cast<int>(running.size()) < cfg.jobs) {
      const long s = pending[next++];
      int fds[2];
      if (::pipe(fds) != 0) throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
      const pid_t pid = ::fork();
      if (pid < 0) throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
      if (pid == 0) {
        ::close(fds[0]);
        write_all(fds[1], solve_line(s, cfg));
        ::close(fds[1]);
        ::_exit(0);
      }
      ::close(fds[1]);
      running[pid] = {s, fds[0]};
    }
    int status = 0;
    const pid_t done = ::waitpid(-1, &status, 0);
    if (done < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error(std::string("waitpid: ") + std::strerror(errno));
    }
    auto it = running.find(done);
    if (it == running.end()) continue;
    const Job job = it->second;
    running.erase(it);
    const std::string line = read_all(job.fd);
    ::close(job.fd);

    SolveOutcome out{job.sides, false, false, ""};
    if (line.rfind("OK ", 0) == 0) {
      std::istringstream in(line.substr(3));
      EigenRow row;
      row.sides = job.sides;
      in >> row.lower >> row.upper;
      std::getline(in, out.message);
      if (!out.message.empty() && out.message.front() == ' ') out.message.erase(0, 1);
      try {
        file.table.upsert(row);
        write_table_file(table_path, file);
        out.ok = true;
      } catch (const std::exception& e) {
        out.message = e.what();
      }
    } else if (line.rfind("ERR ", 0) == 0) {
      out.message = line.substr(4);
    } else {
      out.message = "worker exited without a result (status " + std::to_string(status) + ")";
    }
    if (progress) {
      *progress << "S=" << out.sides << (out.ok ? " ok " : " FAILED ") << out.message << std::endl;
    }
    outcomes.push_back(out);
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const SolveOutcome& a, const SolveOutcome& b) { return a.sides < b.sides; });
  return outcomes;
}

std::string cmd_predict(long sides, int order, int significant) {
  if (order < 0 || order > kHighestKnownOrder) {
    throw DomainError("predict: order must be in 0..8 without extra coefficients");
  }
  const Sides s = sides == 0 ? Sides::infinite() : Sides(sides);
  SeriesTruncation trunc;
  trunc.order = order;
  return truncate_significant(predict(s, trunc, significant + 20), significant);
}


namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string digits_text(double d) { return std::isinf(d) ? std::string("inf") : fmt("%.1f", d); }

FitConfig fit_config(const RunConfig& cfg) {
  FitConfig fc;
  fc.s_min = cfg.fit_s_min;
  fc.s_max = cfg.fit_s_max;
  fc.max_order = cfg.max_order;
  fc.prec = cfg.fit_prec;
  fc.digit_cap = cfg.digit_cap;
  install_closed_forms(fc);
  return fc;
}

const CoefficientEstimate* find_order(const std::vector<CoefficientEstimate>& ests, int mu) {
  for (const auto& e : ests) {
    if (e.order == mu) return &e;
  }
  return nullptr;
}

std::string estimate_line(const CoefficientEstimate& e, double cap) {
  std::string out = "C_" + std::to_string(e.order) + " ";
  if (e.reportable()) return out + report(e, cap);
  return out + (e.mean == 0 ? std::string("0") : to_scientific(e.mean, 3)) + " {" +
         digits_text(e.digits) + "} not reportable";
}

}  // namespace

std::string cmd_fit(const EigenTable& table, const RunConfig& cfg) {
  const FitConfig fc = fit_config(cfg);
  fc.validate(table);
  const int cap = static_cast<int>(cfg.digit_cap);
  std::ostringstream out;
  out << "fit window S=" << fc.s_min << ".." << fc.s_max << ", orders through " << fc.max_order
      << ", " << fc.prec << " digits\n";

  const char* titles[] = {"", "Pass 1: Y = S [Lambda/L - 1]", "Pass 2: Y = S^3 [Lambda/L - 1]",
                          "Pass 3: Y = S^7 [Lambda/L - 1 - C_3/S^3 - C_5/S^5 - C_6/S^6]",
                          "Pass 4: Y = S^9 [Lambda/L - 1 - C_3/S^3 - C_5/S^5 - ... - C_8/S^8]"};
  for (int id = 1; id <= 4; ++id) {
    const PassSpec pass = pass_spec(id, fc.max_order);
    const auto ests = run_pass(table, pass, fc);
    out << "\n" << titles[id] << "\n";
    if (id == 1) {
      const CoefficientEstimate* c3 = find_order(ests, 3);
      for (const auto& e : ests) {
        out << "  C_" << e.order << " = " << (e.mean == 0 ? std::string("0") : to_scientific(e.mean, 6))
            << " {" << digits_text(e.digits) << "}";
        if (e.order <= kHighestKnownOrder && fc.known.at(e.order) == 0 && c3 && c3->mean != 0) {
          const BigReal ratio = abs(e.mean / c3->mean);
          out << "  <- near zero, |C_" << e.order << "/C_3| = "
              << (ratio == 0 ? std::string("0") : to_scientific(ratio, 2));
        }
        out << "\n";
      }
      continue;
    }
    for (const auto& e : ests) {
      out << "  " << estimate_line(e, fc.digit_cap);
      if (e.order <= kHighestKnownOrder && fc.known.at(e.order) != 0) {
        out << "  vs " << known_coefficient(e.order, 30).closed_form.to_string() << ": "
            << verify_candidate(e, fc.known.at(e.order), cap) << " digits";
      }
      out << "\n";
      // Passes 2 and 3 exist to pin down the low orders; their tails repeat in pass 4.
      if ((id == 2 && e.order >= 6) || (id == 3 && e.order >= 8)) break;
    }
  }
  return out.str();
}

std::string cmd_relation(const std::vector<RelationInput>& inputs, const RunConfig& cfg) {
  std::ostringstream out;
  for (const auto& in : inputs) {
    const int d = significant_digits(in.value);
    const int p = cfg.lll_p > 0 ? cfg.lll_p : default_rounding_power(d);
    if (d <= p + 6 || p < 1) {
      out << "C_" << in.order << ": " << d << " digits is too few for p=" << p << "; rejected\n";
      continue;
    }
    const int prec = std::max(100, p + 40);
    RelationProblem problem;
    problem.target = parse_real(in.value, prec);
    problem.terms = ansatz_for_order(in.order, lambda_power_for_order(in.order, cfg.max_lambda_power), prec);
    problem.rounding_power = p;
    problem.target_digits = d;
    problem.height_cap = cfg.height_cap;
    if (problem.terms.empty()) {
      out << "C_" << in.order << ": no zeta products of this order; rejected\n";
      continue;
    }
    const IntegerRelation rel = find_relation(problem, prec);
    out << relation_line(in.order, problem, rel) << "\n";
    if (!rel.accepted) {
      std::string terms;
      for (const auto& t : problem.terms) terms += (terms.empty() ? "" : ", ") + t.label();
      out << "  rejected: no unique relation over {" << terms << "} at " << d << " digits\n";
    }
  }
  return out.str();
}

std::string cmd_converge(const std::vector<std::pair<int, std::string>>& coefficients,
                         const RunConfig& cfg, const std::string& plot_path) {
  if (coefficients.empty()) throw DomainError("converge: no coefficients given");
  CoefficientSeries series;
  for (const auto& [mu, text] : coefficients) {
    series.emplace_back(mu, parse_real(text, 40).convert_to<double>());
  }
  std::sort(series.begin(), series.end());
  const int last = series.back().first;
  const int lo = cfg.growth_mu_lo;
  const int hi = cfg.effective_growth_mu_hi(last);
  if (hi > last - 8) {
    throw DomainError("converge: the fit window must end at least 8 orders before C_" +
                      std::to_string(last));
  }

  std::ostringstream out;
  const size_t start = sign_pattern(series);
  if (start < series.size()) {
    out << "sign(C_mu) = (-1)^mu for mu = " << series[start].first << ".." << last << "\n";
  } else {
    out << "no alternating tail\n";
  }
  const GrowthFit fit = growth_fit(series, lo, hi);
  out << "ln|C_mu| = a mu + b (1 - exp(-c mu)) over mu = " << lo << ".." << hi << "\n";
  out << "  a = " << fmt("%.4f", fit.a) << " +- " << fmt("%.4f", fit.sigma_a) << "\n";
  out << "  b = " << fmt("%.3f", fit.b) << " +- " << fmt("%.3f", fit.sigma_b) << "\n";
  out << "  c = " << fmt("%.5f", fit.c) << " +- " << fmt("%.5f", fit.sigma_c) << "\n";
  const CriticalS cs = critical_s(fit, cfg.sigma_k);
  out << "S_cr = e^a = " << fmt("%.2f", cs.point) << ", " << fmt("%g", cfg.sigma_k)
      << "-sigma interval " << fmt("%.2f", cs.lower) << " to " << fmt("%.2f", cs.upper) << "\n";
  const double s = static_cast<double>(cfg.fit_s_min);
  if (s > cs.point) {
    out << "tail beyond C_8 at S=" << cfg.fit_s_min << ": "
        << fmt("%.3g", remainder_estimate(kHighestKnownOrder + 1, fit, s)) << "\n";
  } else {
    out << "S=" << cfg.fit_s_min << " is below S_cr; the series diverges there\n";
  }
  if (!plot_path.empty()) {
    std::ofstream f(plot_path);
    if (!f) throw std::runtime_error("cannot write " + plot_path);
    f << render_plot_data(series, fit);
    out << "plot data written to " << plot_path << "\n";
  }
  return out.str();
}

ErrorLawFit check_error(const EigenTable& table, const RunConfig& cfg) {
  const int digits = table.declared_digits() + 10;
  SeriesTruncation trunc;
  trunc.order = cfg.predict_order;
  ErrorLawFit fit;
  for (const auto& row : table.rows()) {
    if (row.sides < std::max<long>(cfg.error_s_min, 5) || row.sides > cfg.error_s_max) continue;
    PrecisionScope scope(digits);
    const BigReal lambda = (parse_real(row.lower, digits) + parse_real(row.upper, digits)) / 2;
    const BigReal pred = predict(Sides(row.sides), trunc, digits);
    fit.discrepancies.emplace_back(row.sides, BigReal((pred - lambda) / lambda).convert_to<double>());
  }
  if (fit.discrepancies.size() < 2) throw DomainError("check_error: need at least two rows in range");
  // log|D| = log|A| - p log S by ordinary least squares.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, sum = 0;
  const double n = static_cast<double>(fit.discrepancies.size());
  for (const auto& [sides, d] : fit.discrepancies) {
    if (d == 0) throw DomainError("check_error: zero discrepancy at S=" + std::to_string(sides));
    const double x = std::log(static_cast<double>(sides));
    const double y = std::log(std::abs(d));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    sum += d;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  fit.exponent = -slope;
  fit.amplitude = (sum < 0 ? -1.0 : 1.0) * std::exp(intercept);
  return fit;
}

std::string cmd_check_error(const EigenTable& table, const RunConfig& cfg) {
  const ErrorLawFit fit = check_error(table, cfg);
  std::ostringstream out;
  out << "S  (predict[" << cfg.predict_order << "] - lambda)/lambda\n";
  int negative = 0;
  for (const auto& [sides, d] : fit.discrepancies) {
    out << sides << "  " << fmt("%+.3e", d) << "\n";
    if (d < 0) ++negative;
  }
  out << "fit: " << fmt("%.2f", fit.amplitude) << " / S^" << fmt("%.2f", fit.exponent) << "\n";
  out << negative << " of " << fit.discrepancies.size() << " discrepancies negative\n";
  return out.str();
}

}  // namespace polyeig
