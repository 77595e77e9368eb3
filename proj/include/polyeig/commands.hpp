#pragma once

// Subcommand bodies behind the command-line front end. Each returns the
// report text it would print so tests can compare output directly.

#include "polyeig/run_config.hpp"
#include "polyeig/specfun.hpp"
#include "polyeig/table_file.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace polyeig {

struct SolveOutcome {
  long sides = 0;
  bool ok = false;
  bool skipped = false;  // already in the table
  std::string message;   // error text, or a one-line summary
};

/// Solves S = cfg.s_from..cfg.s_to, running up to cfg.jobs solves in parallel
/// worker processes, and merges each certified row into `table_path` as it
/// arrives. Rows already present are kept as they are. Per-S failures are
/// returned, not thrown.
std::vector<SolveOutcome> cmd_solve(const RunConfig& cfg, const std::string& table_path,
                                    std::ostream* progress);

/// predict(S, N) truncated to `significant` digits; S = 0 means S = infinity.
std::string cmd_predict(long sides, int order, int significant = 18);

/// Four-pass fit report.
std::string cmd_fit(const EigenTable& table, const RunConfig& cfg);

struct RelationInput {
  int order = 0;
  std::string value;  // decimal string; its digit count sets d
};

/// One "C_mu= ... relerr=... v=[...]" line per input, plus a verdict when rejected.
std::string cmd_relation(const std::vector<RelationInput>& inputs, const RunConfig& cfg);

/// Sign pattern, growth fit and critical S for (order, value) pairs; writes
/// plot data to `plot_path` when it is not empty.
std::string cmd_converge(const std::vector<std::pair<int, std::string>>& coefficients,
                         const RunConfig& cfg, const std::string& plot_path);

struct ErrorLawFit {
  double amplitude = 0;  // A in (predict - lambda)/lambda ~ A / S^p
  double exponent = 0;   // p
  std::vector<std::pair<long, double>> discrepancies;
};

ErrorLawFit check_error(const EigenTable& table, const RunConfig& cfg);
std::string cmd_check_error(const EigenTable& table, const RunConfig& cfg);

}  // namespace polyeig
