#pragma once

// Flat key=value configuration shared by every CLI subcommand. Blank lines
// and lines starting with '#' are ignored; unknown keys are errors.

#include <stdexcept>
#include <string>
#include <vector>

namespace polyeig {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // solve
  int digits = 30;
  long s_from = 5;
  long s_to = 60;
  bool allow_large = false;  // lifts the digits <= 40 and S <= 64 guardrails
  int jobs = 1;
  int max_refinements = 16;
  // fit
  long fit_s_min = 13;
  long fit_s_max = 60;
  int max_order = 24;
  int fit_prec = 200;
  double digit_cap = 50;
  // relation
  int lll_p = 0;  // 0: min(30, d - 8)
  long height_cap = 10000;
  int max_lambda_power = 2;
  // converge
  int growth_mu_lo = 10;
  int growth_mu_hi = 0;  // 0: last available order - 9
  double sigma_k = 6;
  // check-error
  long error_s_min = 5;
  long error_s_max = 40;
  // predict
  int predict_order = 8;

  /// Assigns one key from its text form; throws ConfigError on unknown keys
  /// or unparsable values.
  void set(const std::string& key, const std::string& value);
  /// Every key in declaration order.
  static const std::vector<std::string>& keys();
  std::string get(const std::string& key) const;
  /// Throws ConfigError when the desk guardrails are exceeded without
  /// allow_large, or a range is empty.
  void check_guardrails() const;
  int effective_growth_mu_hi(int last_order) const {
    return growth_mu_hi > 0 ? growth_mu_hi : last_order - 9;
  }
};

RunConfig parse_run_config(const std::string& text);
RunConfig read_run_config(const std::string& path);
std::string render_run_config(const RunConfig& cfg);

}  // namespace polyeig
