// polyeig: command-line front end.

#include "polyeig/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using polyeig::RunConfig;

// "9=-317.77" or "9 -317.77"
std::pair<int, std::string> parse_coeff(const std::string& text) {
  const auto sep = text.find_first_of("= \t");
  if (sep == std::string::npos) throw CLI::ValidationError("--coeff", "expected ORDER=VALUE: " + text);
  const std::string value = text.substr(text.find_first_not_of("= \t", sep));
  return {std::stoi(text.substr(0, sep)), value};
}

std::vector<std::pair<int, std::string>> gather_coeffs(const std::vector<std::string>& flags,
                                                       const std::string& file) {
  std::vector<std::pair<int, std::string>> out;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      out.push_back(parse_coeff(line.substr(b)));
    }
  }
  for (const auto& f : flags) out.push_back(parse_coeff(f));
  if (out.empty()) throw std::runtime_error("no coefficients given (use --coeff or --coeff-file)");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental Dirichlet eigenvalues of regular polygons and their 1/S expansion"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");
  std::map<std::string, std::string> overrides;
  bool allow_large = false;
  for (const auto& key : RunConfig::keys()) {
    if (key == "allow_large") {
      app.add_flag("--allow_large", allow_large, "lift the digits <= 40 and S <= 64 limits");
      continue;
    }
    app.add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "config key " + key + " (default " + RunConfig{}.get(key) + ")");
  }

  std::string table;
  auto* solve = app.add_subcommand("solve", "certify eigenvalues for S = s_from..s_to into a table file");
  solve->add_option("--table", table, "table file (created or extended)")->required();

  auto* fit = app.add_subcommand("fit", "four-pass coefficient regression");
  fit->add_option("--table", table, "table file")->required();

  std::vector<std::string> coeffs;
  std::string coeff_file;
  auto* relation = app.add_subcommand("relation", "LLL integer-relation search on coefficients");
  relation->add_option("--coeff", coeffs, "ORDER=VALUE, repeatable");
  relation->add_option("--coeff-file", coeff_file, "file of 'ORDER VALUE' lines");

  std::string plot;
  auto* converge = app.add_subcommand("converge", "sign pattern, growth fit and critical S");
  converge->add_option("--coeff", coeffs, "ORDER=VALUE, repeatable");
  converge->add_option("--coeff-file", coeff_file, "file of 'ORDER VALUE' lines");
  converge->add_option("--plot", plot, "write plot data here");

  std::string sides_text = "inf";
  int significant = 18;
  auto* predict = app.add_subcommand("predict", "truncated-series eigenvalue estimate");
  predict->add_option("--S", sides_text, "side count, or inf");
  predict->add_option("--significant", significant, "digits shown (truncated)");

  auto* check = app.add_subcommand("check-error", "discrepancy of the series against a table");
  check->add_option("--table", table, "table file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : polyeig::read_run_config(config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    if (allow_large) cfg.allow_large = true;

    if (*solve) {
      const auto outcomes = polyeig::cmd_solve(cfg, table, &std::cerr);
      int failed = 0;
      for (const auto& o : outcomes) failed += o.ok ? 0 : 1;
      std::cout << outcomes.size() - failed << " of " << outcomes.size() << " rows present in "
                << table << "\n";
      return failed == 0 ? 0 : 2;
    }
    if (*fit) {
      std::cout << polyeig::cmd_fit(polyeig::read_table_file(table).table, cfg);
    } else if (*relation) {
      std::vector<polyeig::RelationInput> inputs;
      for (const auto& [mu, v] : gather_coeffs(coeffs, coeff_file)) inputs.push_back({mu, v});
      std::cout << polyeig::cmd_relation(inputs, cfg);
    } else if (*converge) {
      std::cout << polyeig::cmd_converge(gather_coeffs(coeffs, coeff_file), cfg, plot);
    } else if (*predict) {
      const long s = sides_text == "inf" ? 0 : std::stol(sides_text);
      std::cout << polyeig::cmd_predict(s, cfg.predict_order, significant) << "...\n";
    } else if (*check) {
      std::cout << polyeig::cmd_check_error(polyeig::read_table_file(table).table, cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
