#include "polyeig/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace polyeig {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value '" + value + "' for key '" + key + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad value '" + value + "' for key '" + key + "'");
}

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field field(T RunConfig::*member) {
  Field f;
  f.set = [member](RunConfig& c, const std::string& key, const std::string& value) {
    if constexpr (std::is_same_v<T, bool>) {
      c.*member = parse_bool(key, value);
    } else {
      c.*member = parse_number<T>(key, value);
    }
  };
  f.get = [member](const RunConfig& c) {
    if constexpr (std::is_same_v<T, bool>) {
      return std::string(c.*member ? "true" : "false");
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(c.*member);
    } else {
      return std::to_string(c.*member);
    }
  };
  return f;
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"digits", field(&RunConfig::digits)},
      {"s_from", field(&RunConfig::s_from)},
      {"s_to", field(&RunConfig::s_to)},
      {"allow_large", field(&RunConfig::allow_large)},
      {"jobs", field(&RunConfig::jobs)},
      {"max_refinements", field(&RunConfig::max_refinements)},
      {"fit_s_min", field(&RunConfig::fit_s_min)},
      {"fit_s_max", field(&RunConfig::fit_s_max)},
      {"max_order", field(&RunConfig::max_order)},
      {"fit_prec", field(&RunConfig::fit_prec)},
      {"digit_cap", field(&RunConfig::digit_cap)},
      {"lll_p", field(&RunConfig::lll_p)},
      {"height_cap", field(&RunConfig::height_cap)},
      {"max_lambda_power", field(&RunConfig::max_lambda_power)},
      {"growth_mu_lo", field(&RunConfig::growth_mu_lo)},
      {"growth_mu_hi", field(&RunConfig::growth_mu_hi)},
      {"sigma_k", field(&RunConfig::sigma_k)},
      {"error_s_min", field(&RunConfig::error_s_min)},
      {"error_s_max", field(&RunConfig::error_s_max)},
      {"predict_order", field(&RunConfig::predict_order)},
  };
  return table;
}

const Field& lookup(const std::string& key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return f;
  }
  throw ConfigError("unknown key '" + key + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  lookup(key).set(*this, key, value);
}

std::string RunConfig::get(const std::string& key) const { return lookup(key).get(*this); }

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : fields()) out.push_back(name);
    return out;
  }();
  return names;
}

void RunConfig::check_guardrails() const {
  if (digits < 1) throw ConfigError("digits must be positive");
  if (s_from < 3 || s_to < s_from) throw ConfigError("solve range must satisfy 3 <= s_from <= s_to");
  if (jobs < 1) throw ConfigError("jobs must be positive");
  if (!allow_large && digits > 40) {
    throw ConfigError("digits > 40 needs allow_large=true (--allow_large)");
  }
  if (!allow_large && s_to > 64) throw ConfigError("S > 64 needs allow_large=true (--allow_large)");
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig read_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string render_run_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& key : RunConfig::keys()) out += key + "=" + cfg.get(key) + "\n";
  return out;
}

}  // namespace polyeig
