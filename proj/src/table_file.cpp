#include "polyeig/table_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace polyeig {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

EigenTableFile parse_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int digits = 0;
  bool have_convention = false;
  Convention convention = Convention::transcribed;
  std::vector<EigenRow> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw TableFormatError(where + "header without '='");
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key == "digits") {
        try {
          digits = std::stoi(value);
        } catch (const std::exception&) {
          throw TableFormatError(where + "bad digits value '" + value + "'");
        }
      } else if (key == "convention") {
        try {
          convention = parse_convention(value);
        } catch (const DomainError& e) {
          throw TableFormatError(where + e.what());
        }
        have_convention = true;
      } else {
        throw TableFormatError(where + "unknown header '" + key + "'");
      }
      continue;
    }
    std::istringstream fields(line);
    EigenRow row;
    std::string extra;
    if (!(fields >> row.sides >> row.lower >> row.upper) || (fields >> extra)) {
      throw TableFormatError(where + "expected 'S lower upper'");
    }
    if (!rows.empty() && rows.back().sides >= row.sides) {
      throw TableFormatError(where + "rows must be sorted by S without repeats");
    }
    rows.push_back(row);
  }
  if (digits <= 0) throw TableFormatError("missing '# digits=<D>' header");
  if (!have_convention) throw TableFormatError("missing '# convention=...' header");
  EigenTableFile out{EigenTable(digits), convention};
  for (const auto& r : rows) {
    try {
      out.table.upsert(r);
    } catch (const DomainError& e) {
      throw TableFormatError(e.what());
    }
  }
  return out;
}

std::string render_table(const EigenTableFile& file) {
  std::ostringstream out;
  out << "# digits=" << file.table.declared_digits() << "\n";
  out << "# convention=" << to_string(file.convention) << "\n";
  for (const auto& r : file.table.rows()) out << r.sides << ' ' << r.lower << ' ' << r.upper << "\n";
  return out.str();
}

EigenTableFile read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableFormatError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

void write_table_file(const std::string& path, const EigenTableFile& file) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw TableFormatError("cannot write " + tmp);
    out << render_table(file);
    if (!out) throw TableFormatError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw TableFormatError("cannot rename onto " + path);
}

EigenRow to_row(const EigenInterval& interval, int digits) {
  EigenRow row;
  row.sides = interval.sides;
  row.lower = to_directed_string(interval.lower, digits + 10, true);
  row.upper = to_directed_string(interval.upper, digits + 10, false);
  return row;
}

}  // namespace polyeig
