#pragma once

// Plain-text eigenvalue table:
//
//   # digits=30
//   # convention=transcribed
//   5 6.0221379320426338782980087100542421636 6.0221379320426338782980087100542437570
//
// Data lines are "S lower upper". Decimal strings are stored verbatim, so a
// parse/render round trip is exact.

#include "polyeig/eigensolver.hpp"
#include "polyeig/geometry.hpp"
#include "polyeig/seriesfit.hpp"

#include <string>

namespace polyeig {

class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenTableFile {
  EigenTable table;
  Convention convention = Convention::transcribed;
  bool operator==(const EigenTableFile&) const = default;
};

EigenTableFile parse_table(const std::string& text);
std::string render_table(const EigenTableFile& file);

EigenTableFile read_table_file(const std::string& path);
/// Writes through a temporary file and rename.
void write_table_file(const std::string& path, const EigenTableFile& file);

/// Row for a certified interval: lower rounded down and upper rounded up to
/// digits + 10 significant digits.
EigenRow to_row(const EigenInterval& interval, int digits);

}  // namespace polyeig
