#pragma once

#include <string>
#include <vector>

namespace fdalloc {

/// One table cell: either a number (formatted to 12 significant digits on
/// emission) or verbatim text.
struct Cell {
  enum class Kind { Number, Text } kind = Kind::Text;
  double number = 0.0;
  std::string text;

  static Cell num(double v) { return Cell{Kind::Number, v, {}}; }
  static Cell str(std::string s) { return Cell{Kind::Text, 0.0, std::move(s)}; }
  bool is_number() const { return kind == Kind::Number; }
};

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);

/// RFC-4180-style serialization: header row, comma separator, '.' decimal,
/// quoting only where needed.
std::string to_csv(const ResultTable& table);

/// Inverse of to_csv for round-trip checks; cells that parse as finite
/// numbers become Number cells.
ResultTable parse_csv(const std::string& text, const std::string& name);

/// Plot-ready long format: one (scenario, x, series, value) row per numeric
/// cell, with series = "<method>.<column>". Expects the wide layout
/// (scenario, x, method, ...).
ResultTable to_long_format(const ResultTable& table);

struct EmitOptions {
  bool wide = true;
  bool long_format = true;
};

/// Writes <name>.csv and/or <name>_long.csv under out_dir; returns the paths
/// written. I/O failures raise std::runtime_error naming the file.
std::vector<std::string> emit(const ResultTable& table, const std::string& out_dir,
                              const EmitOptions& options = {});

}  // namespace fdalloc
