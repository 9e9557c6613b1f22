#include "fdalloc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdalloc {

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  return c.is_number() ? format_number(c.number) : c.text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
        else quoted = false;
      } else cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else cur += c;
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << quote(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << quote(cell_text(row[i]));
    }
    out << '\n';
  }
  return out.str();
}

ResultTable parse_csv(const std::string& text, const std::string& name) {
  ResultTable t;
  t.name = name;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.eof()) break;
    auto fields = split_csv_line(line);
    if (header) {
      t.columns = fields;
      header = false;
      continue;
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (!f.empty() && end == f.c_str() + f.size() && std::isfinite(v))
        row.push_back(Cell::num(v));
      else
        row.push_back(Cell::str(f));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ResultTable to_long_format(const ResultTable& table) {
  ResultTable out;
  out.name = table.name + "_long";
  out.columns = {"scenario", "x", "series", "value"};
  std::size_t xcol = 1, mcol = 2, scol = 0;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == "x") xcol = i;
    else if (table.columns[i] == "method") mcol = i;
    else if (table.columns[i] == "scenario") scol = i;
  }
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == xcol || i == mcol || i == scol) continue;
      if (!row[i].is_number()) continue;
      out.rows.push_back({row[scol], row[xcol],
                          Cell::str(row[mcol].text + "." + table.columns[i]),
                          row[i]});
    }
  }
  return out;
}

std::vector<std::string> emit(const ResultTable& table, const std::string& out_dir,
                              const EmitOptions& options) {
  if (table.rows.empty()) throw std::invalid_argument("emit: empty result table");
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit: cannot open " + path);
    f << content;
    if (!f) throw std::runtime_error("emit: write failed for " + path);
    written.push_back(path);
  };
  if (options.wide) write(out_dir + "/" + table.name + ".csv", to_csv(table));
  if (options.long_format) {
    const ResultTable lt = to_long_format(table);
    write(out_dir + "/" + table.name + "_long.csv", to_csv(lt));
  }
  return written;
}

}  // namespace fdalloc
