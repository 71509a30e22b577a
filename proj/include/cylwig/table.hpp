#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cylwig {

using Cell = std::variant<double, std::string>;

// Table with provenance metadata, written as CSV or JSON.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_row(std::vector<Cell> r);
};

// Metadata goes into leading "# key=value" lines, then one header row.
void write_csv(const Table& t, std::ostream& os);
// {"meta": {...}, "rows": [{column: value, ...}, ...]}
void write_json(const Table& t, std::ostream& os);

// Shortest round-trip text for a double (%.17g).
std::string format_double(double v);

}  // namespace cylwig
