#include "cylwig/table.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "cylwig/error.hpp"

namespace cylwig {

void Table::add_row(std::vector<Cell> r) {
  if (r.size() != columns.size()) throw InvalidArgument("table row width does not match the header");
  rows.push_back(std::move(r));
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0 as well
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      if (const double* d = std::get_if<double>(&r[i])) os << format_double(*d);
      else os << csv_field(std::get<std::string>(r[i]));
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = meta;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (const double* d = std::get_if<double>(&r[i])) o[t.columns[i]] = *d == 0.0 ? 0.0 : *d;
      else o[t.columns[i]] = std::get<std::string>(r[i]);
    }
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  os << j.dump(1) << '\n';
}

}  // namespace cylwig
