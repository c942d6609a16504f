#include "coexfair/table.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace coexfair {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

std::string csv_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&cell)) return *b ? "1" : "0";
  return std::get<std::string>(cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return *d;
  if (const long long* i = std::get_if<long long>(&cell)) return *i;
  if (const bool* b = std::get_if<bool>(&cell)) return *b;
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const OutputTable& table) {
  for (const auto& [k, v] : table.meta) out << "# " << k << " = " << v << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << csv_cell(row[c]) << (c + 1 < row.size() ? "," : "");
    out << "\n";
  }
}

void write_json(std::ostream& out, const OutputTable& table) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.meta) doc["meta"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
      obj[table.columns[c]] = json_cell(row[c]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace coexfair
