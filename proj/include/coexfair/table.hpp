#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace coexfair {

/// One output cell: numbers are written with 9 significant digits in CSV and
/// as native numbers in JSON; booleans become 0/1 in CSV.
using Cell = std::variant<double, long long, bool, std::string>;

struct OutputTable {
  std::vector<std::pair<std::string, std::string>> meta;  // echoed as # key = value
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double value);  // %.9g

void write_csv(std::ostream& out, const OutputTable& table);
void write_json(std::ostream& out, const OutputTable& table);

}  // namespace coexfair
