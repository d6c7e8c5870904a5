#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dwrosn {

enum class OutputFormat { kCsv, kJson };

using Cell = std::variant<std::int64_t, double, std::string>;

// A named result table, written as <name>.csv (header row first) or
// <name>.json (array of row objects).
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws std::invalid_argument on width mismatch
};

// Shortest round-trip text for doubles, so output is byte-stable.
std::string format_cell(const Cell& cell);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, OutputFormat format);

}  // namespace dwrosn
