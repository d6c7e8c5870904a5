#include "dwrosn/report.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace dwrosn {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *d);
    if (ec != std::errc()) throw std::runtime_error("cannot format number");
    return std::string(buf, ptr);
  }
  return std::get<std::string>(cell);
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_cell(row[c]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
    }
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << "\n";
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir, OutputFormat format) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (table.name + (format == OutputFormat::kCsv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  if (format == OutputFormat::kCsv)
    write_csv(out, table);
  else
    write_json(out, table);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  return path;
}

}  // namespace dwrosn
