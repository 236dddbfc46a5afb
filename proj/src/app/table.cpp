#include "haarmoments/app/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace haarmoments::app {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
  rows.push_back(std::move(row));
}

void Table::add_column(const std::string& name, const std::vector<double>& values) {
  if (values.size() != rows.size()) throw std::invalid_argument("Table: column length mismatch");
  columns.push_back(name);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(values[i]);
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

nlohmann::json Table::to_json() const {
  return {{"columns", columns}, {"rows", rows}};
}

}  // namespace haarmoments::app
