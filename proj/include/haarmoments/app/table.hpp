#pragma once

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace haarmoments::app {

// Shortest text that parses back to the same double.
std::string format_double(double x);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  // appends a column; values.size() must equal the row count
  void add_column(const std::string& name, const std::vector<double>& values);

  void write_csv(std::ostream& out) const;
  // {"columns": [...], "rows": [[...], ...]}
  nlohmann::json to_json() const;
};

}  // namespace haarmoments::app
