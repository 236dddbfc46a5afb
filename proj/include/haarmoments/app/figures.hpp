#pragma once

#include "haarmoments/app/commands.hpp"
#include "haarmoments/app/table.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace haarmoments::app {

const std::vector<std::string>& figure_names();

struct FigureResult {
  Table table;
  nlohmann::json settings;  // resolved parameters, for the provenance record
};

// Builds the named figure's data. Throws UsageError for unknown names or
// settings the figure cannot use.
FigureResult make_figure(const RunConfig& cfg);

// Writes the table (csv or json) to cfg.out, or <name>.<format> when empty,
// plus <output>.provenance.json. Returns the output path.
std::string write_figure(const RunConfig& cfg, const FigureResult& fig, double wall_seconds);

}  // namespace haarmoments::app
