#include "haarmoments/app/commands.hpp"

#include "haarmoments/app/figures.hpp"

#include <algorithm>
#include <filesystem>

namespace haarmoments::app {

std::string library_version() { return HAARMOMENTS_VERSION; }

void RunConfig::validate() const {
  if (subcommand != "figure" && subcommand != "validate" && subcommand != "moment") {
    throw UsageError("unknown subcommand '" + subcommand + "'");
  }
  if (subcommand == "figure") {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), figure) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw UsageError("unknown figure '" + figure + "' (expected one of: " + list + ")");
    }
  }
  if (d_s && *d_s < 2) throw UsageError("--ds must be >= 2");
  if (d_e && *d_e < 2) throw UsageError("--de must be >= 2");
  if (nt && *nt < 2) throw UsageError("--nt must be >= 2");
  if (t0 && t1 && !(*t1 > *t0)) throw UsageError("--t1 must be larger than --t0");
  if (beta && !(*beta >= 0.0)) throw UsageError("--beta must be >= 0");
  if (samples && *samples < 1) throw UsageError("--samples must be >= 1");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  if (!out.empty()) {
    const std::filesystem::path parent = std::filesystem::absolute(out).parent_path();
    if (!std::filesystem::is_directory(parent)) {
      throw UsageError("output directory " + parent.string() + " does not exist");
    }
  }
  if (subcommand == "moment") {
    if (pattern_file.empty()) throw UsageError("moment needs a pattern file");
    if (dim && *dim < 1) throw UsageError("--d must be >= 1");
  }
}

}  // namespace haarmoments::app
