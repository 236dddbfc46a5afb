#pragma once

#include "json.hpp"

#include <cstdint>

namespace haarmoments::app {

struct ValidationOptions {
  std::uint64_t seed = 42;
  bool quick = false;  // n = 10^3 and fewer cases
};

// Runs the acceptance criteria and returns a report:
// {"seed", "quick", "version", "criteria": [{"id", "name", "pass", ...}], "all_pass"}.
// The report has no timing fields, so equal seeds give identical reports.
nlohmann::json run_validation(const ValidationOptions& opts);

}  // namespace haarmoments::app
