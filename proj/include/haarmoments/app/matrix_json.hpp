#pragma once

#include "haarmoments/linalg.hpp"

#include "json.hpp"

#include <filesystem>
#include <vector>

namespace haarmoments::app {

// {"dim": n, "entries": [[re, im], ...]} with entries row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// A pattern file holds either a JSON array of matrices or {"matrices": [...]}.
std::vector<ComplexMatrix> read_pattern_file(const std::filesystem::path& path);

}  // namespace haarmoments::app
