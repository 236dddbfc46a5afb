#include "haarmoments/app/matrix_json.hpp"

#include "haarmoments/errors.hpp"

#include <fstream>

namespace haarmoments::app {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_to_json: matrix must be square");
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw DimensionError("matrix JSON needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw DimensionError("matrix JSON: \"dim\" must be a positive integer");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
    throw DimensionError("matrix JSON: expected " + std::to_string(dim * dim) + " entries");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    const auto& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw DimensionError("matrix JSON: entry " + std::to_string(k) + " is not [re, im]");
    }
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

std::vector<ComplexMatrix> read_pattern_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DimensionError("cannot open pattern file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DimensionError("pattern file " + path.string() + " is not valid JSON: " + e.what());
  }
  const nlohmann::json& list = doc.is_object() && doc.contains("matrices") ? doc["matrices"] : doc;
  if (!list.is_array()) throw DimensionError("pattern file must hold an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : list) out.push_back(matrix_from_json(m));
  return out;
}

}  // namespace haarmoments::app
