#pragma once

#include "haarmoments/ensembles.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace haarmoments::app {

// Bad command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Settings shared by the subcommands. Unset optionals fall back to the
// defaults of the selected figure.
struct RunConfig {
  std::string subcommand;
  std::string figure;
  std::optional<int> d_s;
  std::optional<int> d_e;
  std::optional<EnsembleKind> ensemble;
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<int> nt;
  std::optional<double> beta;
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;
  std::string out;
  std::string format = "csv";
  bool with_mc = false;
  bool quick = false;
  std::string pattern_file;
  std::optional<int> dim;

  // Throws UsageError on inconsistent or out-of-range settings.
  void validate() const;
};

// Version string compiled into the library.
std::string library_version();

}  // namespace haarmoments::app
