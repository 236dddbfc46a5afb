// haarmoments: figure data, validation report and moment functions from the command line.

#include "haarmoments/app/commands.hpp"
#include "haarmoments/app/figures.hpp"
#include "haarmoments/app/matrix_json.hpp"
#include "haarmoments/app/validation.hpp"
#include "haarmoments/errors.hpp"
#include "haarmoments/weingarten.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using haarmoments::app::RunConfig;
using haarmoments::app::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& ensemble) {
  cmd->add_option("--ds", cfg.d_s, "system dimension d_S");
  cmd->add_option("--de", cfg.d_e, "environment dimension d_E");
  cmd->add_option("--ensemble", ensemble, "uniform | poi | gue | gue-large-d")
      ->check(CLI::IsMember({"uniform", "poi", "gue", "gue-large-d"}));
  cmd->add_option("--t0", cfg.t0, "grid start");
  cmd->add_option("--t1", cfg.t1, "grid end");
  cmd->add_option("--nt", cfg.nt, "number of grid points");
  cmd->add_option("--beta", cfg.beta, "inverse temperature");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--samples", cfg.samples, "Monte Carlo samples per point");
  cmd->add_option("--out", cfg.out, "output path");
  cmd->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--with-mc", cfg.with_mc, "add Monte Carlo columns with _se errors");
  cmd->add_flag("--quick", cfg.quick, "reduced sample sizes");
}

int run_figure(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto fig = haarmoments::app::make_figure(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string path = haarmoments::app::write_figure(cfg, fig, wall);
  std::cerr << "wrote " << path << " (" << fig.table.rows.size() << " rows)\n";
  return kExitOk;
}

int run_validate(const RunConfig& cfg) {
  const auto report = haarmoments::app::run_validation({cfg.seed, cfg.quick});
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + cfg.out);
    out << text;
  }
  for (const auto& c : report["criteria"]) {
    std::cerr << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<int>() << " "
              << c["name"].get<std::string>() << "\n";
  }
  return report["all_pass"].get<bool>() ? kExitOk : kExitNumerical;
}

int run_moment(const RunConfig& cfg) {
  std::vector<haarmoments::ComplexMatrix> xs;
  try {
    xs = haarmoments::app::read_pattern_file(cfg.pattern_file);
  } catch (const haarmoments::Error& e) {
    throw UsageError(e.what());
  }
  if (xs.empty()) throw UsageError("pattern file holds no matrices");
  const int d = cfg.dim.value_or(static_cast<int>(xs.front().rows()));
  const auto result = haarmoments::moment_function(xs, d);
  const std::string text = haarmoments::app::matrix_to_json(result).dump() + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + cfg.out);
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar-measure averages and generic open-system dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", haarmoments::app::library_version());

  RunConfig cfg;
  std::string ensemble;

  auto* figure = app.add_subcommand("figure", "write the data of one figure as CSV or JSON");
  figure->add_option("name", cfg.figure, "figure name")->required();
  add_common(figure, cfg, ensemble);

  auto* validate = app.add_subcommand("validate", "run the acceptance checks, print a JSON report");
  add_common(validate, cfg, ensemble);

  auto* moment = app.add_subcommand("moment", "evaluate the moment function of a JSON pattern");
  moment->add_option("pattern", cfg.pattern_file, "JSON file with 1, 3, 5 or 7 matrices")
      ->required();
  moment->add_option("--d", cfg.dim, "matrix dimension (default: from the file)");
  moment->add_option("--out", cfg.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (figure->parsed()) cfg.subcommand = "figure";
    if (validate->parsed()) cfg.subcommand = "validate";
    if (moment->parsed()) cfg.subcommand = "moment";
    if (!ensemble.empty()) cfg.ensemble = haarmoments::parse_ensemble(ensemble);
    cfg.validate();
    if (cfg.subcommand == "figure") return run_figure(cfg);
    if (cfg.subcommand == "validate") return run_validate(cfg);
    return run_moment(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const haarmoments::SingularWeingarten& e) {
    std::cerr << "error: " << e.what()
              << "; the moment function of order n needs matrices of size d >= n/2\n";
    return kExitNumerical;
  } catch (const haarmoments::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
