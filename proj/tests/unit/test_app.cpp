#include "doctest.h"
#include "helpers.hpp"

#include "haarmoments/app/commands.hpp"
#include "haarmoments/app/figures.hpp"
#include "haarmoments/app/matrix_json.hpp"
#include "haarmoments/app/table.hpp"
#include "haarmoments/app/validation.hpp"
#include "haarmoments/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace haarmoments;
using namespace haarmoments::app;
namespace fs = std::filesystem;

namespace {

RunConfig figure_config(const std::string& name) {
  RunConfig cfg;
  cfg.subcommand = "figure";
  cfg.figure = name;
  return cfg;
}

std::string csv_of(const Table& t) {
  std::ostringstream out;
  t.write_csv(out);
  return out.str();
}

std::size_t column_index(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return static_cast<std::size_t>(it - t.columns.begin());
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "haarmoments_test_app";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

// ---- serialization ----

TEST_CASE("matrix JSON round trip") {
  test::Gen g(101);
  const ComplexMatrix m = g.matrix(3);
  const nlohmann::json j = matrix_to_json(m);
  CHECK(j["dim"] == 3);
  CHECK(j["entries"].size() == 9u);
  CHECK(j["entries"][1][0].get<double>() == m(0, 1).real());
  CHECK(test::max_abs(matrix_from_json(j) - m) == 0.0);

  CHECK_THROWS(matrix_from_json(nlohmann::json{{"dim", 2}, {"entries", {{1, 0}}}}));
  CHECK_THROWS(matrix_from_json(nlohmann::json::array()));
}

TEST_CASE("pattern files") {
  const fs::path dir = scratch_dir();
  const nlohmann::json one = matrix_to_json(identity(2));
  {
    std::ofstream(dir / "array.json") << nlohmann::json::array({one, one, one}).dump();
    std::ofstream(dir / "object.json") << nlohmann::json{{"matrices", {one}}}.dump();
    std::ofstream(dir / "broken.json") << "{\"matrices\": [";
  }
  CHECK(read_pattern_file(dir / "array.json").size() == 3u);
  CHECK(read_pattern_file(dir / "object.json").size() == 1u);
  CHECK_THROWS(read_pattern_file(dir / "broken.json"));
  CHECK_THROWS(read_pattern_file(dir / "missing.json"));
}

TEST_CASE("format_double is shortest round trip") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 123456.789}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("Table csv and json") {
  Table t;
  t.columns = {"x"};
  t.add_row({1.0});
  t.add_row({2.0});
  t.add_column("y", {0.25, 0.5});
  CHECK(csv_of(t) == "x,y\n1,0.25\n2,0.5\n");
  CHECK(t.to_json()["columns"][1] == "y");
  CHECK_THROWS(t.add_column("z", {1.0}));
}

// ---- config ----

TEST_CASE("RunConfig validation") {
  RunConfig cfg = figure_config("c1-of-t");
  CHECK_NOTHROW(cfg.validate());

  auto bad = [&](auto&& mutate) {
    RunConfig c = figure_config("c1-of-t");
    mutate(c);
    CHECK_THROWS_AS(c.validate(), UsageError);
  };
  bad([](RunConfig& c) { c.figure = "fig-9"; });
  bad([](RunConfig& c) { c.nt = 1; });
  bad([](RunConfig& c) { c.d_s = 1; });
  bad([](RunConfig& c) { c.t0 = 3.0, c.t1 = 1.0; });
  bad([](RunConfig& c) { c.beta = -1.0; });
  bad([](RunConfig& c) { c.format = "xml"; });
  bad([](RunConfig& c) { c.out = "/no/such/dir/out.csv"; });
  bad([](RunConfig& c) { c.subcommand = "plot"; });

  RunConfig moment;
  moment.subcommand = "moment";
  CHECK_THROWS_AS(moment.validate(), UsageError);
}

// ---- figures ----

TEST_CASE("c1-of-t default layout") {
  const FigureResult fig = make_figure(figure_config("c1-of-t"));
  const std::vector<std::string> expect{"t", "poi_de4", "gue_de4", "poi_de16", "gue_de16", "poi_de64", "gue_de64"};
  CHECK(fig.table.columns == expect);
  CHECK(fig.table.rows.size() == 401u);
  CHECK(fig.table.rows.front()[0] == 0.0);
  CHECK(fig.table.rows.back()[0] == 20.0);
  // c1 vanishes at t = 0 for every curve
  for (std::size_t c = 1; c < expect.size(); ++c) CHECK(std::abs(fig.table.rows.front()[c]) < 1e-12);
}

TEST_CASE("equilibration columns are c0 times the leading-order f4") {
  RunConfig cfg = figure_config("equilibration");
  cfg.nt = 51;
  const FigureResult fig = make_figure(cfg);
  const std::size_t poi = column_index(fig.table, "poi"), gue = column_index(fig.table, "gue");
  for (const auto& row : fig.table.rows) {
    const double t = row[0];
    const double s = t == 0.0 ? 1.0 : std::sin(t) * std::cos(t) / t;
    const double h = t == 0.0 ? 1.0 : std::cyl_bessel_j(1.0, 2.0 * t) / t;
    CHECK(std::abs(row[poi] - 0.5 * std::pow(s, 4)) < 1e-12);
    CHECK(std::abs(row[gue] - 0.5 * std::pow(h, 4)) < 1e-12);
  }
}

TEST_CASE("gibbs-beta layout with Monte Carlo errors") {
  RunConfig cfg = figure_config("gibbs-beta");
  cfg.samples = 500;
  cfg.nt = 5;
  cfg.with_mc = true;
  const FigureResult fig = make_figure(cfg);
  const std::vector<std::string> expect{"beta", "poi", "poi_se", "gue", "gue_se"};
  CHECK(fig.table.columns == expect);
  CHECK(fig.table.rows.front()[1] == doctest::Approx(0.25));
}

TEST_CASE("figures reject settings they cannot use") {
  for (const char* name : {"coeff-variance", "purity-init-dep", "equilibration"}) {
    RunConfig cfg = figure_config(name);
    cfg.with_mc = true;
    CHECK_THROWS_AS(make_figure(cfg), UsageError);
  }
  RunConfig cfg = figure_config("purity-poi");
  cfg.ensemble = EnsembleKind::GueNumeric;
  CHECK_THROWS_AS(make_figure(cfg), UsageError);
  CHECK_THROWS_AS(make_figure(figure_config("nope")), UsageError);
}

TEST_CASE("every figure builds with small settings") {
  for (const std::string& name : figure_names()) {
    RunConfig cfg = figure_config(name);
    cfg.nt = 5;
    cfg.samples = 200;
    if (name == "gibbs-d" || name == "coeff-variance" || name == "purity-vs-de") cfg.d_e = 6;
    if (name == "purity-init-dep") cfg.d_s = 4, cfg.d_e = 8;
    const FigureResult fig = make_figure(cfg);
    CHECK(fig.table.columns.size() >= 2u);
    CHECK_FALSE(fig.table.rows.empty());
  }
}

TEST_CASE("same config and seed give byte-identical CSV") {
  RunConfig cfg = figure_config("purity-compare");
  cfg.nt = 11;
  cfg.d_e = 4;
  cfg.with_mc = true;
  cfg.samples = 300;
  const std::string a = csv_of(make_figure(cfg).table);
  const std::string b = csv_of(make_figure(cfg).table);
  CHECK(a == b);
  cfg.seed = 43;
  CHECK(csv_of(make_figure(cfg).table) != a);
}

TEST_CASE("write_figure emits the table and a provenance record") {
  RunConfig cfg = figure_config("equilibration");
  cfg.nt = 3;
  cfg.out = (scratch_dir() / "eq.csv").string();
  const FigureResult fig = make_figure(cfg);
  const std::string path = write_figure(cfg, fig, 0.01);
  CHECK(path == cfg.out);
  CHECK(fs::exists(path));
  std::ifstream side(path + ".provenance.json");
  REQUIRE(side.good());
  const nlohmann::json meta = nlohmann::json::parse(side);
  CHECK(meta.contains("seed"));
  CHECK(meta.contains("version"));
  CHECK(meta["version"] == library_version());

  std::ifstream csv(path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,poi,gue");
}

// ---- validation report ----

TEST_CASE("quick validation report structure") {
  const nlohmann::json report = run_validation({42, true});
  REQUIRE(report["criteria"].size() == 10u);
  for (int i = 0; i < 10; ++i) {
    CHECK(report["criteria"][static_cast<std::size_t>(i)]["id"] == i + 1);
    CHECK(report["criteria"][static_cast<std::size_t>(i)]["pass"].is_boolean());
  }
  CHECK(report["seed"] == 42);
  CHECK(report["all_pass"].is_boolean());
  CHECK(run_validation({42, true}).dump() == report.dump());
}
