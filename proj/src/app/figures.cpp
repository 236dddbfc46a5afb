#include "haarmoments/app/figures.hpp"

#include "haarmoments/applications.hpp"
#include "haarmoments/closed_forms.hpp"
#include "haarmoments/ensembles.hpp"
#include "haarmoments/mc_oracle.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace haarmoments::app {

namespace {

using Columns = std::vector<std::pair<std::string, std::vector<double>>>;

// Largest total dimension for which Monte Carlo overlays are computed.
constexpr int kMaxMcDim = 36;
constexpr std::size_t kDefaultOverlaySamples = 1000;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

struct Grid {
  double t0, t1;
  int nt;
  std::vector<double> values;
};

Grid time_grid(const RunConfig& cfg, double t0, double t1, int nt) {
  Grid g{cfg.t0.value_or(t0), cfg.t1.value_or(t1), cfg.nt.value_or(nt), {}};
  if (!(g.t1 > g.t0)) throw UsageError("grid end must be larger than grid start");
  g.values = linspace(g.t0, g.t1, g.nt);
  return g;
}

Table make_table(const std::string& x_name, const std::vector<double>& x, const Columns& cols) {
  Table table;
  table.columns.push_back(x_name);
  for (double v : x) table.rows.push_back({v});
  for (const auto& [name, values] : cols) table.add_column(name, values);
  return table;
}

// Which of the poi / gue curves a comparison figure draws.
struct Curves {
  bool poi = true;
  bool gue = true;
  bool force_large_d = false;
};

Curves comparison_curves(const RunConfig& cfg) {
  Curves c;
  if (!cfg.ensemble) return c;
  switch (*cfg.ensemble) {
    case EnsembleKind::Poisson: c.gue = false; break;
    case EnsembleKind::GueNumeric: c.poi = false; break;
    case EnsembleKind::GueLargeD: c.poi = false; c.force_large_d = true; break;
    case EnsembleKind::Uniform:
      throw UsageError("figure '" + cfg.figure + "' compares poi and gue; uniform does not apply");
  }
  return c;
}

// Numeric GUE averages where the quadrature allows, the large-d form beyond.
EnsembleKind gue_mode(int d, const Curves& c) {
  return !c.force_large_d && d <= kMaxGueNumericDim ? EnsembleKind::GueNumeric
                                                    : EnsembleKind::GueLargeD;
}

void require_no_mc(const RunConfig& cfg) {
  if (cfg.with_mc) throw UsageError("figure '" + cfg.figure + "' has no Monte Carlo overlay");
}

void require_uniform(const RunConfig& cfg) {
  if (cfg.ensemble && *cfg.ensemble != EnsembleKind::Uniform) {
    throw UsageError("figure '" + cfg.figure + "' is a uniform (Haar) average; --ensemble " +
                     to_string(*cfg.ensemble) + " does not apply");
  }
}

std::string fmt(double x) { return format_double(x); }

// Stream ids keep every Monte Carlo column/point on its own substream.
RngStream stream_for(const RunConfig& cfg, std::uint64_t column, std::uint64_t row) {
  return RngStream(cfg.seed, (column << 32) | row);
}

// ---------------------------------------------------------------- figures

FigureResult coeff_variance(const RunConfig& cfg) {
  require_no_mc(cfg);
  require_uniform(cfg);
  const int ds = cfg.d_s.value_or(2);
  const int de_max = cfg.d_e.value_or(64);
  std::vector<double> de_values;
  Columns cols{{"abs_c1", {}}, {"abs_c2", {}}, {"abs_c3", {}}, {"abs_c4", {}}, {"abs_c5", {}}};
  for (int de = 2; de <= de_max; ++de) {
    const VarianceCoeffs v = variance_coeffs(BipartiteDims(ds, de));
    de_values.push_back(de);
    const double c[] = {v.c1, v.c2, v.c3, v.c4, v.c5};
    for (int i = 0; i < 5; ++i) cols[static_cast<std::size_t>(i)].second.push_back(std::abs(c[i]));
  }
  return {make_table("de", de_values, cols), {{"ds", ds}, {"de_min", 2}, {"de_max", de_max}}};
}

// c1(t) from Monte Carlo: for Delta with vanishing partial traces the average
// of ||Tr_E{U Delta U†}||^2 is c1 ||Delta||^2.
std::pair<std::vector<double>, std::vector<double>> c1_monte_carlo(
    const RunConfig& cfg, EnsembleKind kind, const BipartiteDims& dims,
    const std::vector<double>& times, std::uint64_t column) {
  const ComplexMatrix psi = InitialState::entangled(1.0 / std::min(dims.d_s(), dims.d_e())).vector(dims);
  const ComplexMatrix rho = psi * psi.adjoint();
  const ComplexMatrix product =
      tensor_product(partial_trace_env(rho, dims), partial_trace_sys(rho, dims));
  const ComplexMatrix delta = rho - product;
  const double norm = hs_norm_sq(delta);
  const std::size_t n = cfg.samples.value_or(kDefaultOverlaySamples);
  std::vector<double> mean, se;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const McScalar r = empirical_fixed_spectrum(delta, dims, kind, times[i], n,
                                                stream_for(cfg, column, i));
    mean.push_back(r.mean / norm);
    se.push_back(r.stderr / norm);
  }
  return {mean, se};
}

FigureResult c1_of_t(const RunConfig& cfg) {
  const Curves curves = comparison_curves(cfg);
  const int ds = cfg.d_s.value_or(2);
  const std::vector<int> de_list = cfg.d_e ? std::vector<int>{*cfg.d_e} : std::vector<int>{4, 16, 64};
  const Grid g = time_grid(cfg, 0.0, 20.0, 401);
  Columns cols;
  nlohmann::json gue_modes = nlohmann::json::object();
  std::uint64_t column = 0;
  for (int de : de_list) {
    const BipartiteDims dims(ds, de);
    const std::string suffix = "_de" + std::to_string(de);
    auto add = [&](const std::string& prefix, EnsembleKind kind, EnsembleKind mc_kind) {
      std::vector<double> values;
      for (double t : g.values) values.push_back(averaged_time_coeffs(kind, t, dims).c1);
      cols.emplace_back(prefix + suffix, values);
      if (cfg.with_mc && dims.d() <= kMaxMcDim) {
        auto [mean, se] = c1_monte_carlo(cfg, mc_kind, dims, g.values, column);
        cols.emplace_back(prefix + suffix + "_mc", mean);
        cols.emplace_back(prefix + suffix + "_mc_se", se);
      }
      ++column;
    };
    if (curves.poi) add("poi", EnsembleKind::Poisson, EnsembleKind::Poisson);
    if (curves.gue) {
      const EnsembleKind mode = gue_mode(dims.d(), curves);
      gue_modes["gue" + suffix] = to_string(mode);
      add("gue", mode, EnsembleKind::GueNumeric);
    }
  }
  return {make_table("t", g.values, cols),
          {{"ds", ds}, {"de", de_list}, {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt},
           {"gue_modes", gue_modes}}};
}

FigureResult purity_vs_de(const RunConfig& cfg) {
  require_uniform(cfg);
  const std::vector<int> ds_list = cfg.d_s ? std::vector<int>{*cfg.d_s} : std::vector<int>{2, 3, 4, 5};
  const int de_max = cfg.d_e.value_or(32);
  std::vector<double> de_values;
  for (int de = 2; de <= de_max; ++de) de_values.push_back(de);
  Columns cols;
  std::uint64_t column = 0;
  for (int ds : ds_list) {
    std::vector<double> mean, sd, mc, mc_se;
    for (std::size_t i = 0; i < de_values.size(); ++i) {
      const BipartiteDims dims(ds, static_cast<int>(de_values[i]));
      const UniformPurity p = uniform_purity(1.0, dims);
      mean.push_back(p.mean);
      sd.push_back(std::sqrt(*p.variance_pure));
      if (cfg.with_mc) {
        if (dims.d() <= kMaxMcDim) {
          const McScalar r = empirical_purity(dims, EnsembleKind::Uniform, InitialState::product(),
                                              1.0, cfg.samples.value_or(kDefaultOverlaySamples),
                                              stream_for(cfg, column, i));
          mc.push_back(r.mean);
          mc_se.push_back(r.stderr);
        } else {
          mc.push_back(std::nan(""));
          mc_se.push_back(std::nan(""));
        }
      }
    }
    const std::string suffix = "_ds" + std::to_string(ds);
    cols.emplace_back("mean" + suffix, mean);
    cols.emplace_back("sd" + suffix, sd);
    if (cfg.with_mc) {
      cols.emplace_back("mc" + suffix, mc);
      cols.emplace_back("mc" + suffix + "_se", mc_se);
    }
    ++column;
  }
  return {make_table("de", de_values, cols), {{"ds", ds_list}, {"de_min", 2}, {"de_max", de_max}}};
}

// Adds purity trajectories for one system, initially pure and maximally mixed
// reduced state.
void purity_pair(const RunConfig& cfg, Columns& cols, const std::string& prefix,
                 EnsembleKind kind, EnsembleKind mc_kind, const BipartiteDims& dims,
                 const std::vector<double>& times, std::uint64_t& column) {
  const double mixed = 1.0 / std::min(dims.d_s(), dims.d_e());
  for (const auto& [label, p0] : {std::pair<std::string, double>{"pure", 1.0}, {"mixed", mixed}}) {
    const std::string name = prefix + "_" + label;
    cols.emplace_back(name, purity_evolution(kind, dims, p0, times).values);
    if (cfg.with_mc && dims.d() <= kMaxMcDim) {
      const InitialState psi0 = p0 == 1.0 ? InitialState::product() : InitialState::entangled(p0);
      std::vector<double> mean, se;
      for (std::size_t i = 0; i < times.size(); ++i) {
        const McScalar r = empirical_purity(dims, mc_kind, psi0, times[i],
                                            cfg.samples.value_or(kDefaultOverlaySamples),
                                            stream_for(cfg, column, i));
        mean.push_back(r.mean);
        se.push_back(r.stderr);
      }
      cols.emplace_back(name + "_mc", mean);
      cols.emplace_back(name + "_mc_se", se);
    }
    ++column;
  }
}

FigureResult purity_poi(const RunConfig& cfg) {
  if (cfg.ensemble && *cfg.ensemble != EnsembleKind::Poisson) {
    throw UsageError("figure 'purity-poi' uses Poisson statistics only");
  }
  std::vector<BipartiteDims> systems;
  if (cfg.d_s || cfg.d_e) {
    systems.emplace_back(cfg.d_s.value_or(2), cfg.d_e.value_or(8));
  } else {
    systems = {BipartiteDims(2, 8), BipartiteDims(4, 16)};
  }
  const Grid g = time_grid(cfg, 0.0, 10.0, 401);
  Columns cols;
  std::uint64_t column = 0;
  nlohmann::json sys = nlohmann::json::array();
  for (const auto& dims : systems) {
    const std::string prefix = "ds" + std::to_string(dims.d_s()) + "_de" + std::to_string(dims.d_e());
    purity_pair(cfg, cols, prefix, EnsembleKind::Poisson, EnsembleKind::Poisson, dims, g.values,
                column);
    sys.push_back({dims.d_s(), dims.d_e()});
  }
  return {make_table("t", g.values, cols),
          {{"systems", sys}, {"ensemble", "poi"}, {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt}}};
}

FigureResult purity_init_dep(const RunConfig& cfg) {
  require_no_mc(cfg);
  const Curves curves = comparison_curves(cfg);
  const BipartiteDims dims(cfg.d_s.value_or(32), cfg.d_e.value_or(128));
  const Grid g = time_grid(cfg, 0.0, 10.0, 401);
  const double p_min = 1.0 / std::min(dims.d_s(), dims.d_e());
  std::vector<double> p_values;
  for (int i = 0; i < 5; ++i) p_values.push_back(1.0 - (1.0 - p_min) * i / 4.0);
  Columns cols;
  const EnsembleKind gue = gue_mode(dims.d(), curves);
  for (double p0 : p_values) {
    if (curves.poi) {
      cols.emplace_back("poi_p" + fmt(p0),
                        purity_evolution(EnsembleKind::Poisson, dims, p0, g.values).values);
    }
    if (curves.gue) {
      cols.emplace_back("gue_p" + fmt(p0), purity_evolution(gue, dims, p0, g.values).values);
    }
  }
  return {make_table("t", g.values, cols),
          {{"ds", dims.d_s()}, {"de", dims.d_e()}, {"p0", p_values}, {"gue_mode", to_string(gue)},
           {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt}}};
}

FigureResult purity_compare(const RunConfig& cfg) {
  const Curves curves = comparison_curves(cfg);
  const int ds = cfg.d_s.value_or(4);
  const std::vector<int> de_list = cfg.d_e ? std::vector<int>{*cfg.d_e} : std::vector<int>{4, 8, 16};
  const Grid g = time_grid(cfg, 0.0, 10.0, 401);
  Columns cols;
  nlohmann::json gue_modes = nlohmann::json::object();
  std::uint64_t column = 0;
  for (int de : de_list) {
    const BipartiteDims dims(ds, de);
    const std::string suffix = "_de" + std::to_string(de);
    if (curves.poi) {
      purity_pair(cfg, cols, "poi" + suffix, EnsembleKind::Poisson, EnsembleKind::Poisson, dims,
                  g.values, column);
    }
    if (curves.gue) {
      const EnsembleKind mode = gue_mode(dims.d(), curves);
      gue_modes["gue" + suffix] = to_string(mode);
      purity_pair(cfg, cols, "gue" + suffix, mode, EnsembleKind::GueNumeric, dims, g.values,
                  column);
    }
  }
  return {make_table("t", g.values, cols),
          {{"ds", ds}, {"de", de_list}, {"gue_modes", gue_modes}, {"t0", g.t0}, {"t1", g.t1},
           {"nt", g.nt}}};
}

void gibbs_column(const RunConfig& cfg, Columns& cols, const std::string& name, EnsembleKind kind,
                  const std::vector<std::pair<int, double>>& points, std::size_t n,
                  std::uint64_t column) {
  std::vector<double> mean, se;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const McScalar r =
        gibbs_purity_mc(kind, points[i].first, points[i].second, n, stream_for(cfg, column, i));
    mean.push_back(r.mean);
    se.push_back(r.stderr);
  }
  cols.emplace_back(name, mean);
  if (cfg.with_mc) cols.emplace_back(name + "_se", se);
}

FigureResult gibbs_beta(const RunConfig& cfg) {
  const Curves curves = comparison_curves(cfg);
  const int d = cfg.d_s.value_or(2) * cfg.d_e.value_or(2);
  const Grid g = time_grid(cfg, 0.0, 20.0, 41);
  const std::size_t n = cfg.samples.value_or(10000);
  std::vector<std::pair<int, double>> points;
  for (double beta : g.values) points.emplace_back(d, beta);
  Columns cols;
  if (curves.poi) gibbs_column(cfg, cols, "poi", EnsembleKind::Poisson, points, n, 0);
  if (curves.gue) gibbs_column(cfg, cols, "gue", EnsembleKind::GueNumeric, points, n, 1);
  return {make_table("beta", g.values, cols),
          {{"d", d}, {"beta0", g.t0}, {"beta1", g.t1}, {"nbeta", g.nt}, {"samples", n}}};
}

FigureResult gibbs_d(const RunConfig& cfg) {
  Curves curves{true, false, false};
  if (cfg.ensemble) curves = comparison_curves(cfg);
  const double beta = cfg.beta.value_or(10.0);
  const int d_max = cfg.d_e.value_or(32);
  const std::size_t n = cfg.samples.value_or(10000);
  std::vector<double> d_values;
  std::vector<std::pair<int, double>> points;
  for (int d = 2; d <= d_max; ++d) {
    d_values.push_back(d);
    points.emplace_back(d, beta);
  }
  Columns cols;
  if (curves.poi) gibbs_column(cfg, cols, "poi", EnsembleKind::Poisson, points, n, 0);
  if (curves.gue) gibbs_column(cfg, cols, "gue", EnsembleKind::GueNumeric, points, n, 1);
  return {make_table("d", d_values, cols),
          {{"beta", beta}, {"d_min", 2}, {"d_max", d_max}, {"samples", n}}};
}

FigureResult equilibration(const RunConfig& cfg) {
  require_no_mc(cfg);
  const Curves curves = comparison_curves(cfg);
  const int ds = cfg.d_s.value_or(2);
  const Grid g = time_grid(cfg, 0.0, 10.0, 401);
  Columns cols;
  if (curves.poi) {
    cols.emplace_back("poi",
                      open_thermalization_large_env(EnsembleKind::Poisson, ds, 1.0, g.values).values);
  }
  if (curves.gue) {
    cols.emplace_back(
        "gue", open_thermalization_large_env(EnsembleKind::GueLargeD, ds, 1.0, g.values).values);
  }
  return {make_table("t", g.values, cols),
          {{"ds", ds}, {"de", "infinite"}, {"c0", 1.0 - 1.0 / ds}, {"t0", g.t0}, {"t1", g.t1},
           {"nt", g.nt}}};
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {
      "coeff-variance", "c1-of-t",      "purity-vs-de", "purity-poi",   "purity-init-dep",
      "purity-compare", "gibbs-beta",   "gibbs-d",      "equilibration"};
  return names;
}

FigureResult make_figure(const RunConfig& cfg) {
  const std::string& name = cfg.figure;
  if (name == "coeff-variance") return coeff_variance(cfg);
  if (name == "c1-of-t") return c1_of_t(cfg);
  if (name == "purity-vs-de") return purity_vs_de(cfg);
  if (name == "purity-poi") return purity_poi(cfg);
  if (name == "purity-init-dep") return purity_init_dep(cfg);
  if (name == "purity-compare") return purity_compare(cfg);
  if (name == "gibbs-beta") return gibbs_beta(cfg);
  if (name == "gibbs-d") return gibbs_d(cfg);
  if (name == "equilibration") return equilibration(cfg);
  throw UsageError("unknown figure '" + name + "'");
}

std::string write_figure(const RunConfig& cfg, const FigureResult& fig, double wall_seconds) {
  const std::string path = cfg.out.empty() ? cfg.figure + "." + cfg.format : cfg.out;
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    if (cfg.format == "json") {
      out << fig.table.to_json().dump(2) << '\n';
    } else {
      fig.table.write_csv(out);
    }
    if (!out) throw UsageError("error while writing " + path);
  }
  nlohmann::json provenance = {
      {"figure", cfg.figure},
      {"output", path},
      {"format", cfg.format},
      {"seed", cfg.seed},
      {"with_mc", cfg.with_mc},
      {"samples", cfg.samples ? nlohmann::json(*cfg.samples) : nlohmann::json(nullptr)},
      {"settings", fig.settings},
      {"columns", fig.table.columns},
      {"library", "haarmoments"},
      {"version", library_version()},
      {"wall_time_s", wall_seconds},
  };
  const std::string side = path + ".provenance.json";
  std::ofstream meta(side, std::ios::binary);
  if (!meta) throw UsageError("cannot write " + side);
  meta << provenance.dump(2) << '\n';
  return path;
}

}  // namespace haarmoments::app
