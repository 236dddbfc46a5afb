#include "haarmoments/app/validation.hpp"

#include "haarmoments/app/commands.hpp"
#include "haarmoments/applications.hpp"
#include "haarmoments/closed_forms.hpp"
#include "haarmoments/ensembles.hpp"
#include "haarmoments/mc_oracle.hpp"
#include "haarmoments/parallel.hpp"
#include "haarmoments/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace haarmoments::app {

namespace {

using nlohmann::json;

constexpr double kSigmas = 5.0;

struct Context {
  std::uint64_t seed;
  bool quick;
  std::size_t n_scalar;
  std::size_t n_matrix;
  std::uint64_t next_stream = 1;

  RngStream stream() { return RngStream(seed, next_stream++); }
};

ComplexMatrix random_complex(int d, RngStream& rng) {
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  }
  return m;
}

ComplexMatrix random_hermitian(int d, RngStream& rng) {
  const ComplexMatrix a = random_complex(d, rng);
  return 0.5 * (a + a.adjoint());
}

// |analytic - estimate| / stderr, entrywise over real and imaginary parts.
// Entries with zero stderr must agree to 1e-12.
double max_z(const ComplexMatrix& exact, const McMatrix& mc, bool& ok) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < exact.rows(); ++i) {
    for (Eigen::Index j = 0; j < exact.cols(); ++j) {
      const double parts[2][3] = {
          {exact(i, j).real(), mc.mean(i, j).real(), mc.stderr(i, j).real()},
          {exact(i, j).imag(), mc.mean(i, j).imag(), mc.stderr(i, j).imag()}};
      for (const auto& p : parts) {
        const double diff = std::abs(p[0] - p[1]);
        if (p[2] == 0.0) {
          if (diff > 1e-12) ok = false;
          continue;
        }
        const double z = diff / p[2];
        worst = std::max(worst, z);
        if (z > kSigmas) ok = false;
      }
    }
  }
  return worst;
}

json criterion(int id, const std::string& name, bool pass, json details) {
  return {{"id", id}, {"name", name}, {"pass", pass}, {"details", std::move(details)}};
}

// ---------------------------------------------------------------- criteria

json moment_oracle(Context& ctx) {
  const int tuples = ctx.quick ? 2 : 20;
  bool ok = true;
  double worst = 0.0;
  json cases = json::array();
  for (int d : {2, 3, 4}) {
    for (int q : {3, 5, 7}) {
      const int m = (q + 1) / 2;
      if (d < m) continue;
      RngStream gen = ctx.stream();
      double case_worst = 0.0;
      for (int k = 0; k < tuples; ++k) {
        std::vector<ComplexMatrix> xs;
        for (int i = 0; i < q; ++i) xs.push_back(random_complex(d, gen));
        const ComplexMatrix exact = moment_function(xs, d);
        const McMatrix mc = empirical_moment(xs, d, ctx.n_scalar, ctx.stream());
        case_worst = std::max(case_worst, max_z(exact, mc, ok));
      }
      worst = std::max(worst, case_worst);
      cases.push_back({{"d", d}, {"n_moment", q + 1}, {"max_z", case_worst}});
    }
  }
  return criterion(1, "moment function vs Monte Carlo", ok,
                   {{"tuples", tuples}, {"samples", ctx.n_scalar}, {"max_z", worst},
                    {"tolerance_z", kSigmas}, {"cases", cases}});
}

json scalar_moments(Context& ctx) {
  bool ok = true;
  json cases = json::array();
  for (int d : {2, 3, 5}) {
    const ComplexMatrix p = basis_op(d, 0, 0);
    const double expected[2] = {1.0 / d, 2.0 / (d * (d + 1.0))};
    for (int m = 1; m <= 2; ++m) {
      const std::vector<ComplexMatrix> xs(static_cast<std::size_t>(2 * m - 1), p);
      const double analytic = moment_function(xs, d)(0, 0).real();
      const McMatrix mc = empirical_moment(xs, d, ctx.n_scalar, ctx.stream());
      const double z = std::abs(mc.mean(0, 0).real() - expected[m - 1]) / mc.stderr(0, 0).real();
      const double exact_err = std::abs(analytic - expected[m - 1]);
      const bool pass = exact_err <= 1e-12 && z <= kSigmas;
      ok = ok && pass;
      cases.push_back({{"d", d}, {"power", 2 * m}, {"expected", expected[m - 1]},
                       {"weingarten", analytic}, {"mc", mc.mean(0, 0).real()},
                       {"mc_se", mc.stderr(0, 0).real()}, {"z", z}, {"pass", pass}});
    }
  }
  return criterion(2, "<|U00|^2> and <|U00|^4>", ok, {{"cases", cases}});
}

json uniform_average_variance(Context& ctx) {
  bool ok = true;
  json cases = json::array();
  for (const auto& [ds, de] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
    const BipartiteDims dims(ds, de);
    RngStream gen = ctx.stream();
    const ComplexMatrix m = random_hermitian(dims.d(), gen);
    const double mean = uniform_average(m, dims);
    const double var = uniform_variance(m, dims);
    const McScalar mc = empirical_reduced_norm(m, dims, ctx.n_scalar, ctx.stream());
    const double z_mean = std::abs(mean - mc.mean) / mc.stderr;
    const double z_var = std::abs(var - mc.variance) / mc.variance_stderr;
    const bool pass = z_mean <= kSigmas && z_var <= kSigmas;
    ok = ok && pass;
    cases.push_back({{"ds", ds}, {"de", de}, {"mean", mean}, {"mc_mean", mc.mean},
                     {"mc_mean_se", mc.stderr}, {"variance", var}, {"mc_variance", mc.variance},
                     {"mc_variance_se", mc.variance_stderr}, {"z_mean", z_mean},
                     {"z_variance", z_var}, {"pass", pass}});
  }
  return criterion(3, "uniform average and variance vs Monte Carlo", ok,
                   {{"samples", ctx.n_scalar}, {"cases", cases}});
}

json t0_identities(Context& ctx) {
  double coeff_err = 0.0;
  double purity_err = 0.0;
  for (const auto& [ds, de] : {std::pair{2, 2}, {2, 3}, {2, 8}, {4, 4}, {3, 5}}) {
    const BipartiteDims dims(ds, de);
    std::vector<EnsembleKind> kinds = {EnsembleKind::Uniform, EnsembleKind::Poisson,
                                       EnsembleKind::GueLargeD};
    if (dims.d() <= kMaxGueNumericDim) kinds.push_back(EnsembleKind::GueNumeric);
    for (EnsembleKind kind : kinds) {
      const TimeCoeffs c = averaged_time_coeffs(kind, 0.0, dims);
      coeff_err = std::max({coeff_err, std::abs(c.c1), std::abs(c.c2), std::abs(c.c3 - 1.0),
                            std::abs(c.c4)});
      for (double p0 : {1.0, 0.75, 1.0 / ds}) {
        const double p = purity_evolution(kind, dims, p0, {0.0}).values[0];
        purity_err = std::max(purity_err, std::abs(p - p0));
      }
    }
  }
  double depol_err = 0.0;
  RngStream gen = ctx.stream();
  for (int d : {2, 4, 6}) {
    const ComplexMatrix a = random_complex(d, gen);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    depol_err = std::max(depol_err, (depolarizing_average(rho, 1.0, d) - rho).cwiseAbs().maxCoeff());
  }
  const bool pass = coeff_err <= 1e-12 && purity_err <= 1e-10 && depol_err <= 1e-12;
  return criterion(4, "t = 0 identities", pass,
                   {{"coeff_max_err", coeff_err}, {"coeff_tol", 1e-12},
                    {"purity_max_err", purity_err}, {"purity_tol", 1e-10},
                    {"depolarizing_max_err", depol_err}, {"depolarizing_tol", 1e-12}});
}

json purity_asymptotics(Context&) {
  const UniformPurity p22 = uniform_purity(1.0, BipartiteDims(2, 2));
  const double mean_err = std::abs(p22.mean - 0.8);
  const double var_err = std::abs(*p22.variance_pure - 18.0 / 1050.0);
  const double large = uniform_purity(1.0, BipartiteDims(2, 1000)).mean;
  const double large_dev = std::abs(large - (0.5 + 0.75 / 1000.0));
  const bool pass = mean_err <= 1e-15 && var_err <= 1e-15 && large_dev < 1e-4;
  return criterion(5, "purity asymptotics", pass,
                   {{"mean_2x2", p22.mean}, {"variance_2x2", *p22.variance_pure},
                    {"large_de_deviation", large_dev}, {"large_de_tol", 1e-4}});
}

json ensemble_limits(Context&) {
  const BipartiteDims dims(2, 512);
  const double ds = dims.d_s();
  double worst = 0.0;
  json cases = json::array();
  for (double t : {1.0, 2.0, 4.0}) {
    const TimeCoeffs poi = averaged_time_coeffs(EnsembleKind::Poisson, t, dims);
    const double poi_c2 = (128.0 * std::pow(t, 4) + 4.0 * std::cos(4.0 * t) - std::cos(8.0 * t) - 3.0) /
                          (128.0 * ds * std::pow(t, 4));
    const double poi_c3 = std::pow(std::cos(t) * std::sin(t) / t, 4);
    const TimeCoeffs gue = averaged_time_coeffs(EnsembleKind::GueLargeD, t, dims);
    const double h4 = std::pow(bessel_j1(2.0 * t) / t, 4);
    const double devs[] = {std::abs(poi.c2 - poi_c2), std::abs(poi.c3 - poi_c3),
                           std::abs(gue.c2 - (1.0 - h4) / ds), std::abs(gue.c3 - h4)};
    for (double v : devs) worst = std::max(worst, v);
    cases.push_back({{"t", t}, {"poi_c2_dev", devs[0]}, {"poi_c3_dev", devs[1]},
                     {"gue_c2_dev", devs[2]}, {"gue_c3_dev", devs[3]}});
  }
  return criterion(6, "large-d_E limits of c2 and c3", worst <= 2e-2,
                   {{"max_dev", worst}, {"tolerance", 2e-2}, {"cases", cases}});
}

json decay_laws(Context&) {
  std::vector<double> times;
  for (int i = 0; i <= 28000; ++i) times.push_back(2.0 + i * 1e-3);
  const int ds = 2;
  const double c0 = 1.0 - 1.0 / ds;
  const double poi = fit_decay_exponent(
      open_thermalization_large_env(EnsembleKind::Poisson, ds, 1.0, times), 2.0, 30.0);
  const double gue = fit_decay_exponent(
      open_thermalization_large_env(EnsembleKind::GueLargeD, ds, 1.0, times), 2.0, 30.0);
  double t0_err = 0.0;
  for (EnsembleKind kind : {EnsembleKind::Poisson, EnsembleKind::GueLargeD}) {
    t0_err = std::max(t0_err,
                      std::abs(open_thermalization_large_env(kind, ds, 1.0, {0.0}).values[0] - c0));
  }
  const bool pass = std::abs(poi + 4.0) <= 0.3 && std::abs(gue + 6.0) <= 0.4 && t0_err <= 1e-10;
  return criterion(7, "thermalization decay laws", pass,
                   {{"poi_exponent", poi}, {"poi_target", -4.0}, {"poi_tol", 0.3},
                    {"gue_exponent", gue}, {"gue_target", -6.0}, {"gue_tol", 0.4},
                    {"t0_err", t0_err}});
}

json gibbs_ordering(Context& ctx) {
  const std::size_t n = ctx.quick ? 1000 : 10000;
  const McScalar poi = gibbs_purity_mc(EnsembleKind::Poisson, 4, 10.0, n, ctx.stream());
  const McScalar gue = gibbs_purity_mc(EnsembleKind::GueNumeric, 4, 10.0, n, ctx.stream());
  const double se = std::hypot(poi.stderr, gue.stderr);
  const double separation = (poi.mean - gue.mean) / se;
  return criterion(8, "Gibbs purity ordering Poisson > GUE at d = 4, beta = 10",
                   separation >= 3.0,
                   {{"poi_mean", poi.mean}, {"poi_se", poi.stderr}, {"gue_mean", gue.mean},
                    {"gue_se", gue.stderr}, {"separation_sigma", separation},
                    {"required_sigma", 3.0}, {"samples", n}});
}

struct FormFactorSample {
  ScalarStats f2;
  ScalarStats f4;
};

json gue_numeric_vs_sampled(Context& ctx, json& info) {
  const std::size_t n = ctx.quick ? 1000 : 10000;
  const int d = 4;
  bool ok = true;
  json cases = json::array();
  json f4_cases = json::array();
  for (double t : {0.5, 1.0, 2.0}) {
    const RngStream rng = ctx.stream();
    auto chunks = run_chunks<FormFactorSample>(n, [&](std::size_t c, std::size_t b, std::size_t e) {
      RngStream local = rng.substream(c);
      FormFactorSample s;
      for (std::size_t i = b; i < e; ++i) {
        const double f2 = std::norm(f_of_t(sample_gue_spectrum(d, local), t));
        s.f2.add(f2);
        s.f4.add(f2 * f2);
      }
      return s;
    });
    FormFactorSample total;
    for (const auto& s : chunks) {
      total.f2.merge(s.f2);
      total.f4.merge(s.f4);
    }
    const AveragedFormFactors ff = gue_form_factors(t, d, EnsembleKind::GueNumeric);
    const double z = std::abs(ff.f2 - total.f2.mean()) / total.f2.stderr_mean();
    ok = ok && z <= kSigmas;
    cases.push_back({{"t", t}, {"numeric_f2", ff.f2}, {"mc_f2", total.f2.mean()},
                     {"mc_f2_se", total.f2.stderr_mean()}, {"z", z}});
    f4_cases.push_back({{"t", t}, {"f2_squared", ff.f4}, {"mc_f4", total.f4.mean()},
                        {"mc_f4_se", total.f4.stderr_mean()}});
  }
  info["gue_f4_factorisation_d4"] = f4_cases;
  return criterion(9, "GUE numeric f2 vs sampled spectra, d = 4", ok,
                   {{"samples", n}, {"cases", cases}, {"tolerance_z", kSigmas}});
}

json reproducibility(Context& ctx) {
  const BipartiteDims dims(2, 3);
  RngStream gen = ctx.stream();
  const ComplexMatrix m = random_hermitian(dims.d(), gen);
  const RngStream rng = ctx.stream();
  McScalar runs[2];
  const int workers[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    ScopedWorkerCount scope(workers[i]);
    runs[i] = empirical_reduced_norm(m, dims, 5 * kChunkSize + 17, rng);
  }
  const bool same = runs[0].mean == runs[1].mean && runs[0].stderr == runs[1].stderr &&
                    runs[0].variance == runs[1].variance;
  return criterion(10, "chunked Monte Carlo is independent of the worker count", same,
                   {{"mean_1_worker", runs[0].mean}, {"mean_8_workers", runs[1].mean}});
}

}  // namespace

nlohmann::json run_validation(const ValidationOptions& opts) {
  Context ctx{opts.seed, opts.quick, opts.quick ? std::size_t{1000} : std::size_t{100000},
              opts.quick ? std::size_t{1000} : std::size_t{10000}};
  json info = json::object();
  json criteria = json::array();
  criteria.push_back(moment_oracle(ctx));
  criteria.push_back(scalar_moments(ctx));
  criteria.push_back(uniform_average_variance(ctx));
  criteria.push_back(t0_identities(ctx));
  criteria.push_back(purity_asymptotics(ctx));
  criteria.push_back(ensemble_limits(ctx));
  criteria.push_back(decay_laws(ctx));
  criteria.push_back(gibbs_ordering(ctx));
  criteria.push_back(gue_numeric_vs_sampled(ctx, info));
  criteria.push_back(reproducibility(ctx));
  bool all = true;
  for (const auto& c : criteria) all = all && c["pass"].get<bool>();
  return {{"seed", opts.seed}, {"quick", opts.quick}, {"version", library_version()},
          {"criteria", criteria}, {"informational", info}, {"all_pass", all}};
}

}  // namespace haarmoments::app
