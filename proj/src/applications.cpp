#include "haarmoments/applications.hpp"

#include "haarmoments/errors.hpp"
#include "haarmoments/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace haarmoments {

namespace {

void check_state(const ComplexMatrix& rho, int d, const char* who) {
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError(std::string(who) + ": state must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
  if (!is_density_matrix(rho)) throw InvalidState(std::string(who) + ": not a density matrix");
}

void check_purity(double p, int d, const char* who) {
  if (!(p >= 1.0 / d - 1e-12 && p <= 1.0 + 1e-12)) {
    throw DomainError(std::string(who) + ": purity " + std::to_string(p) + " outside [1/" +
                      std::to_string(d) + ", 1]");
  }
}

double thermalization_value(const UniformCoeffs& u, const TimeCoeffs& c, double p_gibbs,
                            double p0, double p_s0, double p_e0, int d_s) {
  return u.c1 * p_gibbs + u.c2 + c.c1 * p0 + c.c2 + c.c3 * p_s0 + c.c4 * p_e0 - 2.0 / d_s;
}

void check_params(const ThermalizationParams& p) {
  const int d = p.dims.d();
  if (p.beta < 0.0) throw DomainError("open_thermalization: beta must be >= 0");
  if (p.p_gibbs) check_purity(*p.p_gibbs, d, "open_thermalization");
  check_purity(p.p0, d, "open_thermalization");
  check_purity(p.p_s0, p.dims.d_s(), "open_thermalization");
  check_purity(p.p_e0, p.dims.d_e(), "open_thermalization");
}

ThermalizationCurve curve_header(const ThermalizationParams& p, EnsembleKind kind,
                                 const std::vector<double>& times, double p_gibbs) {
  ThermalizationCurve curve;
  curve.times = times;
  curve.ensemble = kind;
  curve.d_s = p.dims.d_s();
  curve.d_e = p.dims.d_e();
  curve.beta = p.beta;
  curve.p_gibbs = p_gibbs;
  curve.p0 = p.p0;
  curve.p_s0 = p.p_s0;
  curve.p_e0 = p.p_e0;
  return curve;
}

}  // namespace

// ---------------------------------------------------------------- distances

MeanVariance two_state_uniform(const ComplexMatrix& rho, const ComplexMatrix& rho_p,
                               const BipartiteDims& dims) {
  check_state(rho, dims.d(), "two_state_uniform");
  check_state(rho_p, dims.d(), "two_state_uniform");
  const ComplexMatrix delta = rho - rho_p;
  const double t2 = trace_power(delta, 2).real();
  const double t4 = trace_power(delta, 4).real();
  const VarianceCoeffs v = variance_coeffs(dims);
  return {uniform_coeffs(dims).c1 * hs_norm_sq(delta), std::max(0.0, v.c4 * t2 * t2 + v.c5 * t4)};
}

double two_state_general(const ComplexMatrix& rho, const ComplexMatrix& rho_p,
                         const BipartiteDims& dims, const FormFactorInputs& ff) {
  check_state(rho, dims.d(), "two_state_general");
  check_state(rho_p, dims.d(), "two_state_general");
  const ComplexMatrix delta = rho - rho_p;
  const TimeCoeffs c = time_coeffs(ff, dims);
  const bool marginals_match = partial_trace_env(delta, dims).cwiseAbs().maxCoeff() <= 1e-9 &&
                               partial_trace_sys(delta, dims).cwiseAbs().maxCoeff() <= 1e-9;
  if (marginals_match) return c.c1 * hs_norm_sq(delta);
  return general_average(delta, dims, c);
}

ComplexMatrix depolarizing_average(const ComplexMatrix& rho0, double f2, int d) {
  if (d < 2) throw DimensionError("depolarizing_average: d must be >= 2");
  check_state(rho0, d, "depolarizing_average");
  if (!(f2 >= 0.0 && f2 <= 1.0)) throw DomainError("depolarizing_average: f2 must lie in [0, 1]");
  const double dd = d;
  const double mixed = (dd * dd - dd * dd * f2) / (dd * dd - 1.0);
  const double keep = (dd * dd * f2 - 1.0) / (dd * dd - 1.0);
  return (mixed / dd) * ComplexMatrix::Identity(d, d) + keep * rho0;
}

// ---------------------------------------------------------------- purity

UniformPurity uniform_purity(double p_total, const BipartiteDims& dims) {
  check_purity(p_total, dims.d(), "uniform_purity");
  const double ds = dims.d_s();
  const double de = dims.d_e();
  UniformPurity out;
  out.mean = ((ds * ds * de - de) * p_total + ds * de * de - ds) / (ds * ds * de * de - 1.0);
  if (p_total == 1.0) {
    const double d = dims.d();
    out.variance_pure = 2.0 * (de * de - 1.0) * (ds * ds - 1.0) /
                        ((d + 1.0) * (d + 1.0) * (d + 2.0) * (d + 3.0));
  }
  return out;
}

double purity_at(const FormFactorInputs& ff, const BipartiteDims& dims, double p0) {
  const double d = dims.d();
  const double sum = dims.d_s() + dims.d_e();
  const double g = 4.0 * ff.f2 - ff.f2_2t - d * d * ff.f4;
  const double re = ff.re_f2fc2t;
  return sum / (d + 1.0) + sum * (g - 2.0 * d * re) / ((d - 1.0) * (d + 1.0) * (d + 3.0)) +
         (2.0 * d * re - g) / ((d - 1.0) * (d + 3.0)) * p0;
}

PurityTrajectory purity_evolution(EnsembleKind ensemble, const BipartiteDims& dims, double p0,
                                  const std::vector<double>& times) {
  check_purity(p0, dims.d_s(), "purity_evolution");
  PurityTrajectory traj;
  traj.times = times;
  traj.ensemble = ensemble;
  traj.dims = dims;
  traj.p0 = p0;
  traj.values.reserve(times.size());
  for (double t : times) {
    traj.values.push_back(purity_at(averaged_form_factors(ensemble, t, dims.d()), dims, p0));
  }
  return traj;
}

// ---------------------------------------------------------------- thermal

double gibbs_purity(const Spectrum& spec, double beta) {
  if (beta < 0.0) throw DomainError("gibbs_purity: beta must be >= 0");
  const auto& levels = spec.levels();
  const double e_min = *std::min_element(levels.begin(), levels.end());
  double z1 = 0.0;
  double z2 = 0.0;
  for (double e : levels) {
    const double w = std::exp(-beta * (e - e_min));
    z1 += w;
    z2 += w * w;
  }
  return z2 / (z1 * z1);
}

McScalar gibbs_purity_mc(EnsembleKind ensemble, int d, double beta, std::size_t n,
                         const RngStream& rng) {
  if (ensemble == EnsembleKind::Uniform) {
    throw DomainError("gibbs_purity_mc: needs a spectral ensemble (poi or gue)");
  }
  if (d < 1) throw DimensionError("gibbs_purity_mc: d must be >= 1");
  auto chunks = run_chunks<ScalarStats>(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
    RngStream local = rng.substream(c);
    ScalarStats s;
    for (std::size_t i = begin; i < end; ++i) {
      s.add(gibbs_purity(sample_spectrum(ensemble, d, local), beta));
    }
    return s;
  });
  ScalarStats total;
  for (const auto& s : chunks) total.merge(s);
  return McScalar::from(total, rng.seed());
}

double closed_thermalization(double p_gibbs, double p0, int d) {
  if (d < 1) throw DimensionError("closed_thermalization: d must be >= 1");
  check_purity(p_gibbs, d, "closed_thermalization");
  check_purity(p0, d, "closed_thermalization");
  return p_gibbs + p0 - 2.0 / d;
}

ThermalizationCurve open_thermalization(const ThermalizationParams& params, EnsembleKind ensemble,
                                        const std::vector<double>& times) {
  check_params(params);
  double p_gibbs = 0.0;
  if (params.p_gibbs) {
    p_gibbs = *params.p_gibbs;
  } else {
    p_gibbs = gibbs_purity_mc(ensemble, params.dims.d(), params.beta, params.gibbs_samples,
                              RngStream(params.seed, 0x61bb5))
                  .mean;
  }
  ThermalizationCurve curve = curve_header(params, ensemble, times, p_gibbs);
  const UniformCoeffs u = uniform_coeffs(params.dims);
  for (double t : times) {
    const TimeCoeffs c = averaged_time_coeffs(ensemble, t, params.dims);
    curve.values.push_back(thermalization_value(u, c, p_gibbs, params.p0, params.p_s0,
                                                params.p_e0, params.dims.d_s()));
  }
  return curve;
}

ThermalizationCurve open_thermalization(const ThermalizationParams& params, const Spectrum& spec,
                                        const std::vector<double>& times) {
  check_params(params);
  if (spec.dim() != params.dims.d()) {
    throw DimensionError("open_thermalization: spectrum size does not match d");
  }
  const double p_gibbs = params.p_gibbs ? *params.p_gibbs : gibbs_purity(spec, params.beta);
  ThermalizationCurve curve = curve_header(params, EnsembleKind::Uniform, times, p_gibbs);
  const UniformCoeffs u = uniform_coeffs(params.dims);
  for (double t : times) {
    const TimeCoeffs c = time_coeffs(FormFactorInputs::from_spectrum(spec, t), params.dims);
    curve.values.push_back(thermalization_value(u, c, p_gibbs, params.p0, params.p_s0,
                                                params.p_e0, params.dims.d_s()));
  }
  return curve;
}

ThermalizationCurve open_thermalization_large_env(EnsembleKind ensemble, int d_s, double p_s0,
                                                  const std::vector<double>& times) {
  if (d_s < 2) throw DimensionError("open_thermalization_large_env: d_s must be >= 2");
  check_purity(p_s0, d_s, "open_thermalization_large_env");
  ThermalizationCurve curve;
  curve.times = times;
  curve.ensemble = ensemble;
  curve.d_s = d_s;
  curve.d_e = 0;
  curve.p_s0 = p_s0;
  // C1 -> 0 and C2 -> 1/d_S; P(rho_G) and P(rho_E(0)) drop out.
  const UniformCoeffs u{0.0, 1.0 / d_s};
  for (double t : times) {
    const TimeCoeffs c = large_environment_time_coeffs(ensemble, t, d_s);
    curve.values.push_back(thermalization_value(u, c, 0.0, 1.0, p_s0, 1.0, d_s));
  }
  return curve;
}

double fit_decay_exponent(const ThermalizationCurve& curve, double t_lo, double t_hi) {
  if (!(t_hi > t_lo) || t_lo <= 0.0) {
    throw DomainError("fit_decay_exponent: need 0 < t_lo < t_hi");
  }
  if (curve.times.size() != curve.values.size()) {
    throw DimensionError("fit_decay_exponent: times and values differ in length");
  }
  constexpr double width = 0.5 * std::numbers::pi;
  const int windows = static_cast<int>(std::floor((t_hi - t_lo) / width + 1e-12));
  std::vector<double> xs;
  std::vector<double> ys;
  for (int w = 0; w < windows; ++w) {
    const double lo = t_lo + w * width;
    const double hi = lo + width;
    double best = -std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
      const double t = curve.times[i];
      if (t >= lo && t < hi && curve.values[i] > best) {
        best = curve.values[i];
        best_t = t;
      }
    }
    if (!std::isfinite(best)) continue;
    if (best <= 0.0) {
      throw DomainError("fit_decay_exponent: envelope is not positive near t = " +
                        std::to_string(best_t));
    }
    xs.push_back(std::log(best_t));
    ys.push_back(std::log(best));
  }
  if (xs.size() < 4) {
    throw DomainError("fit_decay_exponent: fewer than 4 envelope points in the window");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace haarmoments
