#include "haarmoments/ensembles.hpp"

#include "haarmoments/errors.hpp"
#include "haarmoments/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

namespace haarmoments {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Uniform: return "uniform";
    case EnsembleKind::Poisson: return "poi";
    case EnsembleKind::GueNumeric: return "gue";
    case EnsembleKind::GueLargeD: return "gue-large-d";
  }
  return "?";
}

EnsembleKind parse_ensemble(std::string_view name) {
  if (name == "uniform") return EnsembleKind::Uniform;
  if (name == "poi" || name == "poisson") return EnsembleKind::Poisson;
  if (name == "gue") return EnsembleKind::GueNumeric;
  if (name == "gue-large-d") return EnsembleKind::GueLargeD;
  throw DomainError("unknown ensemble '" + std::string(name) +
                    "' (expected uniform, poi, gue or gue-large-d)");
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// ---------------------------------------------------------------- Bessel

namespace {

constexpr double kBesselSwitch = 12.0;

// sum_k (-1)^k (x/2)^{2k} / (k! (k+1)!) = 2 J1(x) / x
double j1_series_ratio(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double j1_asymptotic(double x) {
  // Hankel expansion with mu = 4, truncated at the smallest term.
  constexpr double mu = 4.0;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) >= previous) break;
    previous = std::abs(term);
    // k = 1, 2, 3, 4 -> q += a1, p -= a2, q -= a3, p += a4
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// J1(2t)/t with the value 1 at t = 0
double j1_2t_over_t(double t) {
  const double x = 2.0 * t;
  if (std::abs(x) < kBesselSwitch) return j1_series_ratio(x);
  return bessel_j1(x) / t;
}

}  // namespace

namespace detail {
double bessel_j1_series(double x) { return 0.5 * x * j1_series_ratio(x); }
double bessel_j1_asymptotic(double x) { return x < 0.0 ? -j1_asymptotic(-x) : j1_asymptotic(x); }
}  // namespace detail

double bessel_j1(double x) {
  const double ax = std::abs(x);
  const double value = ax < kBesselSwitch ? 0.5 * ax * j1_series_ratio(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -value : value;
}

// ---------------------------------------------------------------- Poisson

AveragedFormFactors poisson_form_factors(double t, int d) {
  if (d < 1) throw DomainError("poisson_form_factors: d must be >= 1");
  const double dd = d;
  const double s2 = sinc(2.0 * t);
  const double s4 = sinc(4.0 * t);
  const double c2 = std::cos(2.0 * t);
  auto f2_at = [&](double s) { return 1.0 / dd + (dd - 1.0) / dd * s * s; };

  AveragedFormFactors ff;
  ff.ensemble = EnsembleKind::Poisson;
  ff.t = t;
  ff.d = d;
  ff.f2 = f2_at(s2);
  ff.f2_2t = f2_at(s4);
  ff.re_f2fc2t = 1.0 / (dd * dd) + (dd - 1.0) / (dd * dd) * s4 * s4 +
                 2.0 * (dd - 1.0) / (dd * dd) * s2 * s2 +
                 (dd - 2.0) * (dd - 1.0) / (dd * dd) * c2 * s2 * s2 * s2;
  const double d3 = dd * dd * dd;
  // pairing {jk}{lm} contributes sinc(4t)^2, not 1
  ff.f4 = (2.0 * dd - 1.0) / d3 + (dd - 1.0) / d3 * s4 * s4 +
          4.0 * (dd - 1.0) * (dd - 1.0) / d3 * s2 * s2 +
          2.0 * (dd - 1.0) * (dd - 2.0) / d3 * c2 * s2 * s2 * s2 +
          (dd - 1.0) * (dd - 2.0) * (dd - 3.0) / d3 * s2 * s2 * s2 * s2;
  return ff;
}

// ---------------------------------------------------------------- GUE

namespace {

// psi_k(y) for k < n, normalised Hermite functions (∫ psi_k^2 dy = 1).
void hermite_functions(double y, int n, std::vector<double>& psi) {
  psi.resize(static_cast<std::size_t>(n));
  psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  if (n > 1) psi[1] = std::numbers::sqrt2 * y * psi[0];
  for (int k = 1; k + 1 < n; ++k) {
    psi[static_cast<std::size_t>(k + 1)] =
        std::sqrt(2.0 / (k + 1)) * y * psi[static_cast<std::size_t>(k)] -
        std::sqrt(static_cast<double>(k) / (k + 1)) * psi[static_cast<std::size_t>(k - 1)];
  }
}

// Integration half-width: beyond sqrt(2/d)(sqrt(2d+1) + 8) every phi_k^2 is
// below exp(-60) relative to its peak.
double gue_half_width(int d) {
  return std::sqrt(2.0 / d) * (std::sqrt(2.0 * d + 1.0) + 8.0);
}

QuadratureOptions gue_quadrature(double t, int d) {
  QuadratureOptions opts;
  const double span = 2.0 * gue_half_width(d);
  // about two panels per oscillation of exp(-iEt)
  opts.initial_panels = 16 + static_cast<int>(std::ceil(span * std::abs(t) / std::numbers::pi));
  opts.max_panels = std::max(10000, 4 * opts.initial_panels);
  return opts;
}

void check_numeric_dim(int d, const char* who) {
  if (d < 1 || d > kMaxGueNumericDim) {
    throw DomainError(std::string(who) + ": GUE numeric quadrature supports 1 <= d <= " +
                      std::to_string(kMaxGueNumericDim) + " (got " + std::to_string(d) +
                      "); use gue-large-d");
  }
}

void warn_large_d(int d) {
  static std::atomic<bool> warned{false};
  if (d < 16 && !warned.exchange(true)) {
    std::cerr << "warning: gue-large-d is the leading order in 1/d; d = " << d
              << " is below 16\n";
  }
}

// Overlaps A_kl(t) = ∫ phi_k phi_l exp(-iEt) dE, packed upper triangle (k <= l).
std::vector<Complex> gue_overlaps(double t, int d) {
  const double scale = std::sqrt(d / 2.0);
  const std::size_t n = static_cast<std::size_t>(d) * (d + 1) / 2;
  std::vector<double> psi;
  VectorIntegrand f = [&](double e, std::vector<Complex>& out) {
    // phi_k(E)^2 dE = psi_k(y)^2 dy with y = sqrt(d/2) E
    hermite_functions(scale * e, d, psi);
    const Complex phase = std::polar(scale, -e * t);
    std::size_t idx = 0;
    for (int k = 0; k < d; ++k) {
      for (int l = k; l < d; ++l) {
        out[idx++] = phase * (psi[static_cast<std::size_t>(k)] * psi[static_cast<std::size_t>(l)]);
      }
    }
  };
  const double half = gue_half_width(d);
  return integrate(f, n, -half, half, gue_quadrature(t, d));
}

struct GueNumericPoint {
  Complex h;
  double f2;
};

GueNumericPoint gue_numeric_point(double t, int d) {
  const std::vector<Complex> a = gue_overlaps(t, d);
  Complex trace = 0.0;
  double sum_sq = 0.0;
  std::size_t idx = 0;
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      const Complex v = a[idx++];
      if (k == l) trace += v;
      sum_sq += (k == l ? 1.0 : 2.0) * std::norm(v);
    }
  }
  const double dd = d;
  const Complex h = trace / dd;
  const double f2 = 1.0 / dd + std::norm(h) - sum_sq / (dd * dd);
  return {h, f2};
}

}  // namespace

double gue_level_density(double energy, int d) {
  if (d < 1 || d > kMaxGueDensityDim) {
    throw DomainError("gue_level_density: supports 1 <= d <= " +
                      std::to_string(kMaxGueDensityDim) + " (got " + std::to_string(d) + ")");
  }
  const double scale = std::sqrt(d / 2.0);
  std::vector<double> psi;
  hermite_functions(scale * energy, d, psi);
  double sum = 0.0;
  for (double v : psi) sum += v * v;
  return scale * sum;
}

Complex gue_h(double t, int d, EnsembleKind mode) {
  if (mode == EnsembleKind::GueLargeD) {
    warn_large_d(d);
    return j1_2t_over_t(t);
  }
  if (mode != EnsembleKind::GueNumeric) throw DomainError("gue_h: mode must be a GUE ensemble");
  check_numeric_dim(d, "gue_h");
  if (t == 0.0) return 1.0;
  VectorIntegrand f = [&](double e, std::vector<Complex>& out) {
    out[0] = gue_level_density(e, d) * std::polar(1.0, -e * t);
  };
  const double half = gue_half_width(d);
  return integrate(f, 1, -half, half, gue_quadrature(t, d))[0] / static_cast<double>(d);
}

AveragedFormFactors gue_form_factors(double t, int d, EnsembleKind mode) {
  AveragedFormFactors ff;
  ff.ensemble = mode;
  ff.t = t;
  ff.d = d;
  if (t == 0.0) return ff;
  if (mode == EnsembleKind::GueLargeD) {
    warn_large_d(d);
    const double h = j1_2t_over_t(t);
    const double h_2t = j1_2t_over_t(2.0 * t);
    ff.f2 = h * h;
    ff.f2_2t = h_2t * h_2t;
    ff.re_f2fc2t = h * h * h_2t;
    ff.f4 = ff.f2 * ff.f2;
    return ff;
  }
  if (mode != EnsembleKind::GueNumeric) {
    throw DomainError("gue_form_factors: mode must be a GUE ensemble");
  }
  check_numeric_dim(d, "gue_form_factors");
  const GueNumericPoint at_t = gue_numeric_point(t, d);
  const GueNumericPoint at_2t = gue_numeric_point(2.0 * t, d);
  ff.f2 = at_t.f2;
  ff.f2_2t = at_2t.f2;
  ff.re_f2fc2t = (at_t.h * at_t.h * std::conj(at_2t.h)).real();
  ff.f4 = ff.f2 * ff.f2;
  return ff;
}

AveragedFormFactors averaged_form_factors(EnsembleKind kind, double t, int d) {
  switch (kind) {
    case EnsembleKind::Poisson: return poisson_form_factors(t, d);
    case EnsembleKind::GueNumeric:
    case EnsembleKind::GueLargeD: return gue_form_factors(t, d, kind);
    case EnsembleKind::Uniform: break;
  }
  AveragedFormFactors ff;
  ff.ensemble = EnsembleKind::Uniform;
  ff.t = t;
  ff.d = d;
  if (t != 0.0) ff.f2 = ff.f2_2t = ff.re_f2fc2t = ff.f4 = 0.0;
  return ff;
}

AveragedFormFactors large_environment_form_factors(EnsembleKind kind, double t) {
  AveragedFormFactors ff;
  ff.ensemble = kind;
  ff.t = t;
  switch (kind) {
    case EnsembleKind::Poisson: {
      const double s = sinc(2.0 * t);
      const double s_2t = sinc(4.0 * t);
      ff.f2 = s * s;
      ff.f2_2t = s_2t * s_2t;
      ff.re_f2fc2t = std::cos(2.0 * t) * s * s * s;
      ff.f4 = s * s * s * s;
      return ff;
    }
    case EnsembleKind::GueNumeric:
    case EnsembleKind::GueLargeD: {
      const double h = j1_2t_over_t(t);
      const double h_2t = j1_2t_over_t(2.0 * t);
      ff.f2 = h * h;
      ff.f2_2t = h_2t * h_2t;
      ff.re_f2fc2t = h * h * h_2t;
      ff.f4 = ff.f2 * ff.f2;
      return ff;
    }
    case EnsembleKind::Uniform: break;
  }
  if (t != 0.0) ff.f2 = ff.f2_2t = ff.re_f2fc2t = ff.f4 = 0.0;
  return ff;
}

TimeCoeffs averaged_time_coeffs(EnsembleKind kind, double t, const BipartiteDims& dims) {
  return time_coeffs(averaged_form_factors(kind, t, dims.d()), dims);
}

TimeCoeffs large_environment_time_coeffs(EnsembleKind kind, double t, int d_s) {
  if (d_s < 2) throw DimensionError("large_environment_time_coeffs: d_s must be >= 2");
  const double f4 = large_environment_form_factors(kind, t).f4;
  TimeCoeffs c;
  c.c2 = (1.0 - f4) / d_s;
  c.c3 = f4;
  return c;
}

// ---------------------------------------------------------------- samplers

Spectrum sample_poisson_spectrum(int d, RngStream& rng) {
  if (d < 1) throw DimensionError("sample_poisson_spectrum: d must be >= 1");
  std::vector<double> levels(static_cast<std::size_t>(d));
  for (double& e : levels) e = rng.uniform(-2.0, 2.0);
  return Spectrum(std::move(levels));
}

Spectrum sample_gue_spectrum(int d, RngStream& rng) {
  if (d < 1) throw DimensionError("sample_gue_spectrum: d must be >= 1");
  return Spectrum(hermitian_eigenvalues(sample_gue_hamiltonian(d, rng)));
}

Spectrum sample_spectrum(EnsembleKind kind, int d, RngStream& rng) {
  switch (kind) {
    case EnsembleKind::Poisson: return sample_poisson_spectrum(d, rng);
    case EnsembleKind::GueNumeric:
    case EnsembleKind::GueLargeD: return sample_gue_spectrum(d, rng);
    case EnsembleKind::Uniform: break;
  }
  throw DomainError("sample_spectrum: the uniform ensemble has no spectrum");
}

}  // namespace haarmoments
