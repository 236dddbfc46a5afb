// ensembles.hpp: Poisson and GUE averages of the spectral form factors, level
// samplers and J1.

#pragma once

#include "haarmoments/closed_forms.hpp"
#include "haarmoments/linalg.hpp"

#include <string>
#include <string_view>

namespace haarmoments {

inline constexpr int kMaxGueNumericDim = 16;
inline constexpr int kMaxGueDensityDim = 64;

enum class EnsembleKind { Uniform, Poisson, GueNumeric, GueLargeD };

// uniform | poi | gue | gue-large-d
std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble(std::string_view name);

struct AveragedFormFactors : FormFactorInputs {
  EnsembleKind ensemble = EnsembleKind::Uniform;
  double t = 0.0;
  int d = 0;
};

// sin(x)/x with the x -> 0 limit
double sinc(double x);

// J1(x): power series for |x| < 12, Hankel expansion beyond.
double bessel_j1(double x);

namespace detail {
// The two branches of bessel_j1, exposed for the continuity check.
double bessel_j1_series(double x);
double bessel_j1_asymptotic(double x);
}  // namespace detail

// Levels i.i.d. uniform on [-2, 2].
AveragedFormFactors poisson_form_factors(double t, int d);

// R1(E) = sum_{k<d} phi_k(E)^2 with the scaled Hermite functions, d <= 64.
double gue_level_density(double energy, int d);

// <f(t)> for the GUE. GueNumeric integrates R1 (d <= 16); GueLargeD is J1(2t)/t.
Complex gue_h(double t, int d, EnsembleKind mode);

// GueNumeric: exact two-point |f|^2 from R2 = R1 R1 - K^2, re and f4 factorised
// as Re{h(t)^2 h*(2t)} and <|f|^2>^2. GueLargeD: |h|^2, Re{h^2 h*(2t)}, |h|^4.
AveragedFormFactors gue_form_factors(double t, int d, EnsembleKind mode);

// Dispatch on the ensemble. Uniform means U_t = 1 at t = 0 and Haar for t > 0.
AveragedFormFactors averaged_form_factors(EnsembleKind kind, double t, int d);

// Leading order for d -> infinity: Poisson f2 = s^2, re = cos(2t) s^3, f4 = s^4
// with s = sinc(2t); GUE (either mode) uses h = J1(2t)/t. d is reported as 0.
AveragedFormFactors large_environment_form_factors(EnsembleKind kind, double t);

TimeCoeffs averaged_time_coeffs(EnsembleKind kind, double t, const BipartiteDims& dims);

// Limit of the averaged coefficients for d_E -> infinity at fixed d_S:
// (0, (1 - f4)/d_S, f4, 0) with the leading-order f4.
TimeCoeffs large_environment_time_coeffs(EnsembleKind kind, double t, int d_s);

Spectrum sample_poisson_spectrum(int d, RngStream& rng);
// Eigenvalues of sample_gue_hamiltonian, ascending.
Spectrum sample_gue_spectrum(int d, RngStream& rng);
// Poisson -> uniform levels, either GUE mode -> GUE levels.
Spectrum sample_spectrum(EnsembleKind kind, int d, RngStream& rng);

}  // namespace haarmoments
