// applications.hpp: correlation distances, the depolarizing channel, purity
// evolution and thermalization built from the averaged coefficients.

#pragma once

#include "haarmoments/closed_forms.hpp"
#include "haarmoments/ensembles.hpp"
#include "haarmoments/linalg.hpp"
#include "haarmoments/statistics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace haarmoments {

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

// Haar average and variance of ||Tr_E{U (rho - rho') U†}||^2.
MeanVariance two_state_uniform(const ComplexMatrix& rho, const ComplexMatrix& rho_p,
                               const BipartiteDims& dims);

// Time-dependent average; c1(t) ||rho - rho'||^2 whenever both partial traces
// of rho - rho' vanish, the full four-term average otherwise.
double two_state_general(const ComplexMatrix& rho, const ComplexMatrix& rho_p,
                         const BipartiteDims& dims, const FormFactorInputs& ff);

// Average of U_t rho0 U_t† over W: a depolarizing channel with strength set by f2.
ComplexMatrix depolarizing_average(const ComplexMatrix& rho0, double f2, int d);

struct UniformPurity {
  double mean = 0.0;
  std::optional<double> variance_pure;  // only for pure total states
};

UniformPurity uniform_purity(double p_total, const BipartiteDims& dims);

struct PurityTrajectory {
  std::vector<double> times;
  std::vector<double> values;
  EnsembleKind ensemble = EnsembleKind::Uniform;
  BipartiteDims dims{2, 2};
  double p0 = 1.0;
};

// <P(rho_S(t))> for a pure total state with initial reduced purity p0.
double purity_at(const FormFactorInputs& ff, const BipartiteDims& dims, double p0);
PurityTrajectory purity_evolution(EnsembleKind ensemble, const BipartiteDims& dims, double p0,
                                  const std::vector<double>& times);

// Tr e^{-2 beta D} / (Tr e^{-beta D})^2
double gibbs_purity(const Spectrum& spec, double beta);

// Mean Gibbs purity over sampled spectra, chunked and reproducible.
McScalar gibbs_purity_mc(EnsembleKind ensemble, int d, double beta, std::size_t n,
                         const RngStream& rng);

// Haar average of ||rho_G - rho(t)||^2 for a closed system: P(rho_G) + P(rho(0)) - 2/d.
double closed_thermalization(double p_gibbs, double p0, int d);

struct ThermalizationParams {
  BipartiteDims dims{2, 2};
  double beta = 1.0;
  std::optional<double> p_gibbs;  // sampled with gibbs_purity_mc when absent
  double p0 = 1.0;                // P(rho(0))
  double p_s0 = 1.0;              // P(rho_S(0))
  double p_e0 = 1.0;              // P(rho_E(0))
  std::uint64_t seed = 42;
  std::size_t gibbs_samples = 10000;
};

struct ThermalizationCurve {
  std::vector<double> times;
  std::vector<double> values;
  EnsembleKind ensemble = EnsembleKind::Uniform;
  int d_s = 2;
  int d_e = 2;  // 0 for the d_E -> infinity limit
  double beta = 0.0;
  double p_gibbs = 0.0;
  double p0 = 1.0;
  double p_s0 = 1.0;
  double p_e0 = 1.0;
};

// <||Tr_E{rho_G - rho(t)}||^2> with ensemble-averaged coefficients.
ThermalizationCurve open_thermalization(const ThermalizationParams& params, EnsembleKind ensemble,
                                        const std::vector<double>& times);
// Same for one fixed spectrum (P(rho_G) exact, coefficients from f(t)).
ThermalizationCurve open_thermalization(const ThermalizationParams& params, const Spectrum& spec,
                                        const std::vector<double>& times);
// d_E -> infinity: (P(rho_S(0)) - 1/d_S) f4(t) with the leading-order f4.
ThermalizationCurve open_thermalization_large_env(EnsembleKind ensemble, int d_s, double p_s0,
                                                  const std::vector<double>& times);

// Slope of log(envelope) against log(t) on [t_lo, t_hi]; the envelope is the
// maximum over consecutive windows of width pi/2.
double fit_decay_exponent(const ThermalizationCurve& curve, double t_lo, double t_hi);

}  // namespace haarmoments
