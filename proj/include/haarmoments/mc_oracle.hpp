// mc_oracle.hpp: brute-force Monte Carlo estimates of Haar averages, built on
// linalg primitives only so they stay independent of the analytic results.

#pragma once

#include "haarmoments/ensembles.hpp"
#include "haarmoments/linalg.hpp"
#include "haarmoments/statistics.hpp"

#include <cstddef>
#include <span>
#include <variant>

namespace haarmoments {

inline constexpr std::size_t kDefaultScalarSamples = 100000;
inline constexpr std::size_t kDefaultMatrixSamples = 10000;

// A fixed spectrum, or an ensemble to draw a fresh spectrum from per sample.
// EnsembleKind::Uniform means U = 1 at t = 0 and Haar U otherwise.
using SpectrumSource = std::variant<Spectrum, EnsembleKind>;

// Initial pure state: |0>|0>, or sum_i sqrt(l_i)|i>|i> with l_1 = x and the
// remaining Schmidt weights equal, x chosen so the reduced purity is p0.
struct InitialState {
  enum class Kind { Product, Entangled };
  Kind kind = Kind::Product;
  double p0 = 1.0;

  static InitialState product() { return {}; }
  static InitialState entangled(double p0) { return {Kind::Entangled, p0}; }

  ComplexMatrix vector(const BipartiteDims& dims) const;  // d x 1
  double reduced_purity() const { return kind == Kind::Product ? 1.0 : p0; }
};

// Mean of U X_1 U† X_2 U X_3 U† ... over Haar U, for any odd number of X's.
McMatrix empirical_moment(std::span<const ComplexMatrix> xs, int d, std::size_t n,
                          const RngStream& rng);

// ||Tr_E{U M U†}||^2 over Haar U; mean, variance and their errors.
McScalar empirical_reduced_norm(const ComplexMatrix& m, const BipartiteDims& dims, std::size_t n,
                                const RngStream& rng);

// ||Tr_E{U_t M U_t†}||^2 with U_t = W e^{-iDt} W†, W Haar.
McScalar empirical_fixed_spectrum(const ComplexMatrix& m, const BipartiteDims& dims,
                                  const SpectrumSource& source, double t, std::size_t n,
                                  const RngStream& rng);

// Tr (Tr_E rho(t))^2 for rho(t) = U_t |psi0><psi0| U_t†.
McScalar empirical_purity(const BipartiteDims& dims, const SpectrumSource& source,
                          const InitialState& psi0, double t, std::size_t n,
                          const RngStream& rng);

// ||rho_G - rho(t)||^2 for a closed system with H = W D W†, rho_G = e^{-beta H}/Z.
McScalar empirical_closed_distance(const SpectrumSource& source, double beta,
                                   const ComplexMatrix& rho0, double t, std::size_t n,
                                   const RngStream& rng);

// ||Tr_E{rho_G - rho(t)}||^2 for the same setup on a bipartite space.
McScalar empirical_open_distance(const BipartiteDims& dims, const SpectrumSource& source,
                                 double beta, const InitialState& psi0, double t, std::size_t n,
                                 const RngStream& rng);

}  // namespace haarmoments
