#include "haarmoments/mc_oracle.hpp"

#include "haarmoments/errors.hpp"
#include "haarmoments/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haarmoments {

namespace {

// Runs sample(rng) n times in fixed chunks and merges per-chunk statistics in
// chunk order.
template <class Sample>
ScalarStats scalar_run(std::size_t n, const RngStream& rng, Sample&& sample) {
  auto chunks = run_chunks<ScalarStats>(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
    RngStream local = rng.substream(c);
    ScalarStats s;
    for (std::size_t i = begin; i < end; ++i) s.add(sample(local));
    return s;
  });
  ScalarStats total;
  for (const auto& s : chunks) total.merge(s);
  return total;
}

struct Dynamics {
  ComplexMatrix w;               // Haar W
  std::vector<double> levels;    // D
};

Dynamics draw(const SpectrumSource& source, int d, RngStream& rng) {
  Dynamics dyn;
  if (const auto* spec = std::get_if<Spectrum>(&source)) {
    if (spec->dim() != d) {
      throw DimensionError("Monte Carlo: spectrum has " + std::to_string(spec->dim()) +
                           " levels, expected " + std::to_string(d));
    }
    dyn.levels = spec->levels();
  } else {
    const EnsembleKind kind = std::get<EnsembleKind>(source);
    if (kind == EnsembleKind::Uniform) {
      dyn.w = sample_haar_unitary(d, rng);
      return dyn;
    }
    dyn.levels = sample_spectrum(kind, d, rng).levels();
  }
  dyn.w = sample_haar_unitary(d, rng);
  return dyn;
}

// U_t = W e^{-iDt} W†; for the uniform source the identity at t = 0, else W.
ComplexMatrix propagator(const Dynamics& dyn, double t) {
  const Eigen::Index d = dyn.w.rows();
  if (dyn.levels.empty()) return t == 0.0 ? ComplexMatrix::Identity(d, d) : dyn.w;
  Eigen::VectorXcd phases(d);
  for (Eigen::Index j = 0; j < d; ++j) phases(j) = std::polar(1.0, -dyn.levels[static_cast<std::size_t>(j)] * t);
  return dyn.w * phases.asDiagonal() * dyn.w.adjoint();
}

ComplexMatrix gibbs_state(const Dynamics& dyn, double beta) {
  if (dyn.levels.empty()) throw DomainError("Monte Carlo: a Gibbs state needs a spectrum");
  const double e_min = *std::min_element(dyn.levels.begin(), dyn.levels.end());
  const Eigen::Index d = dyn.w.rows();
  Eigen::VectorXcd weights(d);
  double z = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double w = std::exp(-beta * (dyn.levels[static_cast<std::size_t>(j)] - e_min));
    weights(j) = w;
    z += w;
  }
  weights /= z;
  return dyn.w * weights.asDiagonal() * dyn.w.adjoint();
}

void check_square(const ComplexMatrix& m, int d, const char* who) {
  if (m.rows() != d || m.cols() != d) {
    throw DimensionError(std::string(who) + ": operator must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
}

}  // namespace

ComplexMatrix InitialState::vector(const BipartiteDims& dims) const {
  ComplexMatrix psi = ComplexMatrix::Zero(dims.d(), 1);
  const int r = std::min(dims.d_s(), dims.d_e());
  if (kind == Kind::Product || r == 1) {
    psi(0, 0) = 1.0;
    return psi;
  }
  if (p0 < 1.0 / r - 1e-12 || p0 > 1.0 + 1e-12) {
    throw DomainError("InitialState: reduced purity must lie in [1/" + std::to_string(r) + ", 1]");
  }
  // x^2 + (1 - x)^2 / (r - 1) = p0, larger root
  const double x = (1.0 + std::sqrt(std::max(0.0, (r - 1.0) * (r * p0 - 1.0)))) / r;
  const double rest = (1.0 - x) / (r - 1.0);
  for (int i = 0; i < r; ++i) {
    psi(i * dims.d_e() + i, 0) = std::sqrt(std::max(0.0, i == 0 ? x : rest));
  }
  return psi;
}

McMatrix empirical_moment(std::span<const ComplexMatrix> xs, int d, std::size_t n,
                          const RngStream& rng) {
  if (xs.empty() || xs.size() % 2 == 0) {
    throw DimensionError("empirical_moment: number of operators must be odd");
  }
  if (d < 1) throw DimensionError("empirical_moment: d must be >= 1");
  for (const auto& x : xs) check_square(x, d, "empirical_moment");

  auto chunks = run_chunks<MatrixStats>(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
    RngStream local = rng.substream(c);
    MatrixStats s(d);
    for (std::size_t i = begin; i < end; ++i) {
      const ComplexMatrix u = sample_haar_unitary(d, local);
      const ComplexMatrix ud = u.adjoint();
      ComplexMatrix w = u;
      for (std::size_t k = 0; k < xs.size(); ++k) w = (w * xs[k]) * (k % 2 == 0 ? ud : u);
      s.add(w);
    }
    return s;
  });
  MatrixStats total(d);
  for (const auto& s : chunks) total.merge(s);
  return {total.mean(), total.stderr_mean(), total.count(), rng.seed()};
}

McScalar empirical_reduced_norm(const ComplexMatrix& m, const BipartiteDims& dims, std::size_t n,
                                const RngStream& rng) {
  check_square(m, dims.d(), "empirical_reduced_norm");
  const ScalarStats s = scalar_run(n, rng, [&](RngStream& local) {
    const ComplexMatrix u = sample_haar_unitary(dims.d(), local);
    return hs_norm_sq(partial_trace_env(u * m * u.adjoint(), dims));
  });
  return McScalar::from(s, rng.seed());
}

McScalar empirical_fixed_spectrum(const ComplexMatrix& m, const BipartiteDims& dims,
                                  const SpectrumSource& source, double t, std::size_t n,
                                  const RngStream& rng) {
  check_square(m, dims.d(), "empirical_fixed_spectrum");
  const ScalarStats s = scalar_run(n, rng, [&](RngStream& local) {
    const ComplexMatrix u = propagator(draw(source, dims.d(), local), t);
    return hs_norm_sq(partial_trace_env(u * m * u.adjoint(), dims));
  });
  return McScalar::from(s, rng.seed());
}

McScalar empirical_purity(const BipartiteDims& dims, const SpectrumSource& source,
                          const InitialState& psi0, double t, std::size_t n,
                          const RngStream& rng) {
  const ComplexMatrix psi = psi0.vector(dims);
  const ScalarStats s = scalar_run(n, rng, [&](RngStream& local) {
    const ComplexMatrix phi = propagator(draw(source, dims.d(), local), t) * psi;
    return hs_norm_sq(partial_trace_env(phi * phi.adjoint(), dims));
  });
  return McScalar::from(s, rng.seed());
}

McScalar empirical_closed_distance(const SpectrumSource& source, double beta,
                                   const ComplexMatrix& rho0, double t, std::size_t n,
                                   const RngStream& rng) {
  const int d = static_cast<int>(rho0.rows());
  check_square(rho0, d, "empirical_closed_distance");
  const ScalarStats s = scalar_run(n, rng, [&](RngStream& local) {
    const Dynamics dyn = draw(source, d, local);
    const ComplexMatrix u = propagator(dyn, t);
    return hs_norm_sq(gibbs_state(dyn, beta) - u * rho0 * u.adjoint());
  });
  return McScalar::from(s, rng.seed());
}

McScalar empirical_open_distance(const BipartiteDims& dims, const SpectrumSource& source,
                                 double beta, const InitialState& psi0, double t, std::size_t n,
                                 const RngStream& rng) {
  const ComplexMatrix psi = psi0.vector(dims);
  const ScalarStats s = scalar_run(n, rng, [&](RngStream& local) {
    const Dynamics dyn = draw(source, dims.d(), local);
    const ComplexMatrix phi = propagator(dyn, t) * psi;
    return hs_norm_sq(partial_trace_env(gibbs_state(dyn, beta) - phi * phi.adjoint(), dims));
  });
  return McScalar::from(s, rng.seed());
}

}  // namespace haarmoments
