// Shared fixtures for the unit tests: random operators drawn from a plain
// std::mt19937_64 so test inputs never depend on the library's own streams.

#pragma once

#include "haarmoments/linalg.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace test {

using haarmoments::Complex;
using haarmoments::ComplexMatrix;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  ComplexMatrix matrix(int d) {
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = Complex(normal(), normal());
    return m;
  }

  ComplexMatrix hermitian(int d) {
    const ComplexMatrix a = matrix(d);
    return 0.5 * (a + a.adjoint());
  }

  // rho = A A† / Tr(A A†), full rank almost surely
  ComplexMatrix state(int d) {
    const ComplexMatrix a = matrix(d);
    ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
  }

  ComplexMatrix pure_state(int d) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(normal(), normal());
    v.normalize();
    return v * v.adjoint();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// |x - y| in units of the standard error; an exact match with zero error is 0.
inline double z_score(double estimate, double stderr, double exact) {
  const double diff = std::abs(estimate - exact);
  if (diff <= 1e-12 * (1.0 + std::abs(exact))) return 0.0;
  return stderr > 0.0 ? diff / stderr : INFINITY;
}

// Largest entrywise z over real and imaginary parts (stderr packs both).
inline double max_z(const ComplexMatrix& mean, const ComplexMatrix& stderr, const ComplexMatrix& exact) {
  double z = 0.0;
  for (int i = 0; i < mean.rows(); ++i) {
    for (int j = 0; j < mean.cols(); ++j) {
      z = std::max(z, z_score(mean(i, j).real(), stderr(i, j).real(), exact(i, j).real()));
      z = std::max(z, z_score(mean(i, j).imag(), stderr(i, j).imag(), exact(i, j).imag()));
    }
  }
  return z;
}

}  // namespace test
