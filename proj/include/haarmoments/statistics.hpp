// statistics.hpp: mergeable sample moments for Monte Carlo estimates.

#pragma once

#include "haarmoments/linalg.hpp"

#include <cstddef>
#include <cstdint>

namespace haarmoments {

// Count, mean and central sums M2..M4; merging two accumulators is exact up to
// roundoff, so chunked runs reduce in a fixed order.
class ScalarStats {
 public:
  void add(double x);
  void merge(const ScalarStats& other);

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  // unbiased sample variance
  double variance() const noexcept;
  double stderr_mean() const noexcept;
  // standard error of the sample variance, from the fourth central moment
  double stderr_variance() const noexcept;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

// Entrywise mean and variance of complex matrix samples; real and imaginary
// parts are tracked separately.
class MatrixStats {
 public:
  MatrixStats() = default;
  explicit MatrixStats(int d);

  void add(const ComplexMatrix& x);
  void merge(const MatrixStats& other);

  std::size_t count() const noexcept { return n_; }
  const ComplexMatrix& mean() const noexcept { return mean_; }
  // stderr of the real part in .real(), of the imaginary part in .imag()
  ComplexMatrix stderr_mean() const;

 private:
  std::size_t n_ = 0;
  ComplexMatrix mean_;
  Eigen::ArrayXXd m2_re_;
  Eigen::ArrayXXd m2_im_;
};

struct McScalar {
  double mean = 0.0;
  double stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  double second_moment = 0.0;  // raw <x^2>
  std::size_t n = 0;
  std::uint64_t seed = 0;

  static McScalar from(const ScalarStats& s, std::uint64_t seed);
};

struct McMatrix {
  ComplexMatrix mean;
  ComplexMatrix stderr;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

}  // namespace haarmoments
