#include "haarmoments/statistics.hpp"

#include <cmath>

namespace haarmoments {

// ---------------------------------------------------------------- scalars

void ScalarStats::add(double x) {
  ScalarStats one;
  one.n_ = 1;
  one.mean_ = x;
  merge(one);
}

void ScalarStats::merge(const ScalarStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  const double d_n = delta / n;
  const double d_n2 = d_n * d_n;

  const double m2 = m2_ + o.m2_ + delta * d_n * na * nb;
  const double m3 = m3_ + o.m3_ + delta * d_n2 * na * nb * (na - nb) +
                    3.0 * d_n * (na * o.m2_ - nb * m2_);
  const double m4 = m4_ + o.m4_ + delta * d_n2 * d_n * na * nb * (na * na - na * nb + nb * nb) +
                    6.0 * d_n2 * (na * na * o.m2_ + nb * nb * m2_) +
                    4.0 * d_n * (na * o.m3_ - nb * m3_);

  mean_ += d_n * nb;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += o.n_;
}

double ScalarStats::variance() const noexcept {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double ScalarStats::stderr_mean() const noexcept {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double ScalarStats::stderr_variance() const noexcept {
  if (n_ < 4) return 0.0;
  const double n = static_cast<double>(n_);
  const double mu2 = m2_ / n;
  const double mu4 = m4_ / n;
  const double v = (mu4 - mu2 * mu2 * (n - 3.0) / (n - 1.0)) / n;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

McScalar McScalar::from(const ScalarStats& s, std::uint64_t seed) {
  McScalar r;
  r.mean = s.mean();
  r.stderr = s.stderr_mean();
  r.variance = s.variance();
  r.variance_stderr = s.stderr_variance();
  const double n = static_cast<double>(s.count());
  r.second_moment = s.count() ? s.mean() * s.mean() + s.variance() * (n - 1.0) / n : 0.0;
  r.n = s.count();
  r.seed = seed;
  return r;
}

// ---------------------------------------------------------------- matrices

MatrixStats::MatrixStats(int d)
    : mean_(ComplexMatrix::Zero(d, d)),
      m2_re_(Eigen::ArrayXXd::Zero(d, d)),
      m2_im_(Eigen::ArrayXXd::Zero(d, d)) {}

void MatrixStats::add(const ComplexMatrix& x) {
  ++n_;
  const ComplexMatrix delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  const ComplexMatrix after = x - mean_;
  m2_re_ += delta.real().array() * after.real().array();
  m2_im_ += delta.imag().array() * after.imag().array();
}

void MatrixStats::merge(const MatrixStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const ComplexMatrix delta = o.mean_ - mean_;
  m2_re_ += o.m2_re_ + delta.real().array().square() * (na * nb / n);
  m2_im_ += o.m2_im_ + delta.imag().array().square() * (na * nb / n);
  mean_ += delta * (nb / n);
  n_ += o.n_;
}

ComplexMatrix MatrixStats::stderr_mean() const {
  const Eigen::Index d = mean_.rows();
  if (n_ < 2) return ComplexMatrix::Zero(d, d);
  const double scale = 1.0 / (static_cast<double>(n_ - 1) * static_cast<double>(n_));
  ComplexMatrix out(d, d);
  out.real() = (m2_re_ * scale).sqrt().matrix();
  out.imag() = (m2_im_ * scale).sqrt().matrix();
  return out;
}

}  // namespace haarmoments
