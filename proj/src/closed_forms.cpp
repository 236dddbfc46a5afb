#include "haarmoments/closed_forms.hpp"

#include "haarmoments/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haarmoments {

namespace {

void check_operator(const ComplexMatrix& m, const BipartiteDims& dims, const char* who) {
  if (m.rows() != dims.d() || m.cols() != dims.d()) {
    throw DimensionError(std::string(who) + ": operator must be " + std::to_string(dims.d()) +
                         "x" + std::to_string(dims.d()));
  }
}

void check_hermitian(const ComplexMatrix& m, const char* who) {
  if (!is_hermitian(m)) throw DomainError(std::string(who) + ": operator must be Hermitian");
}

}  // namespace

UniformCoeffs uniform_coeffs(const BipartiteDims& dims) {
  const double ds = dims.d_s();
  const double de = dims.d_e();
  const double denom = ds * ds * de * de - 1.0;
  return {(ds * ds * de - de) / denom, (ds * de * de - ds) / denom};
}

VarianceCoeffs variance_coeffs(const BipartiteDims& dims) {
  const double ds = dims.d_s();
  const double de = dims.d_e();
  const double d = dims.d();
  const double d2 = d * d;
  VarianceCoeffs v;
  v.a = (de * de - 1.0) * (ds * ds - 1.0) / (d2 * (d2 - 7.0) * (d2 - 7.0) - 36.0);
  v.b = (ds * ds - 1.0) * (de * de - 1.0) /
        ((d2 - 1.0) * (d2 - 1.0) * (36.0 - 13.0 * d2 + d2 * d2));
  v.c1 = 2.0 * v.b * (11.0 + d2);
  v.c2 = 40.0 * v.a;
  v.c3 = -4.0 * v.b * d * (11.0 + d2);
  v.c4 = 2.0 * v.b * (15.0 - 4.0 * d2 + d2 * d2);
  v.c5 = -10.0 * v.a * d;
  return v;
}

Complex f_of_t(const Spectrum& spec, double t) {
  Complex sum = 0.0;
  for (double e : spec.levels()) sum += std::polar(1.0, -e * t);
  return sum / static_cast<double>(spec.dim());
}

FormFactorInputs FormFactorInputs::from_spectrum(const Spectrum& spec, double t) {
  const Complex f = f_of_t(spec, t);
  const Complex f_2t = f_of_t(spec, 2.0 * t);
  FormFactorInputs ff;
  ff.f2 = std::norm(f);
  ff.f2_2t = std::norm(f_2t);
  ff.re_f2fc2t = (f * f * std::conj(f_2t)).real();
  ff.f4 = ff.f2 * ff.f2;
  return ff;
}

double uniform_average(const ComplexMatrix& m, const BipartiteDims& dims) {
  check_operator(m, dims, "uniform_average");
  check_hermitian(m, "uniform_average");
  const UniformCoeffs c = uniform_coeffs(dims);
  const double tr = m.trace().real();
  return c.c1 * hs_norm_sq(m) + c.c2 * tr * tr;
}

double uniform_variance(const ComplexMatrix& m, const BipartiteDims& dims) {
  check_operator(m, dims, "uniform_variance");
  check_hermitian(m, "uniform_variance");
  const VarianceCoeffs c = variance_coeffs(dims);
  const double t1 = trace_power(m, 1).real();
  const double t2 = trace_power(m, 2).real();
  const double t3 = trace_power(m, 3).real();
  const double t4 = trace_power(m, 4).real();
  const double terms[] = {c.c1 * t1 * t1 * t1 * t1, c.c2 * t1 * t3, c.c3 * t1 * t1 * t2,
                          c.c4 * t2 * t2, c.c5 * t4};
  double value = 0.0;
  double scale = 0.0;
  for (double term : terms) {
    value += term;
    scale = std::max(scale, std::abs(term));
  }
  if (value < 0.0) {
    if (value < -1e-6 * std::max(scale, 1.0)) {
      throw NegativeVariance("uniform_variance: variance " + std::to_string(value) +
                             " is negative beyond roundoff");
    }
    value = 0.0;
  }
  return value;
}

TimeCoeffs time_coeffs(const FormFactorInputs& ff, const BipartiteDims& dims) {
  const double d = dims.d();
  const double de = dims.d_e();
  const double d2 = d * d;
  const double de2 = de * de;
  TimeCoeffs c;
  c.a = d2 * d2 - 10.0 * d2 + 9.0;
  if (c.a == 0.0) {
    throw SingularDimension("time_coeffs: d^4 - 10 d^2 + 9 vanishes at d = " +
                            std::to_string(dims.d()));
  }
  c.b = 4.0 * ff.f2 - ff.f2_2t - d2 * ff.f4;
  const double re = ff.re_f2fc2t;
  c.c1 = ((d2 - 3.0 * de2) * c.b - 2.0 * d2 * (de2 - 3.0) * re + (d2 - 9.0) * (d2 - de2)) /
         (c.a * de);
  c.c2 = (d * (de2 - 3.0) * c.b - 2.0 * d * (d2 - 3.0 * de2) * re + d * (d2 - 9.0) * (de2 - 1.0)) /
         (c.a * de);
  c.c3 = -((d2 - 3.0) * c.b + 4.0 * d2 * re) / c.a;
  c.c4 = (2.0 * d * c.b + 2.0 * d * (d2 - 3.0) * re) / c.a;
  return c;
}

double general_average(const ComplexMatrix& m, const BipartiteDims& dims, const TimeCoeffs& c) {
  check_operator(m, dims, "general_average");
  return c.c1 * hs_norm_sq(m) + c.c2 * std::norm(m.trace()) +
         c.c3 * hs_norm_sq(partial_trace_env(m, dims)) +
         c.c4 * hs_norm_sq(partial_trace_sys(m, dims));
}

double general_average(const ComplexMatrix& m, const BipartiteDims& dims,
                       const FormFactorInputs& ff) {
  return general_average(m, dims, time_coeffs(ff, dims));
}

}  // namespace haarmoments
