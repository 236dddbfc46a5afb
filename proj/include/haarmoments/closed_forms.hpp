// closed_forms.hpp: exact Haar averages of ||Tr_E{U M U†}||^2, its variance,
// and the four-coefficient average for a fixed spectrum D with U = W e^{-iDt} W†.

#pragma once

#include "haarmoments/linalg.hpp"

namespace haarmoments {

struct UniformCoeffs {
  double c1 = 0.0;  // weight of ||M||^2
  double c2 = 0.0;  // weight of (Tr M)^2
};

struct VarianceCoeffs {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  double a = 0.0, b = 0.0;
};

// |f(t)|^2, |f(2t)|^2, Re{f(t)^2 f*(2t)} and |f(t)|^4, either for one spectrum
// or averaged over an ensemble (then f4 differs from f2^2 in general).
struct FormFactorInputs {
  double f2 = 1.0;
  double f2_2t = 1.0;
  double re_f2fc2t = 1.0;
  double f4 = 1.0;

  static FormFactorInputs from_spectrum(const Spectrum& spec, double t);
};

struct TimeCoeffs {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double a = 0.0;  // d^4 - 10 d^2 + 9
  double b = 0.0;  // 4|f|^2 - |f(2t)|^2 - d^2 |f|^4
};

UniformCoeffs uniform_coeffs(const BipartiteDims& dims);
VarianceCoeffs variance_coeffs(const BipartiteDims& dims);

// (1/d) sum_j exp(-i E_j t)
Complex f_of_t(const Spectrum& spec, double t);

// <||Tr_E{U M U†}||^2> over Haar U; M Hermitian.
double uniform_average(const ComplexMatrix& m, const BipartiteDims& dims);

// Variance of ||Tr_E{U M U†}||^2 over Haar U; M Hermitian. Roundoff below zero
// is clamped, anything below -1e-6 (relative) throws NegativeVariance.
double uniform_variance(const ComplexMatrix& m, const BipartiteDims& dims);

// Throws SingularDimension when d^4 - 10 d^2 + 9 = 0, i.e. d in {1, 3}.
TimeCoeffs time_coeffs(const FormFactorInputs& ff, const BipartiteDims& dims);

// c1 ||M||^2 + c2 |Tr M|^2 + c3 ||Tr_E M||^2 + c4 ||Tr_S M||^2
double general_average(const ComplexMatrix& m, const BipartiteDims& dims,
                       const FormFactorInputs& ff);
double general_average(const ComplexMatrix& m, const BipartiteDims& dims, const TimeCoeffs& c);

}  // namespace haarmoments
