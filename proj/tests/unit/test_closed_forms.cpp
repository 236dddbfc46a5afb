#include "doctest.h"
#include "helpers.hpp"

#include "haarmoments/closed_forms.hpp"
#include "haarmoments/ensembles.hpp"
#include "haarmoments/errors.hpp"
#include "haarmoments/mc_oracle.hpp"
#include "haarmoments/weingarten.hpp"

#include <cmath>
#include <vector>

using namespace haarmoments;
using test::Gen;

namespace {

// I (x) |l><k| on the environment factor
ComplexMatrix env_op(const BipartiteDims& dims, int l, int k) {
  return tensor_product(identity(dims.d_s()), basis_op(dims.d_e(), l, k));
}

// ||Tr_E X||^2 = sum_kl Tr(X B_kl X B_lk) with B_kl = I (x) |l><k|, so the Haar
// mean with X = U M U† is sum_kl Tr(E^(4)(M, B_kl, M) B_lk).
double exact_reduced_norm_mean(const ComplexMatrix& m, const BipartiteDims& dims) {
  Complex s = 0.0;
  for (int k = 0; k < dims.d_e(); ++k)
    for (int l = 0; l < dims.d_e(); ++l) {
      const std::vector<ComplexMatrix> xs{m, env_op(dims, l, k), m};
      s += (moment_function(xs, dims.d()) * env_op(dims, k, l)).trace();
    }
  return s.real();
}

// Second moment through Tr(A) Tr(C) = sum_ij Tr(A |i><j| C |j><i|), which turns
// the product of two traces into one E^(8) word.
double exact_reduced_norm_second(const ComplexMatrix& m, const BipartiteDims& dims) {
  const int d = dims.d();
  Complex s = 0.0;
  for (int k = 0; k < dims.d_e(); ++k)
    for (int l = 0; l < dims.d_e(); ++l)
      for (int k2 = 0; k2 < dims.d_e(); ++k2)
        for (int l2 = 0; l2 < dims.d_e(); ++l2)
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
              const std::vector<ComplexMatrix> xs{m, env_op(dims, l, k), m,
                                                  env_op(dims, k, l) * basis_op(d, i, j),
                                                  m, env_op(dims, l2, k2), m};
              s += (moment_function(xs, d) * env_op(dims, k2, l2) * basis_op(d, j, i)).trace();
            }
  return s.real();
}

// With U_t = W e^{-iDt} W†, ||Tr_E{U_t M U_t†}||^2 is an E^(8) word in W.
double exact_fixed_spectrum(const ComplexMatrix& m, const BipartiteDims& dims, const Spectrum& spec,
                            double t) {
  const int d = dims.d();
  ComplexMatrix fwd = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) fwd(i, i) = std::polar(1.0, -spec.levels()[static_cast<std::size_t>(i)] * t);
  const ComplexMatrix bwd = fwd.adjoint();
  Complex s = 0.0;
  for (int k = 0; k < dims.d_e(); ++k)
    for (int l = 0; l < dims.d_e(); ++l) {
      const std::vector<ComplexMatrix> xs{fwd, m, bwd, env_op(dims, l, k), fwd, m, bwd};
      s += (moment_function(xs, d) * env_op(dims, k, l)).trace();
    }
  return s.real();
}

ComplexMatrix product_projector(int d_s, int d_e) {
  return tensor_product(basis_op(d_s, 0, 0), basis_op(d_e, 0, 0));
}

}  // namespace

// ---- coefficients ----

TEST_CASE("uniform coefficients at (2,2) and for large d_E") {
  const UniformCoeffs c = uniform_coeffs(BipartiteDims(2, 2));
  CHECK(c.c1 == doctest::Approx(0.4));
  CHECK(c.c2 == doctest::Approx(0.4));

  const UniformCoeffs big = uniform_coeffs(BipartiteDims(3, 1000));
  CHECK(std::abs(big.c1) < 1e-2);
  CHECK(std::abs(big.c2 - 1.0 / 3.0) < 1e-2);
}

TEST_CASE("variance coefficients vanish for large d_E") {
  const VarianceCoeffs v = variance_coeffs(BipartiteDims(2, 1000));
  for (double c : {v.c1, v.c2, v.c3, v.c4, v.c5}) CHECK(std::abs(c) < 1e-6);
}

TEST_CASE("time coefficients at t = 0 are (0, 0, 1, 0)") {
  for (auto [d_s, d_e] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{4, 7}, std::pair{8, 64}}) {
    const TimeCoeffs c = time_coeffs(FormFactorInputs{}, BipartiteDims(d_s, d_e));
    CHECK(std::abs(c.c1) <= 1e-12);
    CHECK(std::abs(c.c2) <= 1e-12);
    CHECK(std::abs(c.c3 - 1.0) <= 1e-12);
    CHECK(std::abs(c.c4) <= 1e-12);
  }
}

TEST_CASE("time coefficients approach the uniform ones when the form factors vanish") {
  FormFactorInputs ff{0.0, 0.0, 0.0, 0.0};
  for (auto [d_s, d_e] : {std::pair{2, 8}, std::pair{4, 4}, std::pair{2, 32}}) {
    const BipartiteDims dims(d_s, d_e);
    const TimeCoeffs c = time_coeffs(ff, dims);
    const UniformCoeffs u = uniform_coeffs(dims);
    CHECK(std::abs(c.c1 - u.c1) <= 1e-2);
    CHECK(std::abs(c.c2 - u.c2) <= 1e-2);
    CHECK(std::abs(c.c3) <= 1e-2);
    CHECK(std::abs(c.c4) <= 1e-2);
  }
}

TEST_CASE("Poisson-averaged coefficients at d_E = 512: c1 and c4 are small") {
  const TimeCoeffs c = time_coeffs(poisson_form_factors(3.0, 1024), BipartiteDims(2, 512));
  CHECK(std::abs(c.c1) < 2e-2);
  CHECK(std::abs(c.c4) < 2e-2);
}

// ---- f(t) ----

TEST_CASE("f_of_t") {
  const Spectrum zeros({0.0, 0.0, 0.0});
  CHECK(std::abs(f_of_t(zeros, 2.7) - 1.0) < 1e-15);
  const Spectrum pm({1.0, -1.0});
  for (double t : {0.0, 0.3, 1.0, 5.5}) CHECK(std::abs(f_of_t(pm, t) - std::cos(t)) < 1e-15);

  Gen g(31);
  const Spectrum spec({g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2), g.uniform(-2, 2)});
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(f_of_t(spec, 0.05 * i)));
  CHECK(worst <= 1.0 + 1e-15);
  CHECK(std::abs(f_of_t(spec, 0.0) - 1.0) < 1e-15);

  const FormFactorInputs ff = FormFactorInputs::from_spectrum(spec, 1.1);
  CHECK(ff.f4 == ff.f2 * ff.f2);
  CHECK(ff.f2 >= 0.0);
  CHECK(ff.f2 <= 1.0);
}

// ---- uniform average and variance ----

TEST_CASE("uniform_average examples") {
  const BipartiteDims dims(2, 2);
  CHECK(uniform_average(product_projector(2, 2), dims) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(uniform_average(ComplexMatrix::Zero(4, 4), dims) == 0.0);
  CHECK_THROWS_AS(uniform_average(identity(5), dims), DimensionError);
  Gen g(32);
  CHECK_THROWS_AS(uniform_average(g.matrix(4), dims), DomainError);
}

TEST_CASE("uniform_average equals the E^(4) contraction") {
  Gen g(33);
  for (auto [d_s, d_e] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    const BipartiteDims dims(d_s, d_e);
    const ComplexMatrix m = g.hermitian(dims.d());
    CHECK(uniform_average(m, dims) == doctest::Approx(exact_reduced_norm_mean(m, dims)).epsilon(1e-10));
  }
}

TEST_CASE("uniform_average of a traceless operator is C1 ||M||^2") {
  Gen g(34);
  const BipartiteDims dims(2, 3);
  ComplexMatrix m = g.hermitian(6);
  m -= m.trace() / 6.0 * identity(6);
  CHECK(uniform_average(m, dims) == doctest::Approx(uniform_coeffs(dims).c1 * hs_norm_sq(m)).epsilon(1e-12));
}

TEST_CASE("uniform_variance examples") {
  const BipartiteDims dims(2, 2);
  CHECK(uniform_variance(product_projector(2, 2), dims) == doctest::Approx(18.0 / 1050.0).epsilon(1e-12));
  CHECK(uniform_variance(ComplexMatrix::Zero(4, 4), dims) == 0.0);
  // U I U† = I, so the variance is zero
  CHECK(std::abs(uniform_variance(identity(4), dims)) < 1e-12);
}

TEST_CASE("uniform_variance equals the E^(8) contraction") {
  Gen g(35);
  for (auto [d_s, d_e] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const BipartiteDims dims(d_s, d_e);
    const ComplexMatrix m = g.hermitian(dims.d());
    const double mean = exact_reduced_norm_mean(m, dims);
    const double var = exact_reduced_norm_second(m, dims) - mean * mean;
    CHECK(uniform_variance(m, dims) == doctest::Approx(var).epsilon(1e-9));
  }
}

TEST_CASE("uniform average and variance against Monte Carlo at (2,3)") {
  Gen g(36);
  const BipartiteDims dims(2, 3);
  const ComplexMatrix m = g.hermitian(6);
  const McScalar mc = empirical_reduced_norm(m, dims, 100000, RngStream(36, 0));
  CHECK(test::z_score(mc.mean, mc.stderr, uniform_average(m, dims)) < 5.0);
  CHECK(test::z_score(mc.variance, mc.variance_stderr, uniform_variance(m, dims)) < 5.0);
}

// ---- general average ----

TEST_CASE("general_average at t = 0 is ||Tr_E M||^2") {
  Gen g(37);
  const BipartiteDims dims(2, 3);
  const ComplexMatrix m = g.hermitian(6);
  CHECK(general_average(m, dims, FormFactorInputs{}) ==
        doctest::Approx(hs_norm_sq(partial_trace_env(m, dims))).epsilon(1e-12));
}

TEST_CASE("general_average for operators with vanishing marginals is c1 ||M||^2") {
  Gen g(38);
  const BipartiteDims dims(2, 2);
  const ComplexMatrix rho = g.state(4);
  const ComplexMatrix m = rho - tensor_product(partial_trace_env(rho, dims), partial_trace_sys(rho, dims));
  const Spectrum spec({-1.1, 0.3, 0.4, 1.7});
  const FormFactorInputs ff = FormFactorInputs::from_spectrum(spec, 0.9);
  CHECK(general_average(m, dims, ff) ==
        doctest::Approx(time_coeffs(ff, dims).c1 * hs_norm_sq(m)).epsilon(1e-10));
}

TEST_CASE("general_average scales quadratically") {
  Gen g(39);
  const BipartiteDims dims(2, 4);
  const ComplexMatrix m = g.hermitian(8);
  const FormFactorInputs ff = FormFactorInputs::from_spectrum(Spectrum({-1, -0.5, 0, 0.1, 0.2, 0.6, 1, 1.9}), 2.3);
  const double base = general_average(m, dims, ff);
  CHECK(general_average(m + ComplexMatrix::Zero(8, 8), dims, ff) == base);
  for (double alpha : {-2.0, 0.5, 3.7})
    CHECK(std::abs(general_average(alpha * m, dims, ff) - alpha * alpha * base) <= 1e-10 * std::max(1.0, std::abs(base)) * alpha * alpha);
}

TEST_CASE("general_average equals the E^(8) contraction for a fixed spectrum") {
  Gen g(40);
  for (auto [d_s, d_e] : {std::pair{2, 2}, std::pair{2, 3}}) {
    const BipartiteDims dims(d_s, d_e);
    std::vector<double> levels;
    for (int i = 0; i < dims.d(); ++i) levels.push_back(g.uniform(-2.0, 2.0));
    const Spectrum spec(levels);
    const ComplexMatrix m = g.hermitian(dims.d());
    for (double t : {0.4, 1.7, 6.0}) {
      const double exact = exact_fixed_spectrum(m, dims, spec, t);
      CHECK(general_average(m, dims, FormFactorInputs::from_spectrum(spec, t)) ==
            doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("general_average against Monte Carlo over W at (2,2), t = 1.7") {
  Gen g(41);
  const BipartiteDims dims(2, 2);
  const Spectrum spec({-1.4, -0.2, 0.5, 1.6});
  const ComplexMatrix m = g.hermitian(4);
  const McScalar mc = empirical_fixed_spectrum(m, dims, spec, 1.7, 100000, RngStream(41, 0));
  CHECK(test::z_score(mc.mean, mc.stderr, general_average(m, dims, FormFactorInputs::from_spectrum(spec, 1.7))) < 5.0);
}
