#include "doctest.h"
#include "helpers.hpp"

#include "haarmoments/closed_forms.hpp"
#include "haarmoments/errors.hpp"
#include "haarmoments/mc_oracle.hpp"
#include "haarmoments/parallel.hpp"
#include "haarmoments/statistics.hpp"
#include "haarmoments/weingarten.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace haarmoments;
using test::Gen;
using test::max_abs;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

// ---- statistics ----

TEST_CASE("ScalarStats matches two-pass formulas and merges exactly") {
  Gen g(81);
  std::vector<double> xs;
  for (int i = 0; i < 5000; ++i) xs.push_back(std::exp(g.normal()));

  ScalarStats all;
  for (double x : xs) all.add(x);

  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    m2 += (x - mean) * (x - mean);
    m4 += std::pow(x - mean, 4);
  }
  const double n = static_cast<double>(xs.size());
  CHECK(all.mean() == doctest::Approx(mean).epsilon(1e-13));
  CHECK(all.variance() == doctest::Approx(m2 / (n - 1.0)).epsilon(1e-12));
  CHECK(all.stderr_mean() == doctest::Approx(std::sqrt(m2 / (n - 1.0) / n)).epsilon(1e-12));
  const double mu2 = m2 / n, mu4 = m4 / n;
  CHECK(all.stderr_variance() ==
        doctest::Approx(std::sqrt((mu4 - mu2 * mu2 * (n - 3.0) / (n - 1.0)) / n)).epsilon(1e-10));

  ScalarStats a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) (i < 1234 ? a : b).add(xs[i]);
  a.merge(b);
  CHECK(a.count() == all.count());
  CHECK(a.mean() == doctest::Approx(all.mean()).epsilon(1e-14));
  CHECK(a.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
  CHECK(a.stderr_variance() == doctest::Approx(all.stderr_variance()).epsilon(1e-10));

  ScalarStats empty;
  empty.merge(all);
  CHECK(empty.mean() == all.mean());
}

TEST_CASE("MatrixStats tracks real and imaginary parts separately") {
  Gen g(82);
  MatrixStats s(2), a(2), b(2);
  std::vector<ComplexMatrix> xs;
  for (int i = 0; i < 300; ++i) xs.push_back(g.matrix(2));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.add(xs[i]);
    (i % 3 ? a : b).add(xs[i]);
  }
  a.merge(b);
  CHECK(max_abs(a.mean() - s.mean()) < 1e-14);
  CHECK(max_abs(a.stderr_mean() - s.stderr_mean()) < 1e-14);

  double re = 0.0, re2 = 0.0;
  for (const auto& x : xs) re += x(1, 0).real(), re2 += x(1, 0).real() * x(1, 0).real();
  const double n = static_cast<double>(xs.size());
  const double var = (re2 - re * re / n) / (n - 1.0);
  CHECK(s.stderr_mean()(1, 0).real() == doctest::Approx(std::sqrt(var / n)).epsilon(1e-10));
}

// ---- empirical_moment ----

TEST_CASE("empirical_moment second moment") {
  Gen g(83);
  const ComplexMatrix x = g.matrix(3);
  const std::vector<ComplexMatrix> xs{x};
  const McMatrix mc = empirical_moment(xs, 3, 100000, RngStream(83, 0));
  CHECK(mc.n == 100000u);
  CHECK(test::max_z(mc.mean, mc.stderr, x.trace() / 3.0 * identity(3)) < 5.0);
  CHECK(mc.stderr.real().minCoeff() >= 0.0);
  CHECK(mc.stderr.imag().minCoeff() >= 0.0);
}

TEST_CASE("empirical_moment fourth moment against the closed form") {
  Gen g(84);
  const std::vector<ComplexMatrix> xs{g.matrix(3), g.matrix(3), g.matrix(3)};
  const McMatrix mc = empirical_moment(xs, 3, kDefaultMatrixSamples, RngStream(84, 0));
  CHECK(test::max_z(mc.mean, mc.stderr, fourth_moment_closed(xs[0], xs[1], xs[2], 3)) < 5.0);
}

TEST_CASE("empirical_moment of zero operators is exactly zero") {
  const std::vector<ComplexMatrix> xs(3, ComplexMatrix::Zero(2, 2));
  const McMatrix mc = empirical_moment(xs, 2, 3000, RngStream(85, 0));
  CHECK(max_abs(mc.mean) == 0.0);
  CHECK(max_abs(mc.stderr) == 0.0);
}

TEST_CASE("empirical_moment has no Weingarten singularity") {
  const std::vector<ComplexMatrix> xs(5, identity(2));
  const McMatrix mc = empirical_moment(xs, 2, 2000, RngStream(86, 0));
  CHECK(max_abs(mc.mean - identity(2)) < 1e-12);
  const std::vector<ComplexMatrix> even(2, identity(2));
  CHECK_THROWS_AS(empirical_moment(even, 2, 10, RngStream(86, 0)), DimensionError);
}

// ---- reduced norms ----

TEST_CASE("empirical_reduced_norm of the identity is deterministic") {
  const BipartiteDims dims(2, 3);
  const McScalar mc = empirical_reduced_norm(identity(6), dims, 2000, RngStream(87, 0));
  CHECK(mc.mean == doctest::Approx(2.0 * 9.0).epsilon(1e-12));
  CHECK(mc.variance < 1e-20);
  CHECK(mc.second_moment == doctest::Approx(18.0 * 18.0).epsilon(1e-12));
}

TEST_CASE("empirical_fixed_spectrum trivial cases") {
  Gen g(88);
  const BipartiteDims dims(2, 2);
  const ComplexMatrix m = g.hermitian(4);
  const double at_zero = hs_norm_sq(partial_trace_env(m, dims));
  const McScalar t0 = empirical_fixed_spectrum(m, dims, Spectrum({-1, 0, 0.5, 1}), 0.0, 2000, RngStream(88, 0));
  CHECK(t0.mean == doctest::Approx(at_zero).epsilon(1e-12));
  CHECK(t0.stderr < 1e-12);

  const McScalar flat = empirical_fixed_spectrum(m, dims, Spectrum({0.3, 0.3, 0.3, 0.3}), 2.7, 2000, RngStream(88, 1));
  CHECK(flat.mean == doctest::Approx(at_zero).epsilon(1e-12));

  CHECK_THROWS_AS(empirical_fixed_spectrum(m, dims, Spectrum({0.0, 1.0}), 1.0, 10, RngStream(88, 2)), DimensionError);
}

TEST_CASE("empirical_purity at t = 0 equals p0") {
  const BipartiteDims dims(2, 4);
  for (const InitialState psi : {InitialState::product(), InitialState::entangled(0.5), InitialState::entangled(0.8)}) {
    const McScalar mc = empirical_purity(dims, EnsembleKind::Poisson, psi, 0.0, 1500, RngStream(89, 0));
    CHECK(mc.mean == doctest::Approx(psi.reduced_purity()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(InitialState::entangled(0.3).vector(dims), DomainError);
}

TEST_CASE("InitialState Schmidt weights give the requested purity") {
  const BipartiteDims dims(3, 5);
  for (double p0 : {1.0 / 3.0, 0.4, 0.75, 1.0}) {
    const ComplexMatrix v = InitialState::entangled(p0).vector(dims);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const ComplexMatrix rho_s = partial_trace_env(v * v.adjoint(), dims);
    CHECK(hs_norm_sq(rho_s) == doctest::Approx(p0).epsilon(1e-12));
  }
}

// ---- reproducibility and coverage ----

TEST_CASE("estimates are bit-identical for 1 and 8 workers") {
  Gen g(90);
  const BipartiteDims dims(2, 3);
  const ComplexMatrix m = g.hermitian(6);
  const std::vector<ComplexMatrix> xs{g.matrix(3), g.matrix(3), g.matrix(3)};

  McScalar a, b;
  McMatrix ma, mb;
  {
    ScopedWorkerCount w(1);
    a = empirical_reduced_norm(m, dims, 5000, RngStream(91, 0));
    ma = empirical_moment(xs, 3, 5000, RngStream(91, 1));
  }
  {
    ScopedWorkerCount w(8);
    b = empirical_reduced_norm(m, dims, 5000, RngStream(91, 0));
    mb = empirical_moment(xs, 3, 5000, RngStream(91, 1));
  }
  CHECK(same_bits(a.mean, b.mean));
  CHECK(same_bits(a.stderr, b.stderr));
  CHECK(same_bits(a.variance, b.variance));
  CHECK(same_bits(ma.mean, mb.mean));
  CHECK(same_bits(ma.stderr, mb.stderr));

  const McScalar c = empirical_reduced_norm(m, dims, 5000, RngStream(92, 0));
  CHECK_FALSE(same_bits(a.mean, c.mean));
}

TEST_CASE("worker count override") {
  {
    ScopedWorkerCount w(3);
    CHECK(worker_count() == 3);
  }
  CHECK(worker_count() >= 1);
}

TEST_CASE("stderr coverage over 50 seeds") {
  Gen g(93);
  const BipartiteDims dims(2, 2);
  const ComplexMatrix m = g.hermitian(4);
  const double exact = uniform_average(m, dims);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const McScalar mc = empirical_reduced_norm(m, dims, 4000, RngStream(1000 + seed, 0));
    covered += std::abs(mc.mean - exact) <= 2.0 * mc.stderr;
  }
  CHECK(covered >= 42);
}
