// pybind11 module haarmoments._core

#include "haarmoments/applications.hpp"
#include "haarmoments/closed_forms.hpp"
#include "haarmoments/ensembles.hpp"
#include "haarmoments/errors.hpp"
#include "haarmoments/linalg.hpp"
#include "haarmoments/mc_oracle.hpp"
#include "haarmoments/weingarten.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace haarmoments;

namespace {

EnsembleKind ensemble_arg(const std::string& name) { return parse_ensemble(name); }

py::dict coeffs_dict(const TimeCoeffs& c) {
  py::dict out;
  out["c1"] = c.c1;
  out["c2"] = c.c2;
  out["c3"] = c.c3;
  out["c4"] = c.c4;
  return out;
}

py::dict scalar_dict(const McScalar& s) {
  py::dict out;
  out["mean"] = s.mean;
  out["stderr"] = s.stderr;
  out["variance"] = s.variance;
  out["variance_stderr"] = s.variance_stderr;
  out["n"] = s.n;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Haar-measure moment functions and generic open-system dynamics";

  // ---- errors ----
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularWeingarten>(m, "SingularWeingarten", base.ptr());
  py::register_exception<SingularDimension>(m, "SingularDimension", base.ptr());
  py::register_exception<NegativeVariance>(m, "NegativeVariance", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<InvalidState>(m, "InvalidState", base.ptr());

  // ---- linalg ----
  m.def("partial_trace_env",
        [](const ComplexMatrix& x, int d_s, int d_e) { return partial_trace_env(x, BipartiteDims(d_s, d_e)); },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"));
  m.def("partial_trace_sys",
        [](const ComplexMatrix& x, int d_s, int d_e) { return partial_trace_sys(x, BipartiteDims(d_s, d_e)); },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"));
  m.def("sample_haar_unitary",
        [](int d, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return sample_haar_unitary(d, rng);
        },
        py::arg("d"), py::arg("seed") = 42, py::arg("stream") = 0);

  // ---- weingarten ----
  m.def("weingarten", [](std::vector<int> cls, int d) { return weingarten(Partition(std::move(cls)), d); },
        py::arg("cycle_type"), py::arg("d"));
  m.def("moment_function", [](const std::vector<ComplexMatrix>& xs, int d) { return moment_function(xs, d); },
        py::arg("xs"), py::arg("d"));
  m.def("fourth_moment_closed", &fourth_moment_closed, py::arg("x1"), py::arg("x2"), py::arg("x3"),
        py::arg("d"));

  // ---- closed forms ----
  m.def("uniform_average",
        [](const ComplexMatrix& x, int d_s, int d_e) { return uniform_average(x, BipartiteDims(d_s, d_e)); },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"));
  m.def("uniform_variance",
        [](const ComplexMatrix& x, int d_s, int d_e) { return uniform_variance(x, BipartiteDims(d_s, d_e)); },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"));
  m.def("general_average",
        [](const ComplexMatrix& x, int d_s, int d_e, std::vector<double> levels, double t) {
          return general_average(x, BipartiteDims(d_s, d_e),
                                 FormFactorInputs::from_spectrum(Spectrum(std::move(levels)), t));
        },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"), py::arg("levels"), py::arg("t"));
  m.def("f_of_t", [](std::vector<double> levels, double t) { return f_of_t(Spectrum(std::move(levels)), t); },
        py::arg("levels"), py::arg("t"));

  // ---- ensembles ----
  m.def("bessel_j1", &bessel_j1, py::arg("x"));
  m.def("averaged_time_coeffs",
        [](const std::string& ensemble, double t, int d_s, int d_e) {
          return coeffs_dict(averaged_time_coeffs(ensemble_arg(ensemble), t, BipartiteDims(d_s, d_e)));
        },
        py::arg("ensemble"), py::arg("t"), py::arg("d_s"), py::arg("d_e"));
  m.def("form_factor_f2",
        [](const std::string& ensemble, double t, int d) { return averaged_form_factors(ensemble_arg(ensemble), t, d).f2; },
        py::arg("ensemble"), py::arg("t"), py::arg("d"));
  m.def("sample_spectrum",
        [](const std::string& ensemble, int d, std::uint64_t seed, std::uint64_t stream) {
          RngStream rng(seed, stream);
          return sample_spectrum(ensemble_arg(ensemble), d, rng).levels();
        },
        py::arg("ensemble"), py::arg("d"), py::arg("seed") = 42, py::arg("stream") = 0);

  // ---- applications ----
  m.def("depolarizing_average", &depolarizing_average, py::arg("rho0"), py::arg("f2"), py::arg("d"));
  m.def("uniform_purity",
        [](double p_total, int d_s, int d_e) {
          const UniformPurity u = uniform_purity(p_total, BipartiteDims(d_s, d_e));
          return py::make_tuple(u.mean, u.variance_pure ? py::cast(*u.variance_pure) : py::none());
        },
        py::arg("p_total"), py::arg("d_s"), py::arg("d_e"));
  m.def("purity_evolution",
        [](const std::string& ensemble, int d_s, int d_e, double p0, const std::vector<double>& times) {
          return purity_evolution(ensemble_arg(ensemble), BipartiteDims(d_s, d_e), p0, times).values;
        },
        py::arg("ensemble"), py::arg("d_s"), py::arg("d_e"), py::arg("p0"), py::arg("times"));
  m.def("gibbs_purity", [](std::vector<double> levels, double beta) { return gibbs_purity(Spectrum(std::move(levels)), beta); },
        py::arg("levels"), py::arg("beta"));
  m.def("gibbs_purity_mc",
        [](const std::string& ensemble, int d, double beta, std::size_t n, std::uint64_t seed) {
          return scalar_dict(gibbs_purity_mc(ensemble_arg(ensemble), d, beta, n, RngStream(seed, 0)));
        },
        py::arg("ensemble"), py::arg("d"), py::arg("beta"), py::arg("n") = 10000, py::arg("seed") = 42);
  m.def("open_thermalization_large_env",
        [](const std::string& ensemble, int d_s, double p_s0, const std::vector<double>& times) {
          return open_thermalization_large_env(ensemble_arg(ensemble), d_s, p_s0, times).values;
        },
        py::arg("ensemble"), py::arg("d_s"), py::arg("p_s0"), py::arg("times"));

  // ---- Monte Carlo ----
  m.def("empirical_moment",
        [](const std::vector<ComplexMatrix>& xs, int d, std::size_t n, std::uint64_t seed) {
          const McMatrix r = empirical_moment(xs, d, n, RngStream(seed, 0));
          return py::make_tuple(r.mean, r.stderr);
        },
        py::arg("xs"), py::arg("d"), py::arg("n") = kDefaultMatrixSamples, py::arg("seed") = 42);
  m.def("empirical_reduced_norm",
        [](const ComplexMatrix& x, int d_s, int d_e, std::size_t n, std::uint64_t seed) {
          return scalar_dict(empirical_reduced_norm(x, BipartiteDims(d_s, d_e), n, RngStream(seed, 0)));
        },
        py::arg("m"), py::arg("d_s"), py::arg("d_e"), py::arg("n") = kDefaultScalarSamples,
        py::arg("seed") = 42);
}
