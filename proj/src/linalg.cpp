#include "haarmoments/linalg.hpp"

#include "haarmoments/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haarmoments {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_bipartite(const ComplexMatrix& m, const BipartiteDims& dims, const char* what) {
  require_square(m, what);
  if (m.rows() != dims.d()) {
    throw DimensionError(std::string(what) + ": matrix dimension " + std::to_string(m.rows()) +
                         " does not match d_s*d_e = " + std::to_string(dims.d()));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

BipartiteDims::BipartiteDims(int d_s, int d_e) : d_s_(d_s), d_e_(d_e) {
  if (d_s < 2 || d_e < 2) {
    throw DimensionError("BipartiteDims: d_s and d_e must both be >= 2 (got " +
                         std::to_string(d_s) + ", " + std::to_string(d_e) + ")");
  }
}

Spectrum::Spectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw DimensionError("Spectrum: at least one level required");
  for (double e : levels_) {
    if (!std::isfinite(e)) throw DomainError("Spectrum: levels must be finite");
  }
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(index + 1)));
}

// ---------------------------------------------------------------- helpers

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix basis_op(int d, int i, int j) {
  if (d <= 0) throw DimensionError("basis_op: d must be > 0");
  if (i < 0 || j < 0 || i >= d || j >= d) throw DimensionError("basis_op: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <=
         tol;
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  return hermitian_eigenvalues(herm).front() >= -tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigenvalues: eigen decomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------- operations

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b, int max_dim) {
  require_square(a, "tensor_product");
  require_square(b, "tensor_product");
  const long long dim = static_cast<long long>(a.rows()) * b.rows();
  if (dim > max_dim) {
    throw DimensionError("tensor_product: result dimension " + std::to_string(dim) +
                         " exceeds the maximum " + std::to_string(max_dim));
  }
  const Eigen::Index nb = b.rows();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_env(const ComplexMatrix& m, const BipartiteDims& dims) {
  require_bipartite(m, dims, "partial_trace_env");
  const int ds = dims.d_s();
  const int de = dims.d_e();
  ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
  for (int k = 0; k < ds; ++k) {
    for (int l = 0; l < ds; ++l) {
      Complex acc = 0.0;
      for (int j = 0; j < de; ++j) acc += m(k * de + j, l * de + j);
      out(k, l) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace_sys(const ComplexMatrix& m, const BipartiteDims& dims) {
  require_bipartite(m, dims, "partial_trace_sys");
  const int ds = dims.d_s();
  const int de = dims.d_e();
  ComplexMatrix out = ComplexMatrix::Zero(de, de);
  for (int j = 0; j < ds; ++j) out += m.block(j * de, j * de, de, de);
  return out;
}

double hs_norm_sq(const ComplexMatrix& m) { return m.squaredNorm(); }

Complex trace_power(const ComplexMatrix& m, int k) {
  require_square(m, "trace_power");
  if (k < 1 || k > 4) throw DomainError("trace_power: k must be in 1..4");
  ComplexMatrix p = m;
  for (int i = 1; i < k; ++i) p = p * m;
  return p.trace();
}

ComplexMatrix sample_haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw DimensionError("sample_haar_unitary: d must be >= 1");
  ComplexMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

ComplexMatrix sample_gue_hamiltonian(int d, RngStream& rng) {
  if (d < 1) throw DimensionError("sample_gue_hamiltonian: d must be >= 1");
  const double sd_diag = std::sqrt(1.0 / d);
  const double sd_off = std::sqrt(0.5 / d);
  ComplexMatrix h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = sd_diag * rng.normal();
    for (int j = i + 1; j < d; ++j) {
      const Complex v(sd_off * rng.normal(), sd_off * rng.normal());
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

ComplexMatrix evolve_diag(const ComplexMatrix& x, std::span<const Complex> phases) {
  require_square(x, "evolve_diag");
  if (static_cast<Eigen::Index>(phases.size()) != x.rows()) {
    throw DimensionError("evolve_diag: phases length must equal the matrix dimension");
  }
  ComplexMatrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Complex pj = std::conj(phases[j]);
    for (Eigen::Index i = 0; i < x.rows(); ++i) out(i, j) = phases[i] * x(i, j) * pj;
  }
  return out;
}

}  // namespace haarmoments
