// linalg.hpp: dense complex matrices, bipartite partial traces and random-matrix samplers

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace haarmoments {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultMaxDim = 4096;

// Dimensions of system and environment. Flattening is system-major:
// the composite index of (s, e) is s * d_e + e.
class BipartiteDims {
 public:
  BipartiteDims(int d_s, int d_e);

  int d_s() const noexcept { return d_s_; }
  int d_e() const noexcept { return d_e_; }
  int d() const noexcept { return d_s_ * d_e_; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  int d_s_;
  int d_e_;
};

// Eigenvalues E_1..E_d of a Hamiltonian. Energies use the convention in which
// the spectral span is roughly [-2, 2].
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> levels);

  const std::vector<double>& levels() const noexcept { return levels_; }
  int dim() const noexcept { return static_cast<int>(levels_.size()); }

 private:
  std::vector<double> levels_;
};

// A reproducible random stream. Equal (seed, stream_id) pairs produce equal
// sequences; independent work must use distinct stream ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  double normal();
  double uniform(double lo, double hi);

  // Deterministically derived child stream, e.g. one per Monte Carlo chunk.
  RngStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// ---------------------------------------------------------------- helpers

ComplexMatrix identity(int d);
// |i><j| in dimension d
ComplexMatrix basis_op(int d, int i, int j);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
// Hermitian, unit trace, smallest eigenvalue >= -tol
bool is_density_matrix(const ComplexMatrix& rho, double tol = 1e-9);

// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// ---------------------------------------------------------------- operations

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b,
                             int max_dim = kDefaultMaxDim);

// (Tr_E M)_{kl} = sum_j M_{(k,j),(l,j)}
ComplexMatrix partial_trace_env(const ComplexMatrix& m, const BipartiteDims& dims);
// (Tr_S M)_{kl} = sum_j M_{(j,k),(j,l)}
ComplexMatrix partial_trace_sys(const ComplexMatrix& m, const BipartiteDims& dims);

// sum_ij |m_ij|^2
double hs_norm_sq(const ComplexMatrix& m);

// Tr(M^k) for k in 1..4
Complex trace_power(const ComplexMatrix& m, int k);

// Haar-distributed unitary: complex Ginibre matrix, QR, then column j scaled
// by r_jj/|r_jj| so that the triangular factor has a positive diagonal.
ComplexMatrix sample_haar_unitary(int d, RngStream& rng);

// GUE Hamiltonian with <|H_ij|^2> = 1/d; spectrum fills [-2, 2] for large d.
ComplexMatrix sample_gue_hamiltonian(int d, RngStream& rng);

// result_ij = p_i * x_ij * conj(p_j)
ComplexMatrix evolve_diag(const ComplexMatrix& x, std::span<const Complex> phases);

}  // namespace haarmoments
