// weingarten.hpp: symmetric-group data for m <= 4, Weingarten functions and
// the exact moment functions E^(n)(X_1, ..., X_{n-1}) = ∫dU U X_1 U† X_2 U X_3 U† ...

#pragma once

#include "haarmoments/linalg.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace haarmoments {

inline constexpr int kMaxSymmetricOrder = 4;

// Partition of m: positive parts, weakly decreasing. Also labels conjugacy
// classes (cycle types) and irreducible representations of S_m.
class Partition {
 public:
  // Parts are sorted into descending order.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int weight() const noexcept;                               // m
  int rows() const noexcept { return static_cast<int>(parts_.size()); }
  std::string to_string() const;                             // "(2,1)"

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// Partitions of m in reverse lexicographic order: (m), (m-1,1), ..., (1,...,1).
std::vector<Partition> partitions_of(int m);

class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int m);
  // All m! permutations, lexicographic.
  static std::vector<Permutation> all(int m);

  int size() const noexcept { return static_cast<int>(mapping_.size()); }
  int operator()(int i) const { return mapping_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& mapping() const noexcept { return mapping_; }

  Permutation inverse() const;
  int cycle_count() const;
  std::vector<std::vector<int>> cycles() const;

  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

Partition conjugacy_class_of(const Permutation& p);

struct CharacterTable {
  int m = 0;
  std::vector<Partition> classes;        // columns
  std::vector<long long> class_sizes;    // Z, aligned with classes
  std::vector<Partition> irreps;         // rows
  std::vector<std::vector<int>> chi;     // chi[irrep][class]

  int character(const Partition& irrep, const Partition& cls) const;
  long long class_size(const Partition& cls) const;
};

// Hard-coded tables for m = 1..4.
const CharacterTable& character_table(int m);

// s_{λ,d}(1) = (1/m!) Σ_τ d^{c(τ)} χ_λ(τ) Z_τ; zero when λ has more rows than d.
double schur_dimension(const Partition& lambda, int d);

// Wg(σ) = (1/m!²) Σ_λ χ_λ(e)² χ_λ(σ) / s_{λ,d}(1). Throws SingularWeingarten for d < m.
double weingarten(const Partition& sigma_class, int d);

// Weingarten values for every class of S_m at fixed d.
class WeingartenCache {
 public:
  WeingartenCache(int m, int d);

  int m() const noexcept { return m_; }
  int d() const noexcept { return d_; }
  double operator()(const Partition& cls) const;
  double operator()(const Permutation& p) const { return (*this)(conjugacy_class_of(p)); }
  const std::map<Partition, double>& values() const noexcept { return values_; }

 private:
  int m_;
  int d_;
  std::map<Partition, double> values_;
};

// Exact Haar average ∫dU U X_1 U† X_2 U ... X_q U† for q = xs.size() in
// {1, 3, 5, 7} (n = q + 1 unitaries, m = n / 2). Every contraction is generated
// from the Collins-Sniady sum over (σ, τ) ∈ S_m × S_m.
ComplexMatrix moment_function(std::span<const ComplexMatrix> xs, int d);

// Closed form of E^(4)(X1, X2, X3).
ComplexMatrix fourth_moment_closed(const ComplexMatrix& x1, const ComplexMatrix& x2,
                                   const ComplexMatrix& x3, int d);

}  // namespace haarmoments
