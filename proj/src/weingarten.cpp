#include "haarmoments/weingarten.hpp"

#include "haarmoments/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace haarmoments {

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("Partition: at least one part required");
  for (int p : parts_) {
    if (p <= 0) throw DomainError("Partition: parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_rec(remaining - p, p, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int m) {
  if (m < 1) throw DomainError("partitions_of: m must be >= 1");
  std::vector<Partition> out;
  std::vector<int> current;
  partitions_rec(m, m, current, out);
  return out;
}

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int m = size();
  if (m < 1) throw DomainError("Permutation: empty mapping");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int v : mapping_) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("Permutation: mapping is not a bijection on {0..m-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> id(static_cast<std::size_t>(m));
  std::iota(id.begin(), id.end(), 0);
  return Permutation(std::move(id));
}

std::vector<Permutation> Permutation::all(int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    inv[static_cast<std::size_t>(mapping_[i])] = static_cast<int>(i);
  }
  return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(mapping_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[static_cast<std::size_t>(i)]; i = (*this)(i)) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DomainError("Permutation: composing different orders");
  std::vector<int> out(a.mapping_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(out));
}

Partition conjugacy_class_of(const Permutation& p) {
  std::vector<int> lengths;
  for (const auto& c : p.cycles()) lengths.push_back(static_cast<int>(c.size()));
  return Partition(std::move(lengths));
}

// ---------------------------------------------------------------- characters

int CharacterTable::character(const Partition& irrep, const Partition& cls) const {
  const auto r = std::find(irreps.begin(), irreps.end(), irrep);
  const auto c = std::find(classes.begin(), classes.end(), cls);
  if (r == irreps.end() || c == classes.end()) {
    throw DomainError("CharacterTable: unknown partition for S_" + std::to_string(m));
  }
  return chi[static_cast<std::size_t>(r - irreps.begin())]
            [static_cast<std::size_t>(c - classes.begin())];
}

long long CharacterTable::class_size(const Partition& cls) const {
  const auto c = std::find(classes.begin(), classes.end(), cls);
  if (c == classes.end()) throw DomainError("CharacterTable: unknown class");
  return class_sizes[static_cast<std::size_t>(c - classes.begin())];
}

namespace {

CharacterTable make_table(int m, std::vector<std::vector<int>> classes, std::vector<long long> sizes,
                          std::vector<std::vector<int>> irreps, std::vector<std::vector<int>> chi) {
  CharacterTable t;
  t.m = m;
  for (auto& c : classes) t.classes.emplace_back(std::move(c));
  t.class_sizes = std::move(sizes);
  for (auto& r : irreps) t.irreps.emplace_back(std::move(r));
  t.chi = std::move(chi);
  return t;
}

const std::vector<CharacterTable>& all_tables() {
  static const std::vector<CharacterTable> tables = [] {
    std::vector<CharacterTable> t;
    t.push_back(make_table(1, {{1}}, {1}, {{1}}, {{1}}));
    t.push_back(make_table(2, {{1, 1}, {2}}, {1, 1}, {{2}, {1, 1}}, {{1, 1}, {1, -1}}));
    t.push_back(make_table(3, {{1, 1, 1}, {2, 1}, {3}}, {1, 3, 2},
                           {{3}, {2, 1}, {1, 1, 1}},
                           {{1, 1, 1},
                            {2, 0, -1},
                            {1, -1, 1}}));
    t.push_back(make_table(4, {{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}}, {1, 6, 3, 8, 6},
                           {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}},
                           {{1, 1, 1, 1, 1},
                            {3, 1, -1, 0, -1},
                            {2, 0, 2, -1, 0},
                            {3, -1, -1, 0, 1},
                            {1, -1, 1, 1, -1}}));
    return t;
  }();
  return tables;
}

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

const CharacterTable& character_table(int m) {
  if (m < 1 || m > kMaxSymmetricOrder) {
    throw DomainError("character_table: only m = 1..4 are tabulated (got " + std::to_string(m) +
                      ")");
  }
  return all_tables()[static_cast<std::size_t>(m - 1)];
}

double schur_dimension(const Partition& lambda, int d) {
  if (d < 1) throw DomainError("schur_dimension: d must be >= 1");
  const CharacterTable& table = character_table(lambda.weight());
  // long double keeps the integer sum exact well past d = 4096.
  long double sum = 0.0L;
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    long double power = 1.0L;
    for (int k = 0; k < table.classes[c].rows(); ++k) power *= d;
    sum += power * table.character(lambda, table.classes[c]) * table.class_sizes[c];
  }
  return static_cast<double>(sum / factorial(table.m));
}

double weingarten(const Partition& sigma_class, int d) {
  const int m = sigma_class.weight();
  const CharacterTable& table = character_table(m);
  if (d < m) {
    throw SingularWeingarten("Weingarten function of S_" + std::to_string(m) +
                             " requires d >= " + std::to_string(m) + " (got d = " +
                             std::to_string(d) + ")");
  }
  const Partition identity_class(std::vector<int>(static_cast<std::size_t>(m), 1));
  double sum = 0.0;
  for (const Partition& lambda : table.irreps) {
    const double s = schur_dimension(lambda, d);
    if (s == 0.0) {
      throw SingularWeingarten("Weingarten function: s_{" + lambda.to_string() + "," +
                               std::to_string(d) + "}(1) vanishes");
    }
    const double chi_e = table.character(lambda, identity_class);
    sum += chi_e * chi_e * table.character(lambda, sigma_class) / s;
  }
  const double mf = static_cast<double>(factorial(m));
  return sum / (mf * mf);
}

WeingartenCache::WeingartenCache(int m, int d) : m_(m), d_(d) {
  for (const Partition& cls : character_table(m).classes) values_.emplace(cls, weingarten(cls, d));
}

double WeingartenCache::operator()(const Partition& cls) const {
  const auto it = values_.find(cls);
  if (it == values_.end()) throw DomainError("WeingartenCache: class " + cls.to_string());
  return it->second;
}

// ---------------------------------------------------------------- moments

namespace {

// Memoized products and traces of words in a fixed alphabet of matrices.
class WordCache {
 public:
  WordCache(std::vector<const ComplexMatrix*> letters, int d) : letters_(std::move(letters)), d_(d) {}

  const ComplexMatrix& product(const std::vector<int>& word) {
    if (auto it = products_.find(word); it != products_.end()) return it->second;
    ComplexMatrix value;
    if (word.empty()) {
      value = ComplexMatrix::Identity(d_, d_);
    } else {
      std::vector<int> prefix(word.begin(), word.end() - 1);
      value = product(prefix) * *letters_[static_cast<std::size_t>(word.back())];
    }
    return products_.emplace(word, std::move(value)).first->second;
  }

  // Trace is cyclic, so rotate the word to start at its smallest letter first.
  Complex trace(std::vector<int> word) {
    std::rotate(word.begin(), std::min_element(word.begin(), word.end()), word.end());
    if (auto it = traces_.find(word); it != traces_.end()) return it->second;
    const Complex value = product(word).trace();
    traces_.emplace(word, value);
    return value;
  }

 private:
  std::vector<const ComplexMatrix*> letters_;
  int d_;
  std::map<std::vector<int>, ComplexMatrix> products_;
  std::map<std::vector<int>, Complex> traces_;
};

}  // namespace

// Write the integrand as U_0 A_0 U_0† B_0 U_1 A_1 U_1† B_1 ... U_{m-1} A_{m-1} U_{m-1}†
// with A_p = X_{2p+1} and B_p = X_{2p+2}. The Collins-Sniady sum pairs the column
// indices of the U's through τ and the row indices through σ:
//  - τ joins A_p to A_{τ⁻¹(p)}; each cycle of τ contributes one trace.
//  - σ links B_p to B_{σ(p+1)}; the chain starting at σ(0) carries the outer
//    indices (i, j) and ends at slot m-1, every other chain closes into a trace.
ComplexMatrix moment_function(std::span<const ComplexMatrix> xs, int d) {
  const int q = static_cast<int>(xs.size());
  if (q < 1 || q > 2 * kMaxSymmetricOrder - 1 || q % 2 == 0) {
    throw DimensionError("moment_function: number of operators must be 1, 3, 5 or 7 (got " +
                         std::to_string(q) + ")");
  }
  if (d < 1) throw DimensionError("moment_function: d must be >= 1");
  for (const auto& x : xs) {
    if (x.rows() != d || x.cols() != d) {
      throw DimensionError("moment_function: every operator must be " + std::to_string(d) + "x" +
                           std::to_string(d));
    }
  }
  const int m = (q + 1) / 2;
  const WeingartenCache wg(m, d);

  std::vector<const ComplexMatrix*> a_letters;
  std::vector<const ComplexMatrix*> b_letters;
  for (int p = 0; p < m; ++p) a_letters.push_back(&xs[static_cast<std::size_t>(2 * p)]);
  for (int p = 0; p + 1 < m; ++p) b_letters.push_back(&xs[static_cast<std::size_t>(2 * p + 1)]);
  WordCache a_words(a_letters, d);
  WordCache b_words(b_letters, d);

  const std::vector<Permutation> perms = Permutation::all(m);

  std::vector<Complex> tau_weight;
  tau_weight.reserve(perms.size());
  for (const Permutation& tau : perms) {
    const Permutation inv = tau.inverse();
    Complex value = 1.0;
    for (const auto& cycle : inv.cycles()) value *= a_words.trace(cycle);
    tau_weight.push_back(value);
  }

  ComplexMatrix result = ComplexMatrix::Zero(d, d);
  for (const Permutation& sigma : perms) {
    const Permutation sigma_inv = sigma.inverse();
    Complex coefficient = 0.0;
    for (std::size_t t = 0; t < perms.size(); ++t) {
      if (tau_weight[t] == Complex(0.0)) continue;
      coefficient += wg(perms[t] * sigma_inv) * tau_weight[t];
    }
    if (coefficient == Complex(0.0)) continue;

    std::vector<bool> used(static_cast<std::size_t>(m), false);
    std::vector<int> open_word;
    int slot = sigma(0);
    while (slot != m - 1) {
      used[static_cast<std::size_t>(slot)] = true;
      open_word.push_back(slot);
      slot = sigma(slot + 1);
    }
    used[static_cast<std::size_t>(m - 1)] = true;

    Complex closed = 1.0;
    for (int start = 0; start + 1 < m; ++start) {
      if (used[static_cast<std::size_t>(start)]) continue;
      std::vector<int> cycle;
      for (int p = start; !used[static_cast<std::size_t>(p)]; p = sigma(p + 1)) {
        used[static_cast<std::size_t>(p)] = true;
        cycle.push_back(p);
      }
      closed *= b_words.trace(cycle);
    }
    result += (coefficient * closed) * b_words.product(open_word);
  }
  return result;
}

ComplexMatrix fourth_moment_closed(const ComplexMatrix& x1, const ComplexMatrix& x2,
                                   const ComplexMatrix& x3, int d) {
  for (const ComplexMatrix* x : {&x1, &x2, &x3}) {
    if (x->rows() != d || x->cols() != d) {
      throw DimensionError("fourth_moment_closed: operators must be d x d");
    }
  }
  if (d < 2) throw SingularWeingarten("fourth_moment_closed requires d >= 2 (got d = 1)");
  const double dd = d;
  const double denom = dd * (dd * dd - 1.0);
  const Complex tr13 = (x3 * x1).trace();
  const Complex tr1 = x1.trace();
  const Complex tr3 = x3.trace();
  const Complex identity_coeff = (dd * tr13 - tr1 * tr3) / denom * x2.trace();
  const Complex x2_coeff = (dd * tr1 * tr3 - tr13) / denom;
  return identity_coeff * ComplexMatrix::Identity(d, d) + x2_coeff * x2;
}

}  // namespace haarmoments
