#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cscope {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

// Overflow-checked primitives; throw Error(Overflow).
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int floor_div(Int a, Int b);

IntVec add(std::span<const Int> a, std::span<const Int> b);
IntVec sub(std::span<const Int> a, std::span<const Int> b);
IntVec scaled(std::span<const Int> a, Int k);
bool is_zero(std::span<const Int> v);
Int l1_norm(std::span<const Int> v);

/// Dense row-major integer matrix.
class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<IntVec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  Int operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  IntVec row(int r) const;
  IntVec column(int c) const;

  auto operator<=>(const IntMat&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

/// Applies the rational map num/den to v. The result must be integral; the
/// caller guarantees v lies in the corresponding source lattice.
IntVec apply_exact(const IntMat& num, Int den, std::span<const Int> v);

/// True if num * v is divisible by den componentwise.
bool maps_to_integers(const IntMat& num, Int den, std::span<const Int> v);

/// Row-style Hermite normal form of the lattice spanned by the given rows.
/// Output rows are echelon with positive pivots and every entry above a
/// pivot reduced into [0, pivot). Zero rows are dropped.
std::vector<IntVec> hermite_rows(const std::vector<IntVec>& generators, int cols);

/// Full-rank sublattice of Z^n in Hermite normal form.
///
/// The basis is stored as rows of an upper triangular matrix. reduce() maps
/// every vector to the unique representative of its class whose i-th
/// coordinate lies in [0, pivot_i); those representatives form the canonical
/// transversal of Z^n / L.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  static LatticeBasis whole(int n);
  /// Throws DimensionMismatch if the generators do not span a full-rank lattice.
  static LatticeBasis from_generators(const std::vector<IntVec>& generators, int n);

  int dim() const { return basis_.rows(); }
  Int index() const { return index_; }
  const IntMat& basis() const { return basis_; }
  Int pivot(int i) const { return basis_(i, i); }

  IntVec reduce(std::span<const Int> v) const;
  bool contains(std::span<const Int> v) const;
  /// All reduced representatives, in lexicographic order of coordinates.
  std::vector<IntVec> transversal() const;

  auto operator<=>(const LatticeBasis&) const = default;

 private:
  IntMat basis_;
  Int index_ = 1;
};

/// The lattice {x in Z^n : num_k * x == 0 (mod den_k) for every k}.
LatticeBasis congruence_lattice(const std::vector<std::pair<IntMat, Int>>& conditions, int n);

/// The image lattice {num/den * x : x in source}; every image must be integral.
LatticeBasis image_lattice(const IntMat& num, Int den, const LatticeBasis& source);

std::string format_vector(std::span<const Int> v);

struct IntVecHash {
  std::size_t operator()(std::span<const Int> v) const noexcept;
};

inline std::size_t hash_mix(std::size_t seed, std::uint64_t value) noexcept {
  value *= 0x9e3779b97f4a7c15ULL;
  value ^= value >> 29;
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace cscope
