#include "cscope/integer.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <gmpxx.h>

#include "cscope/error.hpp"

namespace cscope {

namespace {

[[noreturn]] void overflow() { fail(ErrorKind::Overflow, "64-bit integer overflow"); }

Int narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) overflow();
  return static_cast<Int>(v);
}

Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) overflow();
  return z.get_si();
}

using ZRow = std::vector<mpz_class>;

void reduce_floor(ZRow& target, const ZRow& by, const mpz_class& q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < target.size(); ++k) target[k] -= q * by[k];
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) overflow();
  return out;
}

Int checked_sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) overflow();
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) overflow();
  return out;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IntVec add(std::span<const Int> a, std::span<const Int> b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add(a[i], b[i]);
  return out;
}

IntVec sub(std::span<const Int> a, std::span<const Int> b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_sub(a[i], b[i]);
  return out;
}

IntVec scaled(std::span<const Int> a, Int k) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_mul(a[i], k);
  return out;
}

bool is_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

Int l1_norm(std::span<const Int> v) {
  Int s = 0;
  for (Int x : v) s = checked_add(s, x < 0 ? checked_sub(0, x) : x);
  return s;
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return {};
  IntMat m(int(rows.size()), int(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (int(rows[r].size()) != m.cols()) fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVec IntMat::row(int r) const {
  return IntVec(data_.begin() + std::ptrdiff_t(r) * cols_, data_.begin() + std::ptrdiff_t(r + 1) * cols_);
}

IntVec IntMat::column(int c) const {
  IntVec out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntVec apply_exact(const IntMat& num, Int den, std::span<const Int> v) {
  IntVec out(num.rows());
  for (int r = 0; r < num.rows(); ++r) {
    __int128 acc = 0;
    for (int c = 0; c < num.cols(); ++c) {
      acc += static_cast<__int128>(num(r, c)) * v[c];
    }
    if (acc % den != 0) fail(ErrorKind::InvalidArgument, "vector outside the source lattice");
    out[r] = narrow(acc / den);
  }
  return out;
}

bool maps_to_integers(const IntMat& num, Int den, std::span<const Int> v) {
  for (int r = 0; r < num.rows(); ++r) {
    __int128 acc = 0;
    for (int c = 0; c < num.cols(); ++c) acc += static_cast<__int128>(num(r, c)) * v[c];
    if (acc % den != 0) return false;
  }
  return true;
}

std::vector<IntVec> hermite_rows(const std::vector<IntVec>& generators, int cols) {
  std::vector<ZRow> a;
  a.reserve(generators.size());
  for (const auto& g : generators) {
    if (int(g.size()) != cols) fail(ErrorKind::DimensionMismatch, "generator length mismatch");
    ZRow row(cols);
    for (int c = 0; c < cols; ++c) row[c] = mpz_class(static_cast<long>(g[c]));
    a.push_back(std::move(row));
  }

  const std::size_t k = a.size();
  std::size_t r = 0;
  for (int col = 0; col < cols && r < k; ++col) {
    for (;;) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i) {
        if (a[i][col] != 0 && (best == k || abs(a[i][col]) < abs(a[best][col]))) best = i;
      }
      if (best == k) break;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (a[i][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
        reduce_floor(a[i], a[r], q);
        if (a[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][col] == 0) continue;
    if (a[r][col] < 0) {
      for (auto& x : a[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
      reduce_floor(a[i], a[r], q);
    }
    ++r;
  }

  std::vector<IntVec> out;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec row(cols);
    for (int c = 0; c < cols; ++c) row[c] = to_int(a[i][c]);
    out.push_back(std::move(row));
  }
  return out;
}

LatticeBasis LatticeBasis::whole(int n) {
  LatticeBasis b;
  b.basis_ = IntMat::identity(n);
  b.index_ = 1;
  return b;
}

LatticeBasis LatticeBasis::from_generators(const std::vector<IntVec>& generators, int n) {
  auto rows = hermite_rows(generators, n);
  if (int(rows.size()) != n) fail(ErrorKind::DimensionMismatch, "lattice is not full rank");
  LatticeBasis b;
  b.basis_ = IntMat::from_rows(rows);
  if (n == 0) b.basis_ = IntMat(0, 0);
  b.index_ = 1;
  for (int i = 0; i < n; ++i) {
    if (b.basis_(i, i) <= 0) fail(ErrorKind::DimensionMismatch, "lattice is not full rank");
    b.index_ = checked_mul(b.index_, b.basis_(i, i));
  }
  return b;
}

IntVec LatticeBasis::reduce(std::span<const Int> v) const {
  IntVec out(v.begin(), v.end());
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    const Int q = floor_div(out[i], basis_(i, i));
    if (q == 0) continue;
    for (int c = i; c < n; ++c) out[c] = checked_sub(out[c], checked_mul(q, basis_(i, c)));
  }
  return out;
}

bool LatticeBasis::contains(std::span<const Int> v) const { return is_zero(reduce(v)); }

std::vector<IntVec> LatticeBasis::transversal() const {
  const int n = dim();
  std::vector<IntVec> out;
  out.reserve(static_cast<std::size_t>(index_));
  IntVec cur(n, 0);
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0) {
      if (++cur[i] < basis_(i, i)) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

LatticeBasis congruence_lattice(const std::vector<std::pair<IntMat, Int>>& conditions, int n) {
  const int blocks = int(conditions.size());
  const int width = blocks * n + n;
  std::vector<IntVec> gens;
  for (int i = 0; i < n; ++i) {
    IntVec row(width, 0);
    for (int k = 0; k < blocks; ++k) {
      const auto& [num, den] = conditions[k];
      for (int r = 0; r < n; ++r) row[k * n + r] = num(r, i);
    }
    row[blocks * n + i] = 1;
    gens.push_back(std::move(row));
  }
  for (int k = 0; k < blocks; ++k) {
    for (int r = 0; r < n; ++r) {
      IntVec row(width, 0);
      row[k * n + r] = conditions[k].second;
      gens.push_back(std::move(row));
    }
  }
  auto hnf = hermite_rows(gens, width);
  std::vector<IntVec> tail_rows;
  for (const auto& row : hnf) {
    if (is_zero(std::span<const Int>(row).first(std::size_t(blocks) * n))) {
      tail_rows.emplace_back(row.begin() + std::ptrdiff_t(blocks) * n, row.end());
    }
  }
  return LatticeBasis::from_generators(tail_rows, n);
}

LatticeBasis image_lattice(const IntMat& num, Int den, const LatticeBasis& source) {
  std::vector<IntVec> gens;
  for (int i = 0; i < source.dim(); ++i) gens.push_back(apply_exact(num, den, source.basis().row(i)));
  return LatticeBasis::from_generators(gens, source.dim());
}

std::string format_vector(std::span<const Int> v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
  return os.str();
}

std::size_t IntVecHash::operator()(std::span<const Int> v) const noexcept {
  std::size_t h = v.size();
  for (Int x : v) h = hash_mix(h, static_cast<std::uint64_t>(x));
  return h;
}

}  // namespace cscope
