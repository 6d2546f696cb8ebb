#pragma once

// Independent reference models used to check the library. None of these
// touch normal forms: they work in faithful linear representations or by
// exhaustive enumeration.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cscope/presentation.hpp"

namespace oracle {

// BS(1,n) acting on Q by affine maps: a = x -> x+1, t = x -> n x.
// The element is x -> scale*x + shift, stored as (k, shift) with scale = n^k.
struct Affine {
  long k = 0;
  mpq_class shift = 0;
  bool operator<(const Affine& o) const {
    if (k != o.k) return k < o.k;
    return shift < o.shift;
  }
  bool operator==(const Affine& o) const { return k == o.k && shift == o.shift; }
};

inline mpq_class power(long n, long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
}

// Words act in reading order as matrices [[scale, shift],[0,1]] multiplied left to right.
inline Affine compose(long n, const Affine& f, const Affine& g) {
  return {f.k + g.k, f.shift + power(n, f.k) * g.shift};
}

inline Affine a_power(long m) { return {0, mpq_class(m)}; }
inline Affine t_power(long e) { return {e, 0}; }

// Evaluate a normal form of BS(1,n) through its syllable data.
inline Affine evaluate(long n, const cscope::GroupElement& g) {
  Affine acc;
  for (const auto& s : g.syllables()) {
    acc = compose(n, acc, a_power(s.residue[0]));
    acc = compose(n, acc, t_power(s.sign));
  }
  return compose(n, acc, a_power(g.tail()[0]));
}

// Sphere sizes of the Cayley graph ball computed in the affine model.
inline std::vector<std::size_t> affine_spheres(long n, int radius) {
  std::set<Affine> seen{Affine{}};
  std::vector<Affine> frontier{Affine{}};
  std::vector<std::size_t> sizes{1};
  const Affine gens[] = {a_power(1), a_power(-1), t_power(1), t_power(-1)};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Affine> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        Affine y = compose(n, x, s);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return sizes;
}

// Word length in the affine model, by plain BFS.
inline int affine_length(long n, const Affine& target, int cap) {
  std::set<Affine> seen{Affine{}};
  std::vector<Affine> frontier{Affine{}};
  const Affine gens[] = {a_power(1), a_power(-1), t_power(1), t_power(-1)};
  for (int r = 0; r <= cap; ++r) {
    for (const auto& x : frontier) {
      if (x == target) return r;
    }
    std::vector<Affine> next;
    for (const auto& x : frontier) {
      for (const auto& s : gens) {
        Affine y = compose(n, x, s);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return -1;
}

// Left coset gH with H = <a>: {g a^m} = maps with the same scale and shift
// congruent modulo n^k.
inline bool same_coset(long n, const Affine& x, const Affine& y) {
  if (x.k != y.k) return false;
  const mpq_class diff = (x.shift - y.shift) / power(n, x.k);
  return diff.get_den() == 1;
}

// Distance from x to the coset gH by BFS in the affine model.
inline int affine_distance_to_coset(long n, const Affine& x, const Affine& g, int cap) {
  std::set<Affine> seen{x};
  std::vector<Affine> frontier{x};
  const Affine gens[] = {a_power(1), a_power(-1), t_power(1), t_power(-1)};
  for (int r = 0; r <= cap; ++r) {
    for (const auto& y : frontier) {
      if (same_coset(n, y, g)) return r;
    }
    std::vector<Affine> next;
    for (const auto& y : frontier) {
      for (const auto& s : gens) {
        Affine z = compose(n, y, s);
        if (seen.insert(z).second) next.push_back(z);
      }
    }
    frontier = std::move(next);
  }
  return -1;
}

// Dense GF(2) rank by Gaussian elimination on bit rows.
inline std::size_t dense_rank(std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t j = 0; j < cols; ++j) m[r][j] ^= m[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

// Random word over the vector generators and letters of a group.
inline std::string random_word(const cscope::FibredPresentation& g, std::mt19937_64& rng, int length) {
  std::string out;
  const int letters = static_cast<int>(g.letters().size());
  std::uniform_int_distribution<int> pick(0, g.rank() + letters - 1);
  std::uniform_int_distribution<int> exponent(-3, 3);
  for (int i = 0; i < length; ++i) {
    const int s = pick(rng);
    int e = exponent(rng);
    if (e == 0) e = 1;
    if (!out.empty()) out += ' ';
    out += s < g.rank() ? "x" + std::to_string(s + 1) : g.letters()[s - g.rank()].name;
    out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace oracle
