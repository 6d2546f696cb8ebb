#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cscope/integer.hpp"

namespace cscope {

using Rational = mpq_class;

std::string format_rational(const Rational& q);
/// Natural log of a positive rational, accurate for arbitrarily large parts.
double log_rational(const Rational& q);

/// Exact square rational matrix. Invertibility is a class invariant.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  static RationalMatrix identity(int n);
  /// num / den, den > 0. Throws SingularMatrix or DimensionMismatch.
  static RationalMatrix from_integer(const IntMat& num, Int den);
  static RationalMatrix from_entries(int n, std::vector<Rational> entries);

  int dim() const { return n_; }
  const Rational& operator()(int r, int c) const { return entries_[std::size_t(r) * n_ + c]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix inverse() const;
  Rational determinant() const;
  /// Induced l1 operator norm: maximum absolute column sum.
  Rational norm1() const;
  bool is_identity() const;

  std::vector<Rational> apply(std::span<const Int> v) const;
  /// Componentwise floor of apply(v).
  IntVec apply_floor(std::span<const Int> v) const;

  /// Smallest positive common denominator and the matching integer numerator.
  std::pair<IntMat, Int> integer_form() const;

  std::vector<std::vector<std::string>> formatted() const;

  bool operator==(const RationalMatrix& rhs) const {
    return n_ == rhs.n_ && entries_ == rhs.entries_;
  }
  /// Total order used only for canonical containers.
  bool operator<(const RationalMatrix& rhs) const;

 private:
  RationalMatrix(int n, std::vector<Rational> entries) : n_(n), entries_(std::move(entries)) {}
  Rational& at(int r, int c) { return entries_[std::size_t(r) * n_ + c]; }

  int n_ = 0;
  std::vector<Rational> entries_;
};

}  // namespace cscope
