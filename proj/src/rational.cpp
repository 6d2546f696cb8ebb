#include "cscope/rational.hpp"

#include <cmath>

#include "cscope/error.hpp"

namespace cscope {

namespace {

double log_integer(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(std::fabs(mantissa)) + double(exponent) * std::log(2.0);
}

Rational det_of(int n, std::vector<Rational> a) {
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a[std::size_t(r) * n + col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[std::size_t(piv) * n + c], a[std::size_t(col) * n + c]);
      det = -det;
    }
    const Rational p = a[std::size_t(col) * n + col];
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const Rational f = a[std::size_t(r) * n + col] / p;
      if (f == 0) continue;
      for (int c = col; c < n; ++c) a[std::size_t(r) * n + c] -= f * a[std::size_t(col) * n + c];
    }
  }
  return det;
}

}  // namespace

std::string format_rational(const Rational& raw) {
  Rational q = raw;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log_rational(const Rational& q) {
  if (q <= 0) fail(ErrorKind::InvalidArgument, "log of a non-positive rational");
  return log_integer(q.get_num()) - log_integer(q.get_den());
}

RationalMatrix RationalMatrix::identity(int n) {
  std::vector<Rational> e(std::size_t(n) * n, Rational(0));
  for (int i = 0; i < n; ++i) e[std::size_t(i) * n + i] = 1;
  return RationalMatrix(n, std::move(e));
}

RationalMatrix RationalMatrix::from_integer(const IntMat& num, Int den) {
  if (num.rows() != num.cols()) fail(ErrorKind::DimensionMismatch, "matrix is not square");
  if (den <= 0) fail(ErrorKind::InvalidArgument, "denominator must be positive");
  const int n = num.rows();
  std::vector<Rational> e(std::size_t(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Rational q(mpz_class(static_cast<long>(num(r, c))), mpz_class(static_cast<long>(den)));
      q.canonicalize();
      e[std::size_t(r) * n + c] = q;
    }
  }
  return from_entries(n, std::move(e));
}

RationalMatrix RationalMatrix::from_entries(int n, std::vector<Rational> entries) {
  if (entries.size() != std::size_t(n) * n) fail(ErrorKind::DimensionMismatch, "entry count mismatch");
  if (det_of(n, entries) == 0) fail(ErrorKind::SingularMatrix, "matrix is singular");
  return RationalMatrix(n, std::move(entries));
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (n_ != rhs.n_) fail(ErrorKind::DimensionMismatch, "matrix product dimension mismatch");
  std::vector<Rational> e(std::size_t(n_) * n_, Rational(0));
  for (int r = 0; r < n_; ++r) {
    for (int k = 0; k < n_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < n_; ++c) e[std::size_t(r) * n_ + c] += a * rhs(k, c);
    }
  }
  return RationalMatrix(n_, std::move(e));
}

RationalMatrix RationalMatrix::inverse() const {
  const int n = n_;
  std::vector<Rational> a = entries_;
  RationalMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (a[std::size_t(piv) * n + col] == 0) ++piv;
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a[std::size_t(piv) * n + c], a[std::size_t(col) * n + c]);
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    }
    const Rational p = a[std::size_t(col) * n + col];
    for (int c = 0; c < n; ++c) {
      a[std::size_t(col) * n + c] /= p;
      inv.at(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rational f = a[std::size_t(r) * n + col];
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) {
        a[std::size_t(r) * n + c] -= f * a[std::size_t(col) * n + c];
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

Rational RationalMatrix::determinant() const { return det_of(n_, entries_); }

Rational RationalMatrix::norm1() const {
  Rational best = 0;
  for (int c = 0; c < n_; ++c) {
    Rational s = 0;
    for (int r = 0; r < n_; ++r) s += abs((*this)(r, c));
    if (s > best) best = s;
  }
  return best;
}

bool RationalMatrix::is_identity() const {
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

std::vector<Rational> RationalMatrix::apply(std::span<const Int> v) const {
  std::vector<Rational> out(n_, Rational(0));
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) out[r] += (*this)(r, c) * mpz_class(static_cast<long>(v[c]));
  }
  return out;
}

IntVec RationalMatrix::apply_floor(std::span<const Int> v) const {
  IntVec out(n_);
  const auto exact = apply(v);
  for (int r = 0; r < n_; ++r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), exact[r].get_num_mpz_t(), exact[r].get_den_mpz_t());
    if (!q.fits_slong_p()) fail(ErrorKind::Overflow, "floor does not fit in 64 bits");
    out[r] = q.get_si();
  }
  return out;
}

std::pair<IntMat, Int> RationalMatrix::integer_form() const {
  mpz_class den = 1;
  for (const auto& q : entries_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  if (!den.fits_slong_p()) fail(ErrorKind::Overflow, "denominator does not fit in 64 bits");
  IntMat num(n_, n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      const Rational& q = (*this)(r, c);
      mpz_class v = q.get_num() * (den / q.get_den());
      if (!v.fits_slong_p()) fail(ErrorKind::Overflow, "numerator does not fit in 64 bits");
      num(r, c) = v.get_si();
    }
  }
  return {num, den.get_si()};
}

std::vector<std::vector<std::string>> RationalMatrix::formatted() const {
  std::vector<std::vector<std::string>> out(n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) out[r].push_back(format_rational((*this)(r, c)));
  }
  return out;
}

bool RationalMatrix::operator<(const RationalMatrix& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const int c = cmp(entries_[i], rhs.entries_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace cscope
