#include <random>
#include <set>

#include "doctest.h"

#include "cscope/error.hpp"
#include "cscope/integer.hpp"
#include "cscope/rational.hpp"

using namespace cscope;

namespace {

// Source lattice {v : (num/den) v integral} by brute force on a box.
bool brute_in_source(const IntMat& num, Int den, const IntVec& v) {
  for (int r = 0; r < num.rows(); ++r) {
    Int s = 0;
    for (int c = 0; c < num.cols(); ++c) s += num(r, c) * v[c];
    if (s % den != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("checked arithmetic detects overflow") {
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(-4, 5) == -20);
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), Error);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
  CHECK(floor_div(-7, 3) == -3);
  CHECK(floor_div(7, 3) == 2);
  CHECK(floor_div(-6, 3) == -2);
}

TEST_CASE("hermite basis is upper triangular with reduced entries") {
  const auto rows = hermite_rows({{4, 6}, {2, 3}, {0, 5}}, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == 0);
  CHECK(rows[0][0] > 0);
  CHECK(rows[1][1] > 0);
  CHECK(rows[0][1] >= 0);
  CHECK(rows[0][1] < rows[1][1]);
  const auto lat = LatticeBasis::from_generators({{4, 6}, {2, 3}, {0, 5}}, 2);
  CHECK(lat.index() == rows[0][0] * rows[1][1]);
  CHECK(lat.contains(IntVec{2, 3}));
  CHECK(lat.contains(IntVec{0, 5}));
  CHECK_FALSE(lat.contains(IntVec{1, 0}));
}

TEST_CASE("lattice reduce is a transversal and matches membership") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> entry(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back({entry(rng), entry(rng)});
    gens.push_back({entry(rng) * 0 + 7, 0});
    gens.push_back({0, 5});
    const auto lat = LatticeBasis::from_generators(gens, 2);
    std::set<IntVec> reps;
    for (Int x = -15; x <= 15; ++x) {
      for (Int y = -15; y <= 15; ++y) {
        const IntVec v{x, y};
        const IntVec r = lat.reduce(v);
        CHECK(lat.contains(sub(v, r)));
        CHECK(lat.reduce(r) == r);
        reps.insert(r);
      }
    }
    CHECK(Int(reps.size()) == lat.index());
    const auto t = lat.transversal();
    CHECK(Int(t.size()) == lat.index());
    CHECK(std::set<IntVec>(t.begin(), t.end()) == reps);
  }
}

TEST_CASE("congruence lattice equals brute-force source lattice") {
  const std::vector<std::pair<IntMat, Int>> cases = {
      {IntMat::from_rows({{5, 12}, {-12, 5}}), 13},
      {IntMat::from_rows({{1, 2}, {3, 4}}), 6},
      {IntMat::from_rows({{3}}), 1},
      {IntMat::from_rows({{2, 0}, {0, 3}}), 9},
  };
  for (const auto& [num, den] : cases) {
    const int n = num.rows();
    const auto lat = congruence_lattice({{num, den}}, n);
    std::set<IntVec> reps;
    const Int box = 20;
    if (n == 1) {
      for (Int x = -box; x <= box; ++x) {
        CHECK(lat.contains(IntVec{x}) == brute_in_source(num, den, {x}));
      }
    } else {
      for (Int x = -box; x <= box; ++x) {
        for (Int y = -box; y <= box; ++y) {
          CHECK(lat.contains(IntVec{x, y}) == brute_in_source(num, den, {x, y}));
          reps.insert(lat.reduce(IntVec{x, y}));
        }
      }
      CHECK(Int(reps.size()) == lat.index());
    }
  }
  const auto lm = congruence_lattice({{IntMat::from_rows({{5, 12}, {-12, 5}}), 13}}, 2);
  CHECK(lm.index() == 13);
}

TEST_CASE("image lattice of the source") {
  const IntMat num = IntMat::from_rows({{5, 12}, {-12, 5}});
  const auto src = congruence_lattice({{num, 13}}, 2);
  const auto img = image_lattice(num, 13, src);
  CHECK(img.index() == 13);
  for (Int x = -10; x <= 10; ++x) {
    for (Int y = -10; y <= 10; ++y) {
      const IntVec v{x, y};
      if (src.contains(v)) CHECK(img.contains(apply_exact(num, 13, v)));
    }
  }
  CHECK_THROWS_AS(apply_exact(num, 13, IntVec{1, 0}), Error);
}

TEST_CASE("rational matrices") {
  const auto m = RationalMatrix::from_integer(IntMat::from_rows({{5, 12}, {-12, 5}}), 13);
  CHECK(m.determinant() == 1);
  CHECK(m.norm1() == Rational(17, 13));
  CHECK((m * m.inverse()).is_identity());
  CHECK(m.inverse()(0, 1) == Rational(-12, 13));
  CHECK(format_rational(Rational(10, 26)) == "5/13");
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(log_rational(Rational(3)) == doctest::Approx(std::log(3.0)));
  CHECK_THROWS_AS(RationalMatrix::from_integer(IntMat::from_rows({{1, 2}, {2, 4}}), 1), Error);
  CHECK_THROWS_AS(RationalMatrix::from_integer(IntMat::from_rows({{1, 2}}), 1), Error);
  const auto third = RationalMatrix::from_integer(IntMat::from_rows({{1}}), 3);
  CHECK(third.apply_floor(IntVec{10}) == IntVec{3});
  CHECK(third.apply_floor(IntVec{-10}) == IntVec{-4});
  const auto [num, den] = m.integer_form();
  CHECK(den == 13);
  CHECK(num(1, 0) == -12);
}
