#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "cscope/error.hpp"
#include "cscope/presentation.hpp"

using namespace cscope;

namespace {

const std::vector<std::string> kPresets = {"bs(1,3)", "bs(1,2)", "bs(2,3)", "f2xZ", "f1xZ^2",
                                           "leary-minasyan", "z^2", "zn-semidirect(2,1;1,1)"};

std::string vector_token(const IntVec& v) {
  std::string s = "v[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// A word equal to the identity: a conjugation relator or a commutator.
std::string random_relator(const FibredPresentation& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> entry(-3, 3);
  IntVec v(g.rank());
  for (auto& x : v) x = entry(rng);
  if (g.letters().empty() || rng() % 3 == 0) {
    IntVec w(g.rank());
    for (auto& x : w) x = entry(rng);
    return vector_token(v) + " " + vector_token(w) + " " + vector_token(scaled(v, -1)) + " " +
           vector_token(scaled(w, -1));
  }
  const int i = int(rng() % g.letters().size());
  const Letter& l = g.letters()[i];
  // Combine source basis rows to land in B.
  IntVec b(g.rank(), 0);
  for (int r = 0; r < g.rank(); ++r) b = add(b, scaled(l.source.basis().row(r), entry(rng)));
  const IntVec mb = apply_exact(l.num, l.den, b);
  if (rng() % 2) return l.name + " " + vector_token(b) + " " + l.name + "^-1 " + vector_token(scaled(mb, -1));
  return l.name + "^-1 " + vector_token(mb) + " " + l.name + " " + vector_token(scaled(b, -1));
}

std::vector<std::string> split(const std::string& w) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : w) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace

TEST_CASE("validate computes lattices and indices") {
  const auto bs = FibredPresentation::preset("bs(1,3)");
  REQUIRE(bs.letters().size() == 1);
  CHECK(bs.letters()[0].source.index() == 1);
  CHECK(bs.letters()[0].image.index() == 3);
  CHECK(bs.quotient_degree_bound() == 4);

  const auto lm = FibredPresentation::preset("leary-minasyan");
  CHECK(lm.letters()[0].source.index() == 13);
  CHECK(lm.letters()[0].image.index() == 13);

  PresentationDocument doc;
  doc.rank = 2;
  doc.letters.push_back({"t", IntMat::identity(2), 1});
  const auto id = FibredPresentation::validate(doc);
  CHECK(id.letters()[0].source.index() == 1);
  CHECK(id.letters()[0].image.index() == 1);
}

TEST_CASE("validate rejects bad documents") {
  using nlohmann::json;
  auto kind_of = [](const json& doc) {
    try {
      FibredPresentation::from_json(doc);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind_of(json{{"rank", 1}, {"letters", {{{"name", "t"}, {"num", {{0}}}, {"den", 1}}}}}) ==
        ErrorKind::SingularMatrix);
  CHECK(kind_of(json{{"rank", 2}, {"letters", {{{"name", "t"}, {"num", {{1}}}, {"den", 1}}}}}) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of(json{{"rank", 1},
                     {"letters",
                      {{{"name", "t"}, {"num", {{2}}}, {"den", 1}}, {{"name", "t"}, {"num", {{3}}}, {"den", 1}}}}}) ==
        ErrorKind::DuplicateName);
  CHECK(kind_of(json{{"rank", 1}, {"letters", {{{"name", "x1"}, {"num", {{2}}}, {"den", 1}}}}}) ==
        ErrorKind::InvalidName);
  CHECK(kind_of(json{{"rank", 1}, {"letters", {{{"name", "t"}, {"num", {{2}}}, {"den", 0}}}}}) ==
        ErrorKind::ConfigError);
  CHECK(kind_of(json{{"letters", json::array()}}) == ErrorKind::ConfigError);
  CHECK_THROWS_AS(FibredPresentation::preset("nonsense"), Error);
}

TEST_CASE("document round trip and stable hash") {
  const auto lm = FibredPresentation::preset("leary-minasyan");
  const auto again = FibredPresentation::from_json(lm.document().to_json());
  CHECK(again.hash_hex() == lm.hash_hex());
  CHECK(lm.hash_hex().size() == 16);
  CHECK(lm.hash_hex() != FibredPresentation::preset("bs(1,3)").hash_hex());
}

TEST_CASE("parse and normalize in BS(1,3)") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto a = g.parse_word("t x1 t^-1");
  CHECK(a.in_fibre());
  CHECK(a.tail() == IntVec{3});
  CHECK(g.parse_word("") == g.identity());
  CHECK(g.parse_word("t^-1 x1^3 t").tail() == IntVec{1});
  const auto b = g.parse_word("t^-1 x1 t");
  REQUIRE(b.syllables().size() == 2);
  CHECK(b.syllables()[0].sign == -1);
  CHECK(b.syllables()[1].residue == IntVec{1});
  CHECK(b.tail() == IntVec{0});
  CHECK(g.format(g.parse_word("x1^7 t")) == "x1 t x1^2");
  CHECK(g.parse_word("x1^7 t") == g.parse_word("x1 t x1^2"));
  CHECK(g.multiply(g.parse_word("t"), g.parse_word("x1")) == g.parse_word("x1^3 t"));
  CHECK(g.invert(g.parse_word("x1 t")) == g.parse_word("t^-1 x1^-1"));
  CHECK(g.multiply(g.parse_word("t"), g.parse_word("t^-1")) == g.identity());
  CHECK(g.parse_word("v[4] * x1^-1 . e") == g.parse_word("x1^3"));
  CHECK(g.normalize({LetterPower{0, 1}, IntVec{1}, LetterPower{0, -1}}).tail() == IntVec{3});
}

TEST_CASE("parse errors") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  auto kind_of = [&](const std::string& w, ParseOptions o = {}) {
    try {
      g.parse_word(w, o);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind_of("q") == ErrorKind::UnknownToken);
  CHECK(kind_of("x2") == ErrorKind::UnknownToken);
  CHECK(kind_of("v[1,2]") == ErrorKind::MalformedVector);
  CHECK(kind_of("v[1") == ErrorKind::MalformedVector);
  CHECK(kind_of("x1^2000000") == ErrorKind::ExponentOutOfRange);
  CHECK(kind_of("t^11", ParseOptions{10}) == ErrorKind::ExponentOutOfRange);
}

TEST_CASE("mixing presentations is rejected") {
  const auto a = FibredPresentation::preset("bs(1,3)");
  const auto b = FibredPresentation::preset("bs(1,2)");
  try {
    a.multiply(a.parse_word("t"), b.parse_word("t"));
    FAIL("expected PresentationMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PresentationMismatch);
  }
}

TEST_CASE("normal forms agree with the affine model of BS(1,n)") {
  std::mt19937_64 rng(11);
  for (long n : {2L, 3L, 5L}) {
    const auto g = FibredPresentation::preset("bs(1," + std::to_string(n) + ")");
    for (int trial = 0; trial < 300; ++trial) {
      const std::string w = oracle::random_word(g, rng, 8);
      oracle::Affine expected;
      for (const auto& tok : split(w)) {
        const auto caret = tok.find('^');
        const long e = std::stol(tok.substr(caret + 1));
        expected = oracle::compose(n, expected, tok[0] == 't' ? oracle::t_power(e) : oracle::a_power(e));
      }
      const auto x = g.parse_word(w);
      CHECK(oracle::evaluate(n, x) == expected);
    }
  }
}

TEST_CASE("normal form uniqueness under relator insertion") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const auto& name : kPresets) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 125; ++trial) {
      auto tokens = split(oracle::random_word(g, rng, 6));
      const auto base = g.parse_word(join(tokens));
      for (int k = 0; k < 3; ++k) {
        const auto pos = rng() % (tokens.size() + 1);
        const auto rel = split(random_relator(g, rng));
        tokens.insert(tokens.begin() + long(pos), rel.begin(), rel.end());
      }
      const auto other = g.parse_word(join(tokens));
      CHECK(other == base);
      CHECK(other.syllables() == base.syllables());
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("reduced form has no pinches and reduced residues") {
  std::mt19937_64 rng(9);
  for (const auto& name : kPresets) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 10));
      const auto& s = x.syllables();
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Letter& l = g.letters()[s[i].letter];
        const auto& lat = s[i].sign > 0 ? l.image : l.source;
        CHECK(lat.reduce(s[i].residue) == s[i].residue);
        if (i > 0 && s[i].letter == s[i - 1].letter && s[i].sign == -s[i - 1].sign) {
          CHECK_FALSE(is_zero(s[i].residue));
        }
      }
      CHECK(g.normalize({x.tail()}) == g.from_vector(x.tail()));
      // Re-parsing the printed form gives the same element.
      CHECK(g.parse_word(g.format(x)) == x);
    }
  }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(3);
  for (const auto& name : kPresets) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 60; ++trial) {
      const auto a = g.parse_word(oracle::random_word(g, rng, 5));
      const auto b = g.parse_word(oracle::random_word(g, rng, 5));
      const auto c = g.parse_word(oracle::random_word(g, rng, 5));
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.invert(g.invert(a)) == a);
      CHECK(g.multiply(a, g.invert(a)) == g.identity());
      CHECK(g.multiply(g.invert(a), a) == g.identity());
      CHECK(g.multiply(a, g.identity()) == a);
    }
  }
}

TEST_CASE("matrix A") {
  const auto bs = FibredPresentation::preset("bs(1,3)");
  CHECK(bs.matrix_A(bs.parse_word("t"))(0, 0) == Rational(1, 3));
  CHECK(bs.matrix_A(bs.parse_word("x1^5")).is_identity());
  CHECK(bs.matrix_A(bs.identity()).is_identity());
  const auto lm = FibredPresentation::preset("leary-minasyan");
  const auto a = lm.matrix_A(lm.parse_word("t"));
  CHECK(a(0, 0) == Rational(5, 13));
  CHECK(a(0, 1) == Rational(-12, 13));
  CHECK(a(1, 0) == Rational(12, 13));
  CHECK(a(1, 1) == Rational(5, 13));

  std::mt19937_64 rng(21);
  for (const auto& name : kPresets) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 60; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 6));
      const auto k = g.parse_word(oracle::random_word(g, rng, 6));
      CHECK(g.matrix_A(g.multiply(x, k)) == g.matrix_A(k) * g.matrix_A(x));
      CHECK(g.matrix_A(g.multiply(x, g.from_vector(IntVec(g.rank(), 4)))) == g.matrix_A(x));
      CHECK(g.matrix_A(g.coset_key(x)) == g.matrix_A(x));
    }
  }
}

TEST_CASE("A_g realizes conjugation on the fibre") {
  // Whenever g^-1 v g lies in the fibre it equals A_g v.
  std::mt19937_64 rng(4);
  for (const auto& name : {"bs(1,3)", "leary-minasyan", "bs(2,3)"}) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 4));
      const auto ci = g.commensuration_indices(x);
      CHECK(ci.source >= 1);
      CHECK(ci.image >= 1);
      const RationalMatrix a = g.matrix_A(x);
      for (Int c = -40; c <= 40; ++c) {
        IntVec v(g.rank(), 0);
        v[0] = c;
        const auto conj = g.multiply(g.multiply(g.invert(x), g.from_vector(v)), x);
        const auto image = a.apply(v);
        bool integral = true;
        for (const auto& q : image) integral = integral && q.get_den() == 1;
        if (conj.in_fibre()) {
          CHECK(integral);
          for (int i = 0; i < g.rank(); ++i) CHECK(Rational(conj.tail()[i]) == image[i]);
        }
      }
    }
  }
}

TEST_CASE("commensuration indices") {
  const auto bs = FibredPresentation::preset("bs(1,3)");
  auto ci = bs.commensuration_indices(bs.parse_word("t"));
  CHECK(ci.source == 1);
  CHECK(ci.image == 3);
  ci = bs.commensuration_indices(bs.parse_word("t^-1"));
  CHECK(ci.source == 3);
  CHECK(ci.image == 1);
  ci = bs.commensuration_indices(bs.parse_word("x1^4"));
  CHECK(ci.source == 1);
  CHECK(ci.image == 1);
  // Brute force: L = {v : t^2 v t^-2 in Z} for BS(1,3) is all of Z, image 9Z.
  ci = bs.commensuration_indices(bs.parse_word("t^2"));
  CHECK(ci.source == 1);
  CHECK(ci.image == 9);
}

TEST_CASE("commensuration indices match brute force in rank one") {
  std::mt19937_64 rng(8);
  for (const auto& name : {"bs(1,3)", "bs(2,3)", "bs(1,2)", "bs(3,2)"}) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 3));
      Int source = 0, image = 0;
      for (Int v = 1; v <= 2000 && source == 0; ++v) {
        const auto conj = g.multiply(g.multiply(x, g.from_vector(IntVec{v})), g.invert(x));
        if (conj.in_fibre()) {
          source = v;
          image = std::abs(conj.tail()[0]);
        }
      }
      if (source == 0) continue;
      const auto ci = g.commensuration_indices(x);
      CHECK(ci.source == source);
      CHECK(ci.image == image);
    }
  }
}
