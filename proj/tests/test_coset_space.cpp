#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "cscope/cayley.hpp"
#include "cscope/coset_space.hpp"

using namespace cscope;

namespace {

std::size_t common_prefix(const CosetKey& a, const CosetKey& b) {
  std::size_t i = 0;
  while (i < a.depth() && i < b.depth() && a.syllables()[i] == b.syllables()[i]) ++i;
  return i;
}

std::set<std::string> neighbor_names(const FibredPresentation& g, const CosetKey& k) {
  std::set<std::string> out;
  for (const auto& n : quotient_neighbors(g, k)) out.insert(g.format(n.key));
  return out;
}

}  // namespace

TEST_CASE("coset keys") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto h = g.coset_key(g.identity());
  CHECK(g.coset_key(g.parse_word("x1^5")) == h);
  CHECK(g.coset_key(g.parse_word("t x1^7")) == g.coset_key(g.parse_word("x1^21 t")));
  CHECK(g.coset_key(g.parse_word("x1 t")) != g.coset_key(g.parse_word("t")));
  CHECK(g.format(h) == "H");
  CHECK(g.format(g.coset_key(g.parse_word("x1 t x1^4"))) == "x1 t H");
}

TEST_CASE("coset keys agree with the affine coset oracle") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto b = ball(g, 5);
  std::vector<oracle::Affine> images;
  for (const auto& x : b.elements) images.push_back(oracle::evaluate(3, x));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, b.elements.size() - 1);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t i = pick(rng), j = pick(rng);
    CHECK((g.coset_key(b.elements[i]) == g.coset_key(b.elements[j])) == oracle::same_coset(3, images[i], images[j]));
  }
}

TEST_CASE("coset invariance under the fibre") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<Int> entry(-50, 50);
  for (const auto& name : {"bs(1,3)", "leary-minasyan", "f2xZ", "bs(2,3)"}) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 250; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 6));
      IntVec v(g.rank());
      for (auto& c : v) c = entry(rng);
      CHECK(g.coset_key(g.multiply(x, g.from_vector(v))) == g.coset_key(x));
      CHECK(g.coset_key(g.representative(g.coset_key(x))) == g.coset_key(x));
    }
  }
}

TEST_CASE("quotient neighbors") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto h = g.coset_key(g.identity());
  CHECK(neighbor_names(g, h) == std::set<std::string>{"t H", "x1 t H", "x1^2 t H", "t^-1 H"});
  const auto f = FibredPresentation::preset("f2xZ");
  const auto fh = f.coset_key(f.identity());
  CHECK(quotient_neighbors(f, fh).size() == 4);
  const auto z = FibredPresentation::preset("z^3");
  CHECK(quotient_neighbors(z, z.coset_key(z.identity())).empty());
}

TEST_CASE("quotient neighbors are symmetric and bounded") {
  std::mt19937_64 rng(12);
  for (const auto& name : {"bs(1,3)", "leary-minasyan", "f2xZ", "bs(2,3)", "zn-semidirect(2,1;1,1)"}) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 40; ++trial) {
      const auto k = g.coset_key(g.parse_word(oracle::random_word(g, rng, 5)));
      const auto ns = quotient_neighbors(g, k);
      CHECK(Int(ns.size()) <= g.quotient_degree_bound());
      for (const auto& n : ns) {
        bool back = false;
        for (const auto& m : quotient_neighbors(g, n.key)) back = back || m.key == k;
        CHECK(back);
      }
    }
  }
}

TEST_CASE("quotient balls of trees") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  CHECK(quotient_ball(g, 1).keys.size() == 5);
  const auto q3 = quotient_ball(g, 3);
  CHECK(q3.keys.size() == 53);
  CHECK(q3.snapshot.edges.size() == 52);
  const auto z = FibredPresentation::preset("z^2");
  CHECK(quotient_ball(z, 5).keys.size() == 1);
  for (const auto& name : {"bs(1,3)", "bs(1,2)", "f2xZ", "f3xZ^2"}) {
    const auto p = FibredPresentation::preset(name);
    const auto q = quotient_ball(p, 4);
    const auto adj = q.snapshot.adjacency();
    for (std::size_t v = 0; v < q.keys.size(); ++v) {
      if (q.snapshot.dist[v] < 4) CHECK(Int(adj[v].size()) == p.quotient_degree_bound());
      CHECK(q.snapshot.dist[v] == int(q.keys[v].depth()));
    }
  }
}

TEST_CASE("quotient distance equals tree distance") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto q = quotient_ball(g, 4);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, q.keys.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = q.keys[pick(rng)];
    const auto& b = q.keys[pick(rng)];
    const int expected = int(a.depth() + b.depth() - 2 * common_prefix(a, b));
    CHECK(quotient_distance(g, a, b, 10) == expected);
  }
}

TEST_CASE("left action is a graph automorphism on the interior") {
  std::mt19937_64 rng(17);
  for (const auto& name : {"bs(1,3)", "leary-minasyan"}) {
    const auto g = FibredPresentation::preset(name);
    const auto q = quotient_ball(g, 3);
    for (int trial = 0; trial < 6; ++trial) {
      const auto w = g.parse_word(oracle::random_word(g, rng, 3));
      for (const auto& e : q.snapshot.edges) {
        if (q.snapshot.dist[e.a] >= 2 || q.snapshot.dist[e.b] >= 3) continue;
        const auto a = g.coset_key(g.multiply(w, g.representative(q.keys[e.a])));
        const auto b = g.coset_key(g.multiply(w, g.representative(q.keys[e.b])));
        bool adjacent = false;
        for (const auto& n : quotient_neighbors(g, a)) adjacent = adjacent || n.key == b;
        CHECK(adjacent);
      }
    }
  }
}

TEST_CASE("quotient map is 1-Lipschitz") {
  std::mt19937_64 rng(23);
  for (const auto& name : {"bs(1,3)", "leary-minasyan", "f2xZ"}) {
    const auto g = FibredPresentation::preset(name);
    for (int trial = 0; trial < 60; ++trial) {
      const auto x = g.parse_word(oracle::random_word(g, rng, 5));
      for (const auto& s : g.generators()) {
        auto y = x;
        g.right_multiply(y, s);
        CHECK(*quotient_distance(g, g.coset_key(x), g.coset_key(y), 3) <= 1);
      }
    }
  }
}

TEST_CASE("distance to a coset matches the affine oracle") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto key = g.coset_key(g.parse_word("t"));
  for (long k = -12; k <= 12; ++k) {
    const int expected = oracle::affine_distance_to_coset(3, oracle::a_power(k), oracle::t_power(1), 10);
    CHECK(distance_to_coset(g, g.from_vector(IntVec{k}), key, 10) == expected);
  }
}

TEST_CASE("Hausdorff lower bounds") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto h = coset_hausdorff_lb(g, g.coset_key(g.identity()), 4, 8);
  CHECK(h.combined == 0);
  CHECK(h.fibre_to_coset == 0);
  CHECK(h.coset_to_fibre == 0);

  const auto t = coset_hausdorff_lb(g, g.coset_key(g.parse_word("t")), 10, 20);
  CHECK(t.combined == 2);
  for (std::size_t i = 1; i < t.by_radius.size(); ++i) CHECK(*t.by_radius[i - 1] <= *t.by_radius[i]);

  // Brute force both directions in the affine model.
  int fibre_side = 0, coset_side = 0;
  for (long k = -10; k <= 10; ++k) {
    fibre_side = std::max(fibre_side, oracle::affine_distance_to_coset(3, oracle::a_power(k), oracle::t_power(1), 20));
    // t a^k lies in tH; distance to H.
    const auto x = oracle::compose(3, oracle::t_power(1), oracle::a_power(k));
    if (oracle::affine_length(3, x, 10) <= 10) {
      coset_side = std::max(coset_side, oracle::affine_distance_to_coset(3, x, oracle::Affine{}, 20));
    }
  }
  CHECK(std::max(fibre_side, coset_side) == 2);

  const auto f = FibredPresentation::preset("f2xZ");
  const auto ft = coset_hausdorff_lb(f, f.coset_key(f.parse_word("t")), 4, 10);
  CHECK(ft.combined == 1);
  CHECK(ft.stabilized_at <= 2);

  const auto capped = coset_hausdorff_lb(g, g.coset_key(g.parse_word("t^3")), 3, 3);
  CHECK_FALSE(capped.combined.has_value());
}

TEST_CASE("projection formula") {
  const auto g = FibredPresentation::preset("bs(1,3)");
  const auto key = g.coset_key(g.parse_word("t"));
  CHECK(projection_approx(g, key, IntVec{0}) == g.parse_word("t"));
  CHECK(projection_approx(g, key, IntVec{9}) == g.parse_word("t x1^3"));
  CHECK(projection_approx(g, key, IntVec{10}) == g.parse_word("t x1^3"));
  CHECK(distance(g, g.parse_word("x1^9"), g.parse_word("t x1^3"), 4) == 1);

  const auto q = projection_quality(g, key, 100, 30);
  REQUIRE(q.gap.has_value());
  CHECK(*q.gap <= 2);
  CHECK(*q.gap >= 0);
  CHECK(q.samples == 201);
  const auto h = projection_quality(g, g.coset_key(g.identity()), 50, 10);
  CHECK(h.gap == 0);

  const auto f = FibredPresentation::preset("f2xZ");
  CHECK(projection_quality(f, f.coset_key(f.parse_word("t")), 100, 30).gap == 0);
}
