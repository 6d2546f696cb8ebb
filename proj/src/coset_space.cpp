#include "cscope/coset_space.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "cscope/bfs.hpp"
#include "cscope/cayley.hpp"
#include "cscope/error.hpp"

namespace cscope {

namespace {

const std::vector<IntVec>& checked_transversal(const Letter& l, bool image) {
  const auto& t = image ? l.image_transversal : l.source_transversal;
  if (t.empty()) fail(ErrorKind::BudgetExceeded, "letter " + l.name + ": transversal too large to enumerate");
  return t;
}

void enumerate_l1_ball(int rank, Int range, IntVec& cur, int pos, Int remaining, std::vector<IntVec>& out) {
  if (pos == rank) {
    out.push_back(cur);
    return;
  }
  for (Int x = -remaining; x <= remaining; ++x) {
    cur[pos] = x;
    enumerate_l1_ball(rank, range, cur, pos + 1, remaining - (x < 0 ? -x : x), out);
  }
  cur[pos] = 0;
}

}  // namespace

int QuotientBall::find(const CosetKey& key) const {
  auto it = index.find(key);
  return it == index.end() ? -1 : it->second;
}

std::vector<QuotientNeighbor> quotient_neighbors(const FibredPresentation& group, const CosetKey& key) {
  const GroupElement rep = group.representative(key);
  std::vector<QuotientNeighbor> out;
  const bool small = group.quotient_degree_bound() <= 64;
  std::unordered_set<CosetKey, CosetKeyHash> seen;
  auto fresh = [&](const CosetKey& k) {
    if (!small) return seen.insert(k).second;
    for (const auto& n : out) {
      if (n.key == k) return false;
    }
    return true;
  };
  const auto& letters = group.letters();
  for (int i = 0; i < int(letters.size()); ++i) {
    for (int sign : {1, -1}) {
      for (const auto& r : checked_transversal(letters[i], sign > 0)) {
        GroupElement y = rep;
        group.right_multiply_vector(y, r);
        group.right_multiply_letter(y, i, sign);
        CosetKey k = group.coset_key(y);
        if (fresh(k)) {
          out.push_back({std::move(k), sign > 0 ? letters[i].name : letters[i].name + "^-1"});
        }
      }
    }
  }
  return out;
}

QuotientBall quotient_ball(const FibredPresentation& group, int radius, const Budget& budget) {
  auto layered = detail::layered_ball<CosetKey, CosetKeyHash>(
      group.coset_key(group.identity()), radius, SnapshotKind::Quotient, budget, [&](const CosetKey& k) {
        detail::NeighborList<CosetKey> out;
        for (auto& n : quotient_neighbors(group, k)) out.emplace_back(std::move(n.key), std::move(n.label));
        return out;
      });
  QuotientBall out;
  out.snapshot = std::move(layered.snapshot);
  out.keys = std::move(layered.keys);
  out.index = std::move(layered.index);
  out.snapshot.labels.resize(out.keys.size());
  parallel_chunks(out.keys.size(), budget.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out.snapshot.labels[i] = group.format(out.keys[i]);
  });
  return out;
}

std::optional<int> quotient_distance(const FibredPresentation& group, const CosetKey& a, const CosetKey& b, int cap,
                                     const Budget& budget) {
  if (cap < 0) fail(ErrorKind::InvalidArgument, "cap must be nonnegative");
  if (a == b) return 0;
  using Map = std::unordered_map<CosetKey, int, CosetKeyHash>;
  Map da{{a, 0}}, db{{b, 0}};
  std::vector<CosetKey> fa{a}, fb{b};
  int la = 0, lb = 0;
  while (la + lb < cap) {
    const bool first = fa.size() <= fb.size();
    Map& depth = first ? da : db;
    const Map& other = first ? db : da;
    auto& frontier = first ? fa : fb;
    int& level = first ? la : lb;
    if (frontier.empty()) return std::nullopt;
    std::vector<CosetKey> next;
    std::optional<int> best;
    for (const auto& x : frontier) {
      for (auto& n : quotient_neighbors(group, x)) {
        if (depth.count(n.key)) continue;
        if (auto it = other.find(n.key); it != other.end()) {
          const int total = level + 1 + it->second;
          if (!best || total < *best) best = total;
        }
        depth.emplace(n.key, level + 1);
        next.push_back(std::move(n.key));
      }
    }
    if (da.size() + db.size() > budget.vertices) {
      fail(ErrorKind::BudgetExceeded, "quotient distance search exceeds the vertex budget");
    }
    frontier = std::move(next);
    ++level;
    if (best) return *best <= cap ? best : std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> distance_to_coset(const FibredPresentation& group, const GroupElement& x, const CosetKey& key,
                                     int cap, const Budget& budget) {
  group.check_same_group(x);
  group.check_same_group(key);
  if (cap < 0) fail(ErrorKind::InvalidArgument, "cap must be nonnegative");
  if (x.syllables() == key.syllables()) return 0;
  std::unordered_set<GroupElement, GroupElementHash> seen{x};
  std::vector<GroupElement> frontier{x};
  const auto& gens = group.generators();
  for (int level = 1; level <= cap; ++level) {
    std::vector<GroupElement> next;
    for (const auto& y : frontier) {
      for (const auto& s : gens) {
        GroupElement z = y;
        group.right_multiply(z, s);
        if (z.syllables() == key.syllables()) return level;
        if (seen.insert(z).second) next.push_back(std::move(z));
      }
    }
    if (seen.size() > budget.vertices) fail(ErrorKind::BudgetExceeded, "coset search exceeds the vertex budget");
    frontier = std::move(next);
  }
  return std::nullopt;
}

HausdorffBound coset_hausdorff_lb(const FibredPresentation& group, const CosetKey& key, int sample_radius,
                                  int search_cap, const Budget& budget) {
  if (sample_radius < 0) fail(ErrorKind::InvalidArgument, "sample radius must be nonnegative");
  if (sample_radius > search_cap) fail(ErrorKind::InvalidArgument, "sample radius must not exceed the search cap");
  const GroupElement g = group.representative(key);
  const CosetKey fibre = group.coset_key(group.identity());
  const GroupBall sample_ball = ball(group, sample_radius, budget);

  struct Sample {
    int radius;
    std::optional<int> to_coset;
    std::optional<int> to_fibre;
  };
  std::vector<std::size_t> fibre_points;
  for (std::size_t i = 0; i < sample_ball.elements.size(); ++i) {
    if (sample_ball.elements[i].in_fibre()) fibre_points.push_back(i);
  }
  std::vector<Sample> samples(fibre_points.size());
  parallel_chunks(samples.size(), budget.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const GroupElement& h = sample_ball.elements[fibre_points[j]];
      samples[j].radius = sample_ball.snapshot.dist[fibre_points[j]];
      samples[j].to_coset = distance_to_coset(group, h, key, search_cap, budget);
      samples[j].to_fibre = distance_to_coset(group, group.multiply(g, h), fibre, search_cap, budget);
    }
  });

  auto merge = [](std::optional<int>& acc, const std::optional<int>& v, bool& unknown) {
    if (!v) {
      unknown = true;
      return;
    }
    if (!acc || *v > *acc) acc = v;
  };

  HausdorffBound out;
  out.samples = samples.size();
  std::optional<int> to_coset, to_fibre;
  bool unknown_coset = false, unknown_fibre = false;
  for (int s = 0; s <= sample_radius; ++s) {
    for (const auto& smp : samples) {
      if (smp.radius != s) continue;
      merge(to_coset, smp.to_coset, unknown_coset);
      merge(to_fibre, smp.to_fibre, unknown_fibre);
    }
    std::optional<int> combined;
    if (!unknown_coset && !unknown_fibre && to_coset && to_fibre) combined = std::max(*to_coset, *to_fibre);
    out.by_radius.push_back(combined);
  }
  out.fibre_to_coset = unknown_coset ? std::nullopt : to_coset;
  out.coset_to_fibre = unknown_fibre ? std::nullopt : to_fibre;
  out.combined = out.by_radius.back();
  out.stabilized_at = sample_radius;
  while (out.stabilized_at > 0 && out.by_radius[out.stabilized_at - 1] == out.combined) --out.stabilized_at;
  return out;
}

GroupElement projection_approx(const FibredPresentation& group, const CosetKey& key, std::span<const Int> v) {
  if (int(v.size()) != group.rank()) fail(ErrorKind::MalformedVector, "vector length differs from rank");
  GroupElement g = group.representative(key);
  const IntVec shift = group.matrix_A(key).apply_floor(v);
  group.right_multiply_vector(g, shift);
  return g;
}

ProjectionQuality projection_quality(const FibredPresentation& group, const CosetKey& key, Int range, int cap,
                                     const Budget& budget) {
  if (range < 0 || cap < 0) fail(ErrorKind::InvalidArgument, "range and cap must be nonnegative");
  std::vector<IntVec> points;
  IntVec cur(group.rank(), 0);
  enumerate_l1_ball(group.rank(), range, cur, 0, range, points);
  std::sort(points.begin(), points.end());

  std::vector<std::optional<int>> gaps(points.size());
  parallel_chunks(points.size(), budget.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const GroupElement x = group.from_vector(points[i]);
      const auto to_projection = distance(group, x, projection_approx(group, key, points[i]), cap, budget);
      const auto to_coset = distance_to_coset(group, x, key, cap, budget);
      if (to_projection && to_coset) gaps[i] = *to_projection - *to_coset;
    }
  });

  ProjectionQuality out;
  out.samples = points.size();
  int best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!gaps[i]) {
      out.gap = std::nullopt;
      out.worst = points[i];
      return out;
    }
    if (i == 0 || *gaps[i] > best) {
      best = *gaps[i];
      out.worst = points[i];
    }
  }
  out.gap = best;
  return out;
}

}  // namespace cscope
