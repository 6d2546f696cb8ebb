#include "cscope/cayley.hpp"

#include <algorithm>

#include "cscope/bfs.hpp"
#include "cscope/error.hpp"

namespace cscope {

namespace {

using DepthMap = std::unordered_map<GroupElement, int, GroupElementHash>;

struct Search {
  DepthMap depth;
  std::vector<GroupElement> frontier;
  int level = 0;
};

/// Layered bidirectional search from e toward target; both sides walk by
/// right multiplication, which is valid because the generating set is
/// symmetric. Fills the two depth maps and returns the meeting distance.
std::optional<int> bidirectional(const FibredPresentation& group, const GroupElement& target, int cap,
                                 const Budget& budget, Search& fwd, Search& bwd) {
  fwd.depth.emplace(group.identity(), 0);
  fwd.frontier.push_back(group.identity());
  if (target == group.identity()) return 0;
  if (cap <= 0) return std::nullopt;
  bwd.depth.emplace(target, 0);
  bwd.frontier.push_back(target);

  const auto& gens = group.generators();
  while (fwd.level + bwd.level < cap) {
    Search& side = fwd.frontier.size() <= bwd.frontier.size() ? fwd : bwd;
    const Search& other = &side == &fwd ? bwd : fwd;
    if (side.frontier.empty()) return std::nullopt;
    std::vector<GroupElement> next;
    std::optional<int> best;
    for (const auto& x : side.frontier) {
      for (const auto& s : gens) {
        GroupElement y = x;
        group.right_multiply(y, s);
        if (side.depth.count(y)) continue;
        if (auto it = other.depth.find(y); it != other.depth.end()) {
          const int total = side.level + 1 + it->second;
          if (!best || total < *best) best = total;
        }
        side.depth.emplace(y, side.level + 1);
        next.push_back(std::move(y));
      }
    }
    if (fwd.depth.size() + bwd.depth.size() > budget.vertices) {
      fail(ErrorKind::BudgetExceeded, "distance search exceeds the vertex budget");
    }
    side.frontier = std::move(next);
    ++side.level;
    if (best) return *best <= cap ? best : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

int GroupBall::find(const GroupElement& g) const {
  auto it = index.find(g);
  return it == index.end() ? -1 : it->second;
}

GroupBall ball(const FibredPresentation& group, int radius, const Budget& budget) {
  const auto& gens = group.generators();
  std::vector<std::string> labels;
  for (const auto& s : gens) labels.push_back(group.generator_label(s));
  auto layered = detail::layered_ball<GroupElement, GroupElementHash>(
      group.identity(), radius, SnapshotKind::Group, budget, [&](const GroupElement& g) {
        detail::NeighborList<GroupElement> out;
        out.reserve(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
          GroupElement h = g;
          group.right_multiply(h, gens[i]);
          out.emplace_back(std::move(h), labels[i]);
        }
        return out;
      });
  GroupBall out;
  out.snapshot = std::move(layered.snapshot);
  out.elements = std::move(layered.keys);
  out.index = std::move(layered.index);
  out.snapshot.labels.resize(out.elements.size());
  parallel_chunks(out.elements.size(), budget.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out.snapshot.labels[i] = group.format(out.elements[i]);
  });
  return out;
}

std::vector<std::size_t> growth(const FibredPresentation& group, int radius, const Budget& budget) {
  return ball(group, radius, budget).snapshot.sphere_sizes();
}

std::optional<int> distance(const FibredPresentation& group, const GroupElement& g, const GroupElement& h, int cap,
                            const Budget& budget) {
  if (cap < 0) fail(ErrorKind::InvalidArgument, "cap must be nonnegative");
  Search fwd, bwd;
  return bidirectional(group, group.multiply(group.invert(g), h), cap, budget, fwd, bwd);
}

std::optional<std::vector<GroupElement>> geodesic(const FibredPresentation& group, const GroupElement& g,
                                                  const GroupElement& h, int cap, const Budget& budget) {
  if (cap < 0) fail(ErrorKind::InvalidArgument, "cap must be nonnegative");
  const GroupElement target = group.multiply(group.invert(g), h);
  Search fwd, bwd;
  const auto d = bidirectional(group, target, cap, budget, fwd, bwd);
  if (!d) return std::nullopt;

  // Find a meeting point, then descend each depth map to its root.
  const auto& gens = group.generators();
  std::optional<GroupElement> meet;
  for (const auto& [x, dx] : fwd.depth) {
    auto it = bwd.depth.find(x);
    if (it != bwd.depth.end() && dx + it->second == *d && (!meet || x < *meet)) meet = x;
  }
  if (!meet && *d == 0) meet = target;
  if (!meet) fail(ErrorKind::InvalidArgument, "internal: no meeting point on a geodesic");

  auto descend = [&](const DepthMap& depth, GroupElement x) {
    std::vector<GroupElement> path{x};
    for (int level = depth.at(x); level > 0; --level) {
      std::optional<GroupElement> prev;
      for (const auto& s : gens) {
        GroupElement y = x;
        group.right_multiply(y, s);
        auto it = depth.find(y);
        if (it != depth.end() && it->second == level - 1 && (!prev || y < *prev)) prev = y;
      }
      x = *prev;
      path.push_back(x);
    }
    return path;
  };

  auto front = descend(fwd.depth, *meet);
  std::reverse(front.begin(), front.end());
  if (bwd.depth.count(*meet)) {
    auto back = descend(bwd.depth, *meet);
    front.insert(front.end(), back.begin() + 1, back.end());
  }
  std::vector<GroupElement> out;
  out.reserve(front.size());
  for (const auto& x : front) out.push_back(group.multiply(g, x));
  return out;
}

std::optional<std::vector<GroupElement>> t_chain(const FibredPresentation& group, const GroupElement& g,
                                                 const GroupElement& h, int step, int cap, const Budget& budget) {
  if (step < 1) fail(ErrorKind::InvalidArgument, "t_step must be at least 1");
  auto path = geodesic(group, g, h, cap, budget);
  if (!path) return std::nullopt;
  std::vector<GroupElement> chain;
  for (std::size_t i = 0; i < path->size(); i += std::size_t(step)) chain.push_back((*path)[i]);
  if (!(chain.back() == path->back())) chain.push_back(path->back());
  return chain;
}

}  // namespace cscope
