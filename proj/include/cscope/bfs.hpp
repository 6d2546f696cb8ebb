#pragma once

#include <algorithm>
#include <iterator>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cscope/error.hpp"
#include "cscope/parallel.hpp"
#include "cscope/snapshot.hpp"

namespace cscope::detail {

template <class Key>
using NeighborList = std::vector<std::pair<Key, std::string>>;

template <class Key, class Hash>
struct LayeredBall {
  std::vector<Key> keys;
  std::unordered_map<Key, int, Hash> index;
  Snapshot snapshot;
};

/// Breadth-first ball with deterministic vertex order: by distance, then by
/// key. Each sphere is expanded in parallel and merged in sphere order.
template <class Key, class Hash, class Neighbors>
LayeredBall<Key, Hash> layered_ball(const Key& root, int radius, SnapshotKind kind, const Budget& budget,
                                    Neighbors&& neighbors) {
  if (radius < 0) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  LayeredBall<Key, Hash> out;
  Snapshot& snap = out.snapshot;
  snap.kind = kind;
  snap.radius = radius;
  out.keys.push_back(root);
  out.index.emplace(root, 0);
  snap.dist.push_back(0);

  constexpr std::size_t kBlock = std::size_t{1} << 14;
  constexpr std::size_t kRetainedEntries = std::size_t{1} << 22;

  auto expand = [&](std::size_t begin, std::size_t end) {
    std::vector<NeighborList<Key>> lists(end - begin);
    parallel_chunks(lists.size(), budget.threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) lists[i] = neighbors(out.keys[begin + i]);
    });
    return lists;
  };

  std::size_t layer_begin = 0;
  for (int r = 0; r <= radius; ++r) {
    const std::size_t layer_end = out.keys.size();
    // Neighbor lists are kept for the edge pass while they fit, otherwise recomputed.
    std::vector<NeighborList<Key>> kept;
    bool retained = true;
    std::size_t entries = 0;
    std::vector<Key> fresh;
    std::unordered_map<Key, char, Hash> seen;
    for (std::size_t b = layer_begin; b < layer_end; b += kBlock) {
      auto lists = expand(b, std::min(layer_end, b + kBlock));
      if (r < radius) {
        for (const auto& list : lists) {
          for (const auto& [k, label] : list) {
            if (out.index.count(k) || !seen.emplace(k, 0).second) continue;
            fresh.push_back(k);
            if (out.keys.size() + fresh.size() > budget.vertices) {
              fail(ErrorKind::BudgetExceeded,
                   "ball enumeration exceeds the vertex budget of " + std::to_string(budget.vertices));
            }
          }
        }
      }
      if (!retained) continue;
      for (const auto& list : lists) entries += list.size();
      if (entries > kRetainedEntries) {
        retained = false;
        kept.clear();
        kept.shrink_to_fit();
        continue;
      }
      std::move(lists.begin(), lists.end(), std::back_inserter(kept));
    }
    seen.clear();
    std::sort(fresh.begin(), fresh.end());
    for (auto& k : fresh) {
      out.index.emplace(k, int(out.keys.size()));
      out.keys.push_back(std::move(k));
      snap.dist.push_back(r + 1);
    }
    fresh.clear();

    snap.complete.resize(out.keys.size(), true);
    for (std::size_t b = layer_begin; b < layer_end; b += kBlock) {
      const std::size_t e = std::min(layer_end, b + kBlock);
      std::vector<NeighborList<Key>> recomputed;
      if (!retained) recomputed = expand(b, e);
      for (std::size_t u = b; u < e; ++u) {
        const auto& list = retained ? kept[u - layer_begin] : recomputed[u - b];
        std::vector<std::pair<int, const std::string*>> adj;
        for (const auto& [k, label] : list) {
          auto it = out.index.find(k);
          if (it == out.index.end()) {
            snap.complete[u] = false;
            continue;
          }
          if (it->second > int(u)) adj.emplace_back(it->second, &label);
        }
        std::stable_sort(adj.begin(), adj.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t j = 0; j < adj.size(); ++j) {
          if (j > 0 && adj[j].first == adj[j - 1].first) continue;
          snap.edges.push_back({int(u), adj[j].first, *adj[j].second});
        }
      }
    }
    layer_begin = layer_end;
    if (layer_begin == out.keys.size()) {
      break;
    }
  }
  snap.complete.resize(out.keys.size(), true);
  std::sort(snap.edges.begin(), snap.edges.end(),
            [](const SnapshotEdge& x, const SnapshotEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return out;
}

}  // namespace cscope::detail
