#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace cscope {

enum class SnapshotKind { Group, Quotient, Abstract };

std::string to_string(SnapshotKind kind);

struct SnapshotEdge {
  int a = 0;
  int b = 0;
  std::string label;
};

/// A finite metric graph with basepoint distances.
///
/// Vertex 0 is the basepoint. Edges are undirected, stored once with a < b.
/// complete[v] is true when every neighbour of v in the ambient graph is a
/// vertex of the snapshot; BFS snapshots guarantee it for dist < radius.
struct Snapshot {
  SnapshotKind kind = SnapshotKind::Abstract;
  int radius = 0;
  std::vector<std::string> labels;
  std::vector<int> dist;
  std::vector<SnapshotEdge> edges;
  std::vector<bool> complete;

  std::size_t size() const { return labels.size(); }
  std::vector<std::vector<int>> adjacency() const;
  std::vector<std::size_t> sphere_sizes() const;

  /// Builds an abstract snapshot from an edge list; distances are BFS
  /// distances from vertex 0 and every vertex is marked complete.
  static Snapshot abstract(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

  nlohmann::json to_json() const;
  std::string to_dot(const std::string& name) const;
};

}  // namespace cscope
