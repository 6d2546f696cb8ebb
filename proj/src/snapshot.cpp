#include "cscope/snapshot.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "cscope/error.hpp"

namespace cscope {

std::string to_string(SnapshotKind kind) {
  switch (kind) {
    case SnapshotKind::Group: return "group";
    case SnapshotKind::Quotient: return "quotient";
    case SnapshotKind::Abstract: return "abstract";
  }
  return "abstract";
}

std::vector<std::vector<int>> Snapshot::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

std::vector<std::size_t> Snapshot::sphere_sizes() const {
  std::vector<std::size_t> out(std::size_t(radius) + 1, 0);
  for (int d : dist) {
    if (d >= 0 && d <= radius) ++out[d];
  }
  return out;
}

Snapshot Snapshot::abstract(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges) {
  Snapshot s;
  s.kind = SnapshotKind::Abstract;
  s.labels = std::move(labels);
  const int n = int(s.labels.size());
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) fail(ErrorKind::InvalidArgument, "bad abstract edge");
    s.edges.push_back({std::min(a, b), std::max(a, b), ""});
  }
  s.dist.assign(n, -1);
  s.complete.assign(n, true);
  if (n == 0) return s;
  const auto adj = s.adjacency();
  std::deque<int> queue{0};
  s.dist[0] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (s.dist[v] < 0) {
        s.dist[v] = s.dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  s.radius = *std::max_element(s.dist.begin(), s.dist.end());
  return s;
}

nlohmann::json Snapshot::to_json() const {
  nlohmann::json edges_json = nlohmann::json::array();
  for (const auto& e : edges) edges_json.push_back({e.a, e.b, e.label});
  return {{"kind", to_string(kind)}, {"radius", radius}, {"vertices", labels}, {"dist", dist}, {"edges", edges_json}};
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Snapshot::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < size(); ++v) {
    os << "  " << v << " [label=" << quoted(labels[v]) << ", dist=" << dist[v] << "];\n";
  }
  for (const auto& e : edges) {
    os << "  " << e.a << " -- " << e.b;
    if (!e.label.empty()) os << " [label=" << quoted(e.label) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cscope
