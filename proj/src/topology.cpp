#include "cscope/topology.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "cscope/error.hpp"

namespace cscope {

namespace {

/// Vertices within `scale` of each vertex (excluding itself), sorted.
std::vector<std::vector<int>> truncated_neighborhoods(const Snapshot& snapshot, int scale) {
  const auto adj = snapshot.adjacency();
  const int n = int(snapshot.size());
  std::vector<std::vector<int>> near(n);
  std::vector<int> mark(n, -1), depth(n, 0);
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    mark[s] = s;
    depth[s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (u != s) near[s].push_back(u);
      if (depth[u] == scale) continue;
      for (int v : adj[u]) {
        if (mark[v] == s) continue;
        mark[v] = s;
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
    std::sort(near[s].begin(), near[s].end());
  }
  return near;
}

/// Connected components of the subgraph induced on `keep`, ordered by their
/// smallest vertex.
std::vector<std::vector<int>> induced_components(const std::vector<std::vector<int>>& adj,
                                                 const std::vector<bool>& keep) {
  const int n = int(adj.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (!keep[s] || comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = int(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int v : adj[members[i]]) {
        if (keep[v] && comp[v] < 0) {
          comp[v] = comp[s];
          members.push_back(v);
        }
      }
    }
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rips complexes

int RipsComplex2::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b));
  if (it == edges.end() || *it != std::make_pair(a, b)) return -1;
  return int(it - edges.begin());
}

std::vector<Gf2Column> RipsComplex2::boundary1() const {
  std::vector<Gf2Column> cols;
  cols.reserve(edges.size());
  for (auto [a, b] : edges) cols.push_back({a, b});
  return cols;
}

std::vector<Gf2Column> RipsComplex2::boundary2() const {
  std::vector<Gf2Column> cols;
  cols.reserve(triangles.size());
  for (const auto& t : triangles) {
    Gf2Column c{edge_index(t[0], t[1]), edge_index(t[0], t[2]), edge_index(t[1], t[2])};
    std::sort(c.begin(), c.end());
    cols.push_back(std::move(c));
  }
  return cols;
}

std::string RipsComplex2::triplets(const std::vector<Gf2Column>& columns, std::size_t rows) {
  std::size_t nnz = 0;
  for (const auto& c : columns) nnz += c.size();
  std::ostringstream os;
  os << rows << ' ' << columns.size() << ' ' << nnz << '\n';
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (int r : columns[j]) os << r << ' ' << j << '\n';
  }
  return os.str();
}

RipsComplex2 rips(const Snapshot& snapshot, int scale, std::size_t triangle_limit) {
  if (scale < 0) fail(ErrorKind::InvalidArgument, "Rips scale must be nonnegative");
  RipsComplex2 out;
  out.scale = scale;
  out.vertices = snapshot.size();
  const auto near = truncated_neighborhoods(snapshot, scale);
  const int n = int(out.vertices);
  for (int u = 0; u < n; ++u) {
    for (int v : near[u]) {
      if (v > u) out.edges.emplace_back(u, v);
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v : near[u]) {
      if (v <= u) continue;
      auto a = std::upper_bound(near[u].begin(), near[u].end(), v);
      auto b = std::upper_bound(near[v].begin(), near[v].end(), v);
      while (a != near[u].end() && b != near[v].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          out.triangles.push_back({u, v, *a});
          if (out.triangles.size() > triangle_limit) {
            fail(ErrorKind::BudgetExceeded, "Rips triangle count exceeds the limit");
          }
          ++a;
          ++b;
        }
      }
    }
  }
  return out;
}

bool boundaries_compose_to_zero(const RipsComplex2& complex) {
  const auto d1 = complex.boundary1();
  for (const auto& col : complex.boundary2()) {
    Gf2Column sum;
    for (int e : col) {
      if (e < 0) return false;
      sum = xor_columns(sum, d1[e]);
    }
    if (!sum.empty()) return false;
  }
  return true;
}

Betti betti_z2(const RipsComplex2& complex) {
  const std::size_t rank1 = gf2_rank(complex.boundary1(), complex.vertices);
  const std::size_t rank2 = gf2_rank(complex.boundary2(), complex.edges.size());
  return {complex.vertices - rank1, complex.edges.size() - rank1 - rank2};
}

AcyclicityResult relative_acyclicity(const Snapshot& inner, int inner_scale, const Snapshot& outer, int outer_scale,
                                     std::size_t triangle_limit) {
  if (inner_scale > outer_scale) fail(ErrorKind::InvalidArgument, "inner scale must not exceed outer scale");
  std::unordered_map<std::string, int> outer_id;
  for (std::size_t i = 0; i < outer.size(); ++i) outer_id.emplace(outer.labels[i], int(i));
  std::vector<int> to_outer(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    auto it = outer_id.find(inner.labels[i]);
    if (it == outer_id.end()) fail(ErrorKind::InvalidArgument, "inner vertex " + inner.labels[i] + " not in outer");
    to_outer[i] = it->second;
  }

  const RipsComplex2 in = rips(inner, inner_scale, triangle_limit);
  const RipsComplex2 out = rips(outer, outer_scale, triangle_limit);
  Gf2Eliminator boundaries(out.edges.size());
  for (auto& col : out.boundary2()) boundaries.insert(std::move(col));

  // Fundamental cycles of a BFS spanning forest span the cycle space.
  const int n = int(in.vertices);
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    adj[in.edges[e].first].emplace_back(in.edges[e].second, int(e));
    adj[in.edges[e].second].emplace_back(in.edges[e].first, int(e));
  }
  std::vector<int> parent(n, -1), parent_edge(n, -1), depth(n, -1);
  std::vector<bool> tree_edge(in.edges.size(), false);
  for (int s = 0; s < n; ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (auto [v, e] : adj[u]) {
        if (depth[v] >= 0) continue;
        depth[v] = depth[u] + 1;
        parent[v] = u;
        parent_edge[v] = e;
        tree_edge[e] = true;
        queue.push_back(v);
      }
    }
  }

  AcyclicityResult result;
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    std::vector<int> cycle{int(e)};
    int a = in.edges[e].first, b = in.edges[e].second;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        cycle.push_back(parent_edge[a]);
        a = parent[a];
      } else {
        cycle.push_back(parent_edge[b]);
        b = parent[b];
      }
    }
    Gf2Column image;
    for (int ie : cycle) {
      const auto [x, y] = in.edges[ie];
      const int oe = out.edge_index(to_outer[x], to_outer[y]);
      if (oe < 0) {
        fail(ErrorKind::InvalidArgument, "inner edge " + inner.labels[x] + " -- " + inner.labels[y] +
                                             " is longer than the outer scale");
      }
      image.push_back(oe);
    }
    std::sort(image.begin(), image.end());
    ++result.cycles_checked;
    if (!boundaries.reduce(image).empty()) {
      result.holds = false;
      for (int ie : cycle) result.witness.emplace_back(inner.labels[in.edges[ie].first], inner.labels[in.edges[ie].second]);
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Ends

std::size_t ComponentReport::deep_count() const {
  return std::size_t(std::count_if(components.begin(), components.end(), [](const Component& c) { return c.deep; }));
}

ComponentReport ends_at_scale(const Snapshot& snapshot, int r) {
  if (r < 0) fail(ErrorKind::InvalidArgument, "inner radius must be nonnegative");
  const auto adj = snapshot.adjacency();
  std::vector<bool> keep(snapshot.size());
  for (std::size_t v = 0; v < snapshot.size(); ++v) keep[v] = snapshot.dist[v] >= r;
  ComponentReport report;
  report.inner_radius = r;
  for (const auto& members : induced_components(adj, keep)) {
    Component c;
    c.size = members.size();
    c.representative = snapshot.labels[*std::min_element(members.begin(), members.end())];
    bool reaches_sphere = false, escapes = false;
    for (int v : members) {
      reaches_sphere = reaches_sphere || snapshot.dist[v] == snapshot.radius;
      escapes = escapes || snapshot.dist[v] > r;
    }
    c.deep = reaches_sphere && escapes;
    report.components.push_back(std::move(c));
  }
  return report;
}

std::vector<ComponentReport> ends_table(const Snapshot& snapshot, int r_max) {
  std::vector<ComponentReport> out;
  for (int r = 0; r <= r_max; ++r) out.push_back(ends_at_scale(snapshot, r));
  return out;
}

std::string hopf_class(const std::vector<ComponentReport>& table) {
  std::size_t last = 0;
  for (const auto& rep : table) {
    if (rep.deep_count() >= 3) return "infinity";
    last = rep.deep_count();
  }
  return std::to_string(last);
}

CccReport ccc_correspondence(const FibredPresentation& group, int total_radius, int neighborhood, int quotient_radius,
                             const Budget& budget) {
  if (neighborhood < 0) fail(ErrorKind::InvalidArgument, "neighbourhood radius must be nonnegative");
  const GroupBall gb = ball(group, total_radius, budget);
  const auto adj = gb.snapshot.adjacency();
  const int n = int(gb.elements.size());

  std::vector<int> to_fibre(n, -1);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    if (gb.elements[v].in_fibre()) {
      to_fibre[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (to_fibre[v] < 0) {
        to_fibre[v] = to_fibre[u] + 1;
        queue.push_back(v);
      }
    }
  }
  std::vector<bool> keep(n);
  for (int v = 0; v < n; ++v) keep[v] = to_fibre[v] >= neighborhood;

  CccReport report;
  for (const auto& members : induced_components(adj, keep)) {
    // Truncation leaves small fragments of cosets near H cut off by the
    // outer sphere; a deep component must also get halfway out from the
    // fibre to the sphere.
    const bool reaches_sphere = std::any_of(members.begin(), members.end(),
                                            [&](int v) { return gb.snapshot.dist[v] == total_radius; });
    const bool escapes = std::any_of(members.begin(), members.end(), [&](int v) {
      return to_fibre[v] > neighborhood && 2 * to_fibre[v] >= total_radius + neighborhood;
    });
    const bool deep = reaches_sphere && escapes;
    if (deep) ++report.total_deep;
  }
  const QuotientBall qb = quotient_ball(group, quotient_radius, budget);
  report.quotient_deep = ends_at_scale(qb.snapshot, neighborhood).deep_count();
  report.match = report.total_deep == report.quotient_deep;
  return report;
}

SimplicialImage quotient_simplicial_image(const FibredPresentation& group, const GroupBall& ball,
                                          const std::vector<std::vector<int>>& simplices, int cap,
                                          const Budget& budget) {
  SimplicialImage out;
  for (const auto& simplex : simplices) {
    std::vector<CosetKey> image;
    for (int v : simplex) {
      if (v < 0 || v >= int(ball.elements.size())) fail(ErrorKind::InvalidArgument, "simplex vertex outside ball");
      image.push_back(group.coset_key(ball.elements[v]));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (std::size_t i = 0; i < image.size(); ++i) {
      for (std::size_t j = i + 1; j < image.size(); ++j) {
        const auto d = quotient_distance(group, image[i], image[j], cap, budget);
        if (!d) fail(ErrorKind::InvalidArgument, "image vertices farther apart than the cap");
        out.scale = std::max(out.scale, *d);
      }
    }
    out.simplices.push_back(std::move(image));
  }
  return out;
}

}  // namespace cscope
