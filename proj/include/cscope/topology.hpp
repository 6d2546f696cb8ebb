#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cscope/cayley.hpp"
#include "cscope/coset_space.hpp"
#include "cscope/gf2.hpp"
#include "cscope/parallel.hpp"
#include "cscope/snapshot.hpp"

namespace cscope {

/// 2-skeleton of the Rips complex P_r of a snapshot's path metric.
///
/// Distances come from BFS inside the snapshot, so pairs only joined by
/// paths leaving it count as farther than r.
struct RipsComplex2 {
  int scale = 0;
  std::size_t vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<int, 3>> triangles;

  int edge_index(int a, int b) const;
  std::vector<Gf2Column> boundary1() const;
  std::vector<Gf2Column> boundary2() const;
  /// Sparse triplet text: header "rows cols nnz", then one "row col" per line.
  static std::string triplets(const std::vector<Gf2Column>& columns, std::size_t rows);
};

RipsComplex2 rips(const Snapshot& snapshot, int scale, std::size_t triangle_limit = 50'000'000);

/// True if every triangle boundary is a GF(2) cycle.
bool boundaries_compose_to_zero(const RipsComplex2& complex);

struct Betti {
  std::size_t b0 = 0;
  std::size_t b1 = 0;
};

Betti betti_z2(const RipsComplex2& complex);

struct AcyclicityResult {
  bool holds = true;
  std::size_t cycles_checked = 0;
  /// Edges of a cycle of the inner complex that bounds nothing in the outer
  /// one, as vertex labels.
  std::vector<std::pair<std::string, std::string>> witness;
};

/// Whether every 1-cycle of P_r(inner) bounds in P_r'(outer). Inner vertices
/// are matched to outer vertices by label.
AcyclicityResult relative_acyclicity(const Snapshot& inner, int inner_scale, const Snapshot& outer, int outer_scale,
                                     std::size_t triangle_limit = 50'000'000);

struct Component {
  std::size_t size = 0;
  bool deep = false;
  std::string representative;
};

/// Components of the snapshot with the open ball of radius r removed, i.e.
/// of the vertices at distance >= r. A component is deep when it reaches the
/// outer sphere and is not contained in the closed r-ball.
struct ComponentReport {
  int inner_radius = 0;
  std::vector<Component> components;
  std::size_t deep_count() const;
};

ComponentReport ends_at_scale(const Snapshot& snapshot, int r);
std::vector<ComponentReport> ends_table(const Snapshot& snapshot, int r_max);

/// Hopf class suggested by deep-component counts: "0", "1", "2" or
/// "infinity" once any count reaches three.
std::string hopf_class(const std::vector<ComponentReport>& table);

struct CccReport {
  std::size_t total_deep = 0;
  std::size_t quotient_deep = 0;
  bool match = false;
};

/// Deep components of ball(R_total) minus the open A-neighbourhood of the
/// fibre, against deep components of quotient_ball(R_quotient) minus the
/// open A-ball about H. On the group side a component is deep when it
/// reaches the outer sphere and some vertex lies at distance at least
/// (R_total + A) / 2 from the fibre, which discards coset fragments cut off
/// by the truncation.
CccReport ccc_correspondence(const FibredPresentation& group, int total_radius, int neighborhood, int quotient_radius,
                             const Budget& budget = {});

struct SimplicialImage {
  /// Image simplices, each a sorted list of distinct cosets.
  std::vector<std::vector<CosetKey>> simplices;
  /// Largest quotient distance between vertices of one image simplex.
  int scale = 0;
};

/// [g_0, ..., g_n] -> [g_0 H, ..., g_n H] for simplices given as vertex
/// indices of a group ball.
SimplicialImage quotient_simplicial_image(const FibredPresentation& group, const GroupBall& ball,
                                          const std::vector<std::vector<int>>& simplices, int cap = 64,
                                          const Budget& budget = {});

}  // namespace cscope
