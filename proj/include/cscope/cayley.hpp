#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "cscope/parallel.hpp"
#include "cscope/presentation.hpp"
#include "cscope/snapshot.hpp"

namespace cscope {

/// Ball in the Cayley graph with respect to the fixed generating set.
struct GroupBall {
  Snapshot snapshot;
  std::vector<GroupElement> elements;
  std::unordered_map<GroupElement, int, GroupElementHash> index;

  /// -1 if g is not in the ball.
  int find(const GroupElement& g) const;
};

GroupBall ball(const FibredPresentation& group, int radius, const Budget& budget = {});

/// Sphere sizes 0..radius.
std::vector<std::size_t> growth(const FibredPresentation& group, int radius, const Budget& budget = {});

/// Exact word distance d(g, h) = |g^-1 h|, or nullopt when it exceeds cap.
std::optional<int> distance(const FibredPresentation& group, const GroupElement& g, const GroupElement& h, int cap,
                            const Budget& budget = {});

/// A discrete geodesic g = x_0, ..., x_d = h, or nullopt past cap.
std::optional<std::vector<GroupElement>> geodesic(const FibredPresentation& group, const GroupElement& g,
                                                  const GroupElement& h, int cap, const Budget& budget = {});

/// Points x_0 = g, ..., x_m = h with d(x_{j-1}, x_j) <= step and m <= d(g, h),
/// taken every step-th point along a geodesic. nullopt past cap.
std::optional<std::vector<GroupElement>> t_chain(const FibredPresentation& group, const GroupElement& g,
                                                 const GroupElement& h, int step, int cap, const Budget& budget = {});

}  // namespace cscope
