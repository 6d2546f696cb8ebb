#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cscope/parallel.hpp"
#include "cscope/presentation.hpp"
#include "cscope/snapshot.hpp"

namespace cscope {

/// Ball in the rough Cayley graph on G/Z^n.
struct QuotientBall {
  Snapshot snapshot;
  std::vector<CosetKey> keys;
  std::unordered_map<CosetKey, int, CosetKeyHash> index;

  int find(const CosetKey& key) const;
};

struct QuotientNeighbor {
  CosetKey key;
  std::string label;
};

/// Cosets u r t_i^{+-1} Z^n over the transversals of Z^n/C_i and Z^n/B_i,
/// duplicates merged, in generating-set order.
std::vector<QuotientNeighbor> quotient_neighbors(const FibredPresentation& group, const CosetKey& key);

QuotientBall quotient_ball(const FibredPresentation& group, int radius, const Budget& budget = {});

/// Path distance in the rough Cayley graph, nullopt past cap.
std::optional<int> quotient_distance(const FibredPresentation& group, const CosetKey& a, const CosetKey& b, int cap,
                                     const Budget& budget = {});

/// d(x, gH): length of the shortest word w with x w in the coset, nullopt past cap.
std::optional<int> distance_to_coset(const FibredPresentation& group, const GroupElement& x, const CosetKey& key,
                                     int cap, const Budget& budget = {});

/// Lower bounds on the Hausdorff distance between Z^n and a coset gZ^n,
/// sampled over fibre elements h with |h| <= s for s = 0..sample_radius.
/// nullopt marks Unknown: some sample found no coset member within cap.
struct HausdorffBound {
  /// sup over sampled h of d(h, gH).
  std::optional<int> fibre_to_coset;
  /// sup over sampled h of d(g h, H).
  std::optional<int> coset_to_fibre;
  std::optional<int> combined;
  /// Smallest sample radius after which `combined` stopped changing.
  int stabilized_at = 0;
  std::vector<std::optional<int>> by_radius;
  std::size_t samples = 0;
};

HausdorffBound coset_hausdorff_lb(const FibredPresentation& group, const CosetKey& key, int sample_radius,
                                  int search_cap, const Budget& budget = {});

/// g * floor(A_g v) for the tail-zero representative g of the coset.
GroupElement projection_approx(const FibredPresentation& group, const CosetKey& key, std::span<const Int> v);

struct ProjectionQuality {
  /// max over |v|_1 <= range of d(v, projection) - d(v, gH); nullopt = Unknown.
  std::optional<int> gap;
  IntVec worst;
  std::size_t samples = 0;
};

ProjectionQuality projection_quality(const FibredPresentation& group, const CosetKey& key, Int range, int cap,
                                     const Budget& budget = {});

}  // namespace cscope
