#pragma once

#include <map>
#include <string>
#include <vector>

#include "cscope/coset_space.hpp"
#include "cscope/parallel.hpp"
#include "cscope/presentation.hpp"
#include "cscope/rational.hpp"

namespace cscope {

/// Height of an element in a rank-one fibre: log |p/q| with t^q = g t^p g^-1.
struct HeightValue {
  Rational ratio;
  double log_value = 0.0;
};

/// Fibre distortion of a coset: F = |log ||A_g||_1|.
///
/// symmetric_F = log max(||A_g||_1, ||A_g^-1||_1) is reported alongside; the
/// two agree whenever ||A_g^-1||_1 = 1/||A_g||_1 (rank one, signed
/// permutations) and may differ otherwise.
struct DistortionValue {
  Rational norm;
  double F = 0.0;
  Rational inverse_norm;
  double symmetric_F = 0.0;
};

/// Throws RankNotOne unless the fibre is Z.
HeightValue height(const FibredPresentation& group, const GroupElement& g);

DistortionValue fibre_distortion(const FibredPresentation& group, const CosetKey& key);
DistortionValue distortion_of_matrix(const RationalMatrix& a);

/// max(r, 1/r): F = log of this, so comparing it compares F exactly.
Rational distortion_magnitude(const Rational& norm);

enum class VerdictKind { ZeroAtScale, BoundedAtScale, GrowingAtScale };
std::string to_string(VerdictKind kind);

struct DistortionVerdict {
  VerdictKind kind = VerdictKind::ZeroAtScale;
  /// Largest F seen at scale (BoundedAtScale).
  double bound = 0.0;
  /// Growth of the per-sphere maximum over the outer half of the radii.
  double slope = 0.0;
  int radius = 0;
};

struct SphereDistortion {
  int radius = 0;
  /// Number of cosets at this quotient distance.
  std::uint64_t cosets = 0;
  /// Norm realizing the maximum and minimum F.
  Rational max_norm;
  double max_F = 0.0;
  Rational min_norm;
  double min_F = 0.0;
  std::uint64_t at_most_threshold = 0;
  /// Cosets other than H whose A_g is the identity.
  std::uint64_t identity_matrices = 0;
  /// Bucket index floor(F / bucket_width) -> coset count.
  std::map<int, std::uint64_t> histogram;
  /// Distinct values of max(||A_g||_1, 1/||A_g||_1), at most kSpectrumLimit.
  std::vector<Rational> spectrum;
  bool spectrum_truncated = false;

  static constexpr std::size_t kSpectrumLimit = 64;
};

struct DistortionProfile {
  std::vector<SphereDistortion> spheres;
  DistortionVerdict verdict;
  double threshold = 1.0;
  double bucket_width = 0.25;
};

struct ProfileOptions {
  double threshold = 1.0;
  double bucket_width = 0.25;
};

/// Per-sphere distortion statistics of the quotient ball of radius R.
///
/// A coset at quotient distance r is a pinch-free sequence of r syllables,
/// and A_g depends only on the letters and signs. The profile therefore
/// walks letter/sign patterns weighted by residue counts instead of listing
/// every coset; profile_from_ball() computes the same table from an
/// explicit quotient ball.
DistortionProfile distortion_profile(const FibredPresentation& group, int radius, const ProfileOptions& opts = {},
                                     const Budget& budget = {});
DistortionProfile profile_from_ball(const FibredPresentation& group, const QuotientBall& ball,
                                    const ProfileOptions& opts = {});

/// Verdict rule on per-sphere maxima: all zero -> ZeroAtScale; the outer
/// half of the radii rising at least half the average rate -> GrowingAtScale;
/// otherwise BoundedAtScale.
DistortionVerdict classify_profile(const std::vector<SphereDistortion>& spheres);

struct StabilityReport {
  /// max over the quotient ball of |F(k gH) - F(gH)|.
  double observed = 0.0;
  /// max(|log||A_k||_1|, |log||A_k^-1||_1|) + |log||A_k||_1 + log||A_k^-1||_1|.
  double bound = 0.0;
  bool holds = true;
  std::size_t cosets = 0;
};

StabilityReport qi_stability_check(const FibredPresentation& group, const GroupElement& k, int radius,
                                   const Budget& budget = {});

}  // namespace cscope
