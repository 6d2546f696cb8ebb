#include "cscope/invariants.hpp"

#include <cmath>
#include <iterator>
#include <set>

#include "cscope/error.hpp"

namespace cscope {

namespace {

std::uint64_t checked_mul_u(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::Overflow, "coset count exceeds 64 bits");
  return out;
}

std::uint64_t checked_add_u(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::Overflow, "coset count exceeds 64 bits");
  return out;
}

/// Accumulates one sphere from (matrix, multiplicity) pairs.
class SphereAccumulator {
 public:
  SphereAccumulator(int radius, const ProfileOptions& opts) : opts_(opts) { sphere_.radius = radius; }

  void add(const RationalMatrix& a, std::uint64_t count) {
    const DistortionValue d = distortion_of_matrix(a);
    const Rational mag = distortion_magnitude(d.norm);
    // Equal magnitudes (n and 1/n) resolve to the larger norm.
    if (first_ || mag > max_mag_ || (mag == max_mag_ && d.norm > sphere_.max_norm)) {
      max_mag_ = mag;
      sphere_.max_norm = d.norm;
      sphere_.max_F = d.F;
    }
    if (first_ || mag < min_mag_ || (mag == min_mag_ && d.norm > sphere_.min_norm)) {
      min_mag_ = mag;
      sphere_.min_norm = d.norm;
      sphere_.min_F = d.F;
    }
    first_ = false;
    sphere_.cosets = checked_add_u(sphere_.cosets, count);
    if (d.F <= opts_.threshold) sphere_.at_most_threshold = checked_add_u(sphere_.at_most_threshold, count);
    if (sphere_.radius > 0 && a.is_identity()) {
      sphere_.identity_matrices = checked_add_u(sphere_.identity_matrices, count);
    }
    const int bucket = int(std::floor(d.F / opts_.bucket_width));
    sphere_.histogram[bucket] = checked_add_u(sphere_.histogram[bucket], count);
    // Keep the smallest magnitudes so truncation does not depend on visiting order.
    spectrum_.insert(mag);
    if (spectrum_.size() > SphereDistortion::kSpectrumLimit) {
      spectrum_.erase(std::prev(spectrum_.end()));
      sphere_.spectrum_truncated = true;
    }
  }

  SphereDistortion take() {
    sphere_.spectrum.assign(spectrum_.begin(), spectrum_.end());
    return std::move(sphere_);
  }

 private:
  const ProfileOptions& opts_;
  SphereDistortion sphere_;
  Rational max_mag_, min_mag_;
  std::set<Rational> spectrum_;
  bool first_ = true;
};

struct PatternState {
  int letter = -1;
  int sign = 0;
  RationalMatrix matrix;

  bool operator<(const PatternState& rhs) const {
    if (letter != rhs.letter) return letter < rhs.letter;
    if (sign != rhs.sign) return sign < rhs.sign;
    return matrix < rhs.matrix;
  }
};

}  // namespace

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::ZeroAtScale: return "ZeroAtScale";
    case VerdictKind::BoundedAtScale: return "BoundedAtScale";
    case VerdictKind::GrowingAtScale: return "GrowingAtScale";
  }
  return "ZeroAtScale";
}

HeightValue height(const FibredPresentation& group, const GroupElement& g) {
  if (group.rank() != 1) fail(ErrorKind::RankNotOne, "height is defined for rank-one fibres only");
  HeightValue h;
  h.ratio = abs(group.matrix_A(g)(0, 0));
  h.log_value = log_rational(h.ratio);
  return h;
}

Rational distortion_magnitude(const Rational& norm) { return norm >= 1 ? norm : Rational(1) / norm; }

DistortionValue distortion_of_matrix(const RationalMatrix& a) {
  DistortionValue d;
  d.norm = a.norm1();
  d.F = std::fabs(log_rational(d.norm));
  d.inverse_norm = a.inverse().norm1();
  d.symmetric_F = log_rational(d.norm > d.inverse_norm ? d.norm : d.inverse_norm);
  return d;
}

DistortionValue fibre_distortion(const FibredPresentation& group, const CosetKey& key) {
  return distortion_of_matrix(group.matrix_A(key));
}

DistortionVerdict classify_profile(const std::vector<SphereDistortion>& spheres) {
  DistortionVerdict v;
  if (spheres.empty()) return v;
  v.radius = spheres.back().radius;
  double bound = 0.0;
  bool all_zero = true;
  for (const auto& s : spheres) {
    bound = std::max(bound, s.max_F);
    if (distortion_magnitude(s.max_norm) != 1) all_zero = false;
  }
  v.bound = bound;
  if (all_zero) {
    v.kind = VerdictKind::ZeroAtScale;
    return v;
  }
  const int outer = int(spheres.size()) - 1;
  const int half = outer / 2;
  if (outer >= 2) {
    v.slope = (spheres[outer].max_F - spheres[half].max_F) / double(outer - half);
    const double average = spheres[outer].max_F / double(outer);
    if (v.slope > 1e-9 && v.slope >= 0.5 * average) {
      v.kind = VerdictKind::GrowingAtScale;
      return v;
    }
  }
  v.kind = VerdictKind::BoundedAtScale;
  return v;
}

DistortionProfile distortion_profile(const FibredPresentation& group, int radius, const ProfileOptions& opts,
                                     const Budget& budget) {
  if (radius < 0) fail(ErrorKind::InvalidArgument, "radius must be nonnegative");
  const auto& letters = group.letters();
  DistortionProfile out;
  out.threshold = opts.threshold;
  out.bucket_width = opts.bucket_width;

  std::map<PatternState, std::uint64_t> states;
  states.emplace(PatternState{-1, 0, RationalMatrix::identity(group.rank())}, 1);
  for (int r = 0; r <= radius; ++r) {
    SphereAccumulator acc(r, opts);
    for (const auto& [state, count] : states) acc.add(state.matrix, count);
    out.spheres.push_back(acc.take());
    if (r == radius) break;

    std::map<PatternState, std::uint64_t> next;
    for (const auto& [state, count] : states) {
      for (int i = 0; i < int(letters.size()); ++i) {
        for (int sign : {1, -1}) {
          Int choices = sign > 0 ? letters[i].image.index() : letters[i].source.index();
          // A zero residue after the opposite letter would pinch.
          if (state.letter == i && state.sign == -sign) --choices;
          if (choices <= 0) continue;
          PatternState succ{i, sign, (sign > 0 ? letters[i].inverse : letters[i].matrix) * state.matrix};
          auto& slot = next[succ];
          slot = checked_add_u(slot, checked_mul_u(count, std::uint64_t(choices)));
        }
      }
    }
    if (next.size() > budget.vertices) {
      fail(ErrorKind::BudgetExceeded, "distortion pattern count exceeds the vertex budget");
    }
    if (next.empty()) break;
    states = std::move(next);
  }
  out.verdict = classify_profile(out.spheres);
  return out;
}

DistortionProfile profile_from_ball(const FibredPresentation& group, const QuotientBall& ball,
                                    const ProfileOptions& opts) {
  DistortionProfile out;
  out.threshold = opts.threshold;
  out.bucket_width = opts.bucket_width;
  const int radius = ball.snapshot.radius;
  std::vector<SphereAccumulator> acc;
  for (int r = 0; r <= radius; ++r) acc.emplace_back(r, opts);
  for (std::size_t i = 0; i < ball.keys.size(); ++i) {
    acc[ball.snapshot.dist[i]].add(group.matrix_A(ball.keys[i]), 1);
  }
  for (auto& a : acc) {
    SphereDistortion s = a.take();
    if (s.cosets == 0) break;
    out.spheres.push_back(std::move(s));
  }
  out.verdict = classify_profile(out.spheres);
  return out;
}

StabilityReport qi_stability_check(const FibredPresentation& group, const GroupElement& k, int radius,
                                   const Budget& budget) {
  group.check_same_group(k);
  const RationalMatrix ak = group.matrix_A(k);
  const double a = log_rational(ak.norm1());
  const double b = log_rational(ak.inverse().norm1());
  StabilityReport out;
  out.bound = std::max(std::fabs(a), std::fabs(b)) + std::fabs(a + b);

  const QuotientBall qb = quotient_ball(group, radius, budget);
  std::vector<double> diffs(qb.keys.size(), 0.0);
  parallel_chunks(qb.keys.size(), budget.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const CosetKey moved = group.coset_key(group.multiply(k, group.representative(qb.keys[i])));
      diffs[i] = std::fabs(fibre_distortion(group, moved).F - fibre_distortion(group, qb.keys[i]).F);
    }
  });
  for (double d : diffs) out.observed = std::max(out.observed, d);
  out.cosets = qb.keys.size();
  out.holds = out.observed <= out.bound + 1e-9;
  return out;
}

}  // namespace cscope
