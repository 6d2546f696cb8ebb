#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cscope/integer.hpp"
#include "cscope/rational.hpp"

namespace cscope {

/// Raw presentation data as read from JSON or expanded from a preset name.
struct PresentationDocument {
  struct LetterSpec {
    std::string name;
    IntMat num;
    Int den = 1;
  };
  int rank = 0;
  std::vector<LetterSpec> letters;

  /// Throws ConfigError on malformed documents.
  static PresentationDocument from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

/// Expands "bs(m,n)", "f<m>xZ^<n>", "z^<n>", "leary-minasyan" and
/// "zn-semidirect(a,b;c,d)". Throws ConfigError on unknown names.
PresentationDocument preset_document(std::string_view name);
bool is_preset_name(std::string_view name);

/// One stable letter t with t v t^-1 = M v for v in the source lattice.
struct Letter {
  std::string name;
  RationalMatrix matrix;
  RationalMatrix inverse;
  IntMat num;
  Int den = 1;
  IntMat inv_num;
  Int inv_den = 1;
  /// B = {v : M v integral}.
  LatticeBasis source;
  /// C = M(B).
  LatticeBasis image;
  /// Canonical transversals of Z^n/B and Z^n/C; empty when the index
  /// exceeds kMaxTransversal.
  std::vector<IntVec> source_transversal;
  std::vector<IntVec> image_transversal;

  static constexpr Int kMaxTransversal = 1'000'000;
};

/// A word-metric generator: +-e_i or a stable letter to the power +-1.
struct Generator {
  bool is_letter = false;
  int index = 0;
  int sign = 1;
};

/// A syllable r * t_letter^sign; the residue stands to the left of the letter.
struct Syllable {
  int letter = 0;
  int sign = 1;
  IntVec residue;

  auto operator<=>(const Syllable&) const = default;
};

/// Right-pushed, pinch-free normal form: s_1 ... s_m * tail.
class GroupElement {
 public:
  GroupElement() = default;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  const IntVec& tail() const { return tail_; }
  std::uint64_t group_id() const { return group_id_; }
  bool in_fibre() const { return syllables_.empty(); }

  bool operator==(const GroupElement& rhs) const {
    return tail_ == rhs.tail_ && syllables_ == rhs.syllables_;
  }
  std::strong_ordering operator<=>(const GroupElement& rhs) const {
    if (auto c = syllables_ <=> rhs.syllables_; c != 0) return c;
    return tail_ <=> rhs.tail_;
  }

 private:
  friend class FibredPresentation;
  std::uint64_t group_id_ = 0;
  std::vector<Syllable> syllables_;
  IntVec tail_;
};

/// Tail-stripped normal form; names the left coset g Z^n.
class CosetKey {
 public:
  CosetKey() = default;
  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::uint64_t group_id() const { return group_id_; }
  std::size_t depth() const { return syllables_.size(); }

  bool operator==(const CosetKey& rhs) const { return syllables_ == rhs.syllables_; }
  std::strong_ordering operator<=>(const CosetKey& rhs) const { return syllables_ <=> rhs.syllables_; }

 private:
  friend class FibredPresentation;
  std::uint64_t group_id_ = 0;
  std::vector<Syllable> syllables_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};
struct CosetKeyHash {
  std::size_t operator()(const CosetKey& k) const noexcept;
};

/// Item of an unreduced word: a fibre vector or a letter to the power +-1.
struct LetterPower {
  int letter = 0;
  int sign = 1;
};
using RawItem = std::variant<IntVec, LetterPower>;

struct ParseOptions {
  Int exponent_limit = 1'000'000;
};

struct CommensurationIndices {
  /// [Z^n : L_g] with L_g = {v : g v g^-1 in Z^n}.
  Int source = 1;
  /// [Z^n : g L_g g^-1].
  Int image = 1;
};

/// A multiple HNN extension of Z^n by invertible rational matrices.
///
/// Instances are immutable after validate(); all operations are pure and
/// safe to call concurrently.
class FibredPresentation {
 public:
  /// Throws SingularMatrix, DimensionMismatch, DuplicateName, InvalidName.
  static FibredPresentation validate(const PresentationDocument& doc);
  static FibredPresentation from_json(const nlohmann::json& doc);
  static FibredPresentation preset(std::string_view name);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  const PresentationDocument& document() const { return document_; }
  std::uint64_t id() const { return id_; }
  /// 16 hex digits of a hash of the canonical document.
  std::string hash_hex() const;

  /// Fixed generating set: x1, x1^-1, ..., xn^-1, then t, t^-1 per letter.
  const std::vector<Generator>& generators() const { return generators_; }
  std::string generator_label(const Generator& s) const;
  /// Sum over letters of [Z^n:B_i] + [Z^n:C_i].
  Int quotient_degree_bound() const;

  GroupElement identity() const;
  GroupElement from_vector(std::span<const Int> v) const;
  GroupElement letter(int index, int sign = 1) const;

  void right_multiply(GroupElement& g, const Generator& s) const;
  void right_multiply_letter(GroupElement& g, int letter, int sign) const;
  void right_multiply_vector(GroupElement& g, std::span<const Int> v) const;

  GroupElement normalize(const std::vector<RawItem>& word) const;
  GroupElement parse_word(std::string_view text, const ParseOptions& opts = {}) const;
  /// Throws PresentationMismatch if either operand belongs to another group.
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;

  /// The word spelled by the normal form, e.g. "x1 t x1^2"; "e" for the identity.
  std::string format(const GroupElement& g) const;

  CosetKey coset_key(const GroupElement& g) const;
  /// Tail-zero representative of the coset.
  GroupElement representative(const CosetKey& key) const;
  /// Printable key, e.g. "x1 t H"; "H" for the fibre itself.
  std::string format(const CosetKey& key) const;

  /// A_g, with v_j^{q_j} = g (prod v_i^{p_ij}) g^-1 and (i,j) entry p_ij/q_j.
  /// Satisfies A_{gk} = A_k A_g.
  RationalMatrix matrix_A(const GroupElement& g) const;
  RationalMatrix matrix_A(const CosetKey& key) const;

  CommensurationIndices commensuration_indices(const GroupElement& g) const;

  void check_same_group(const GroupElement& g) const;
  void check_same_group(const CosetKey& k) const;

 private:
  RationalMatrix matrix_A(const std::vector<Syllable>& syllables) const;

  int rank_ = 0;
  std::vector<Letter> letters_;
  std::vector<Generator> generators_;
  PresentationDocument document_;
  std::uint64_t id_ = 0;
};

}  // namespace cscope
