#include "cscope/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "cscope/error.hpp"

namespace cscope {

using nlohmann::json;

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidName: return "InvalidName";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::MalformedVector: return "MalformedVector";
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::PresentationMismatch: return "PresentationMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Documents and presets

PresentationDocument PresentationDocument::from_json(const json& doc) {
  PresentationDocument out;
  try {
    if (!doc.is_object()) fail(ErrorKind::ConfigError, "presentation must be a JSON object");
    out.rank = doc.at("rank").get<int>();
    if (out.rank < 1) fail(ErrorKind::ConfigError, "rank must be at least 1");
    for (const auto& l : doc.value("letters", json::array())) {
      LetterSpec spec;
      spec.name = l.at("name").get<std::string>();
      spec.den = l.value("den", Int{1});
      if (spec.den <= 0) fail(ErrorKind::ConfigError, "letter " + spec.name + ": den must be positive");
      const auto rows = l.at("num").get<std::vector<IntVec>>();
      if (int(rows.size()) != out.rank) {
        fail(ErrorKind::DimensionMismatch, "letter " + spec.name + ": matrix must have rank rows");
      }
      for (const auto& r : rows) {
        if (int(r.size()) != out.rank) {
          fail(ErrorKind::DimensionMismatch, "letter " + spec.name + ": matrix must be square of size rank");
        }
      }
      spec.num = IntMat::from_rows(rows);
      out.letters.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("malformed presentation: ") + e.what());
  }
  return out;
}

json PresentationDocument::to_json() const {
  json letters_json = json::array();
  for (const auto& l : letters) {
    std::vector<IntVec> rows;
    for (int r = 0; r < l.num.rows(); ++r) rows.push_back(l.num.row(r));
    letters_json.push_back({{"name", l.name}, {"num", rows}, {"den", l.den}});
  }
  return {{"rank", rank}, {"letters", letters_json}};
}

namespace {

std::vector<std::string> free_letter_names(int m) {
  static const char* kNames[] = {"t", "s", "u", "w", "y", "z"};
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) {
    out.push_back(m <= 6 ? std::string(kNames[i]) : "t" + std::to_string(i + 1));
  }
  return out;
}

Int parse_int(const std::string& s) {
  Int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(ErrorKind::ConfigError, "bad integer '" + s + "'");
  return v;
}

}  // namespace

bool is_preset_name(std::string_view name) {
  static const std::regex kPattern(
      R"(bs\(-?\d+,-?\d+\)|f\d+xZ(\^\d+)?|z(\^\d+)?|leary-minasyan|zn-semidirect\(.*\))");
  return std::regex_match(std::string(name), kPattern);
}

PresentationDocument preset_document(std::string_view raw) {
  const std::string name(raw);
  std::smatch m;
  PresentationDocument doc;
  if (std::regex_match(name, m, std::regex(R"(bs\((-?\d+),(-?\d+)\))"))) {
    Int p = parse_int(m[1]), q = parse_int(m[2]);
    if (p == 0 || q == 0) fail(ErrorKind::ConfigError, "bs(m,n) needs nonzero m and n");
    // t a^p t^-1 = a^q, so M = q/p.
    if (p < 0) {
      p = -p;
      q = -q;
    }
    doc.rank = 1;
    IntMat num(1, 1);
    num(0, 0) = q;
    doc.letters.push_back({"t", num, p});
    return doc;
  }
  if (std::regex_match(name, m, std::regex(R"(f(\d+)xZ(?:\^(\d+))?)"))) {
    const int letters = int(parse_int(m[1]));
    doc.rank = m[2].matched ? int(parse_int(m[2])) : 1;
    if (doc.rank < 1) fail(ErrorKind::ConfigError, "fibre rank must be at least 1");
    for (const auto& n : free_letter_names(letters)) doc.letters.push_back({n, IntMat::identity(doc.rank), 1});
    return doc;
  }
  if (std::regex_match(name, m, std::regex(R"(z(?:\^(\d+))?)"))) {
    doc.rank = m[1].matched ? int(parse_int(m[1])) : 1;
    if (doc.rank < 1) fail(ErrorKind::ConfigError, "fibre rank must be at least 1");
    return doc;
  }
  if (name == "leary-minasyan") {
    // a^13 = t a^5 b^12 t^-1, b^13 = t a^-12 b^5 t^-1.
    doc.rank = 2;
    doc.letters.push_back({"t", IntMat::from_rows({{5, 12}, {-12, 5}}), 13});
    return doc;
  }
  if (std::regex_match(name, m, std::regex(R"(zn-semidirect\(([-\d,; ]+)\))"))) {
    std::vector<IntVec> rows;
    std::stringstream rs(m[1].str());
    std::string row_text;
    while (std::getline(rs, row_text, ';')) {
      IntVec row;
      std::stringstream cs(row_text);
      std::string cell;
      while (std::getline(cs, cell, ',')) {
        cell.erase(std::remove(cell.begin(), cell.end(), ' '), cell.end());
        row.push_back(parse_int(cell));
      }
      rows.push_back(std::move(row));
    }
    doc.rank = int(rows.size());
    for (const auto& r : rows) {
      if (int(r.size()) != doc.rank) fail(ErrorKind::DimensionMismatch, "zn-semidirect matrix must be square");
    }
    IntMat num = IntMat::from_rows(rows);
    const Rational det = RationalMatrix::from_integer(num, 1).determinant();
    if (abs(det) != 1) fail(ErrorKind::ConfigError, "zn-semidirect needs a unimodular matrix");
    doc.letters.push_back({"t", num, 1});
    return doc;
  }
  fail(ErrorKind::ConfigError, "unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool reserved_name(const std::string& s) {
  static const std::regex kVector(R"(x\d+)");
  return s == "e" || s == "v" || std::regex_match(s, kVector);
}

bool identifier(const std::string& s) {
  static const std::regex kIdent(R"([A-Za-z_][A-Za-z0-9_]*)");
  return std::regex_match(s, kIdent);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

FibredPresentation FibredPresentation::validate(const PresentationDocument& doc) {
  if (doc.rank < 1) fail(ErrorKind::DimensionMismatch, "rank must be at least 1");
  FibredPresentation p;
  p.rank_ = doc.rank;
  p.document_ = doc;
  std::set<std::string> names;
  for (const auto& spec : doc.letters) {
    if (!identifier(spec.name) || reserved_name(spec.name)) {
      fail(ErrorKind::InvalidName, "letter name '" + spec.name + "' is invalid or reserved");
    }
    if (!names.insert(spec.name).second) fail(ErrorKind::DuplicateName, "duplicate letter '" + spec.name + "'");
    if (spec.num.rows() != doc.rank || spec.num.cols() != doc.rank) {
      fail(ErrorKind::DimensionMismatch, "letter " + spec.name + ": matrix must be square of size rank");
    }
    Letter l;
    l.name = spec.name;
    l.matrix = RationalMatrix::from_integer(spec.num, spec.den);
    l.inverse = l.matrix.inverse();
    std::tie(l.num, l.den) = l.matrix.integer_form();
    std::tie(l.inv_num, l.inv_den) = l.inverse.integer_form();
    l.source = congruence_lattice({{l.num, l.den}}, doc.rank);
    l.image = image_lattice(l.num, l.den, l.source);
    if (l.image != congruence_lattice({{l.inv_num, l.inv_den}}, doc.rank)) {
      fail(ErrorKind::InvalidArgument, "letter " + spec.name + ": image lattice inconsistent");
    }
    if (l.source.index() <= Letter::kMaxTransversal) l.source_transversal = l.source.transversal();
    if (l.image.index() <= Letter::kMaxTransversal) l.image_transversal = l.image.transversal();
    p.letters_.push_back(std::move(l));
  }
  for (int i = 0; i < p.rank_; ++i) {
    p.generators_.push_back({false, i, 1});
    p.generators_.push_back({false, i, -1});
  }
  for (int i = 0; i < int(p.letters_.size()); ++i) {
    p.generators_.push_back({true, i, 1});
    p.generators_.push_back({true, i, -1});
  }
  p.id_ = fnv1a(doc.to_json().dump());
  if (p.id_ == 0) p.id_ = 1;
  return p;
}

FibredPresentation FibredPresentation::from_json(const json& doc) {
  return validate(PresentationDocument::from_json(doc));
}

FibredPresentation FibredPresentation::preset(std::string_view name) {
  return validate(preset_document(name));
}

std::string FibredPresentation::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_));
  return buf;
}

std::string FibredPresentation::generator_label(const Generator& s) const {
  std::string base = s.is_letter ? letters_[s.index].name : "x" + std::to_string(s.index + 1);
  return s.sign > 0 ? base : base + "^-1";
}

Int FibredPresentation::quotient_degree_bound() const {
  Int d = 0;
  for (const auto& l : letters_) d = checked_add(d, checked_add(l.source.index(), l.image.index()));
  return d;
}

// ---------------------------------------------------------------------------
// Normal forms

GroupElement FibredPresentation::identity() const {
  GroupElement g;
  g.group_id_ = id_;
  g.tail_.assign(rank_, 0);
  return g;
}

GroupElement FibredPresentation::from_vector(std::span<const Int> v) const {
  if (int(v.size()) != rank_) fail(ErrorKind::MalformedVector, "vector length differs from rank");
  GroupElement g = identity();
  g.tail_.assign(v.begin(), v.end());
  return g;
}

GroupElement FibredPresentation::letter(int index, int sign) const {
  GroupElement g = identity();
  right_multiply_letter(g, index, sign);
  return g;
}

void FibredPresentation::right_multiply_vector(GroupElement& g, std::span<const Int> v) const {
  for (int i = 0; i < rank_; ++i) g.tail_[i] = checked_add(g.tail_[i], v[i]);
}

void FibredPresentation::right_multiply_letter(GroupElement& g, int index, int sign) const {
  const Letter& l = letters_[index];
  if (!g.syllables_.empty()) {
    Syllable& last = g.syllables_.back();
    if (last.letter == index && last.sign == -sign) {
      // Pinch: t w t^-1 = M w for w in B, t^-1 w t = M^-1 w for w in C.
      if (sign < 0 && l.source.contains(g.tail_)) {
        g.tail_ = add(last.residue, apply_exact(l.num, l.den, g.tail_));
        g.syllables_.pop_back();
        return;
      }
      if (sign > 0 && l.image.contains(g.tail_)) {
        g.tail_ = add(last.residue, apply_exact(l.inv_num, l.inv_den, g.tail_));
        g.syllables_.pop_back();
        return;
      }
    }
  }
  // Push right: c t = t M^-1 c for c in C, b t^-1 = t^-1 M b for b in B.
  Syllable s;
  s.letter = index;
  s.sign = sign;
  if (sign > 0) {
    s.residue = l.image.reduce(g.tail_);
    g.tail_ = apply_exact(l.inv_num, l.inv_den, sub(g.tail_, s.residue));
  } else {
    s.residue = l.source.reduce(g.tail_);
    g.tail_ = apply_exact(l.num, l.den, sub(g.tail_, s.residue));
  }
  g.syllables_.push_back(std::move(s));
}

void FibredPresentation::right_multiply(GroupElement& g, const Generator& s) const {
  if (s.is_letter) {
    right_multiply_letter(g, s.index, s.sign);
  } else {
    g.tail_[s.index] = checked_add(g.tail_[s.index], s.sign);
  }
}

GroupElement FibredPresentation::normalize(const std::vector<RawItem>& word) const {
  GroupElement g = identity();
  for (const auto& item : word) {
    if (const auto* v = std::get_if<IntVec>(&item)) {
      if (int(v->size()) != rank_) fail(ErrorKind::MalformedVector, "vector length differs from rank");
      right_multiply_vector(g, *v);
    } else {
      const auto& lp = std::get<LetterPower>(item);
      if (lp.letter < 0 || lp.letter >= int(letters_.size()) || (lp.sign != 1 && lp.sign != -1)) {
        fail(ErrorKind::InvalidArgument, "raw word references an unknown letter");
      }
      right_multiply_letter(g, lp.letter, lp.sign);
    }
  }
  return g;
}

void FibredPresentation::check_same_group(const GroupElement& g) const {
  if (g.group_id_ != id_) fail(ErrorKind::PresentationMismatch, "element belongs to another presentation");
}

void FibredPresentation::check_same_group(const CosetKey& k) const {
  if (k.group_id_ != id_) fail(ErrorKind::PresentationMismatch, "coset key belongs to another presentation");
}

GroupElement FibredPresentation::multiply(const GroupElement& a, const GroupElement& b) const {
  check_same_group(a);
  check_same_group(b);
  GroupElement g = a;
  for (const auto& s : b.syllables_) {
    right_multiply_vector(g, s.residue);
    right_multiply_letter(g, s.letter, s.sign);
  }
  right_multiply_vector(g, b.tail_);
  return g;
}

GroupElement FibredPresentation::invert(const GroupElement& a) const {
  check_same_group(a);
  GroupElement g = identity();
  right_multiply_vector(g, scaled(a.tail_, -1));
  for (auto it = a.syllables_.rbegin(); it != a.syllables_.rend(); ++it) {
    right_multiply_letter(g, it->letter, -it->sign);
    right_multiply_vector(g, scaled(it->residue, -1));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Words

namespace {

void append_vector_tokens(std::string& out, std::span<const Int> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(i + 1);
    if (v[i] != 1) out += '^' + std::to_string(v[i]);
  }
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool done() {
    skip();
    return pos_ >= text_.size();
  }

  std::string identifier() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(uchar(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(uchar(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    }
    if (start == pos_) {
      fail(ErrorKind::UnknownToken, "unexpected character '" + std::string(1, text_[pos_]) + "' at " +
                                        std::to_string(pos_));
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  IntVec vector_literal() {
    if (!peek('[')) fail(ErrorKind::MalformedVector, "expected '[' after v");
    ++pos_;
    const std::size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) fail(ErrorKind::MalformedVector, "unterminated vector literal");
    std::string_view body = text_.substr(pos_, close - pos_);
    pos_ = close + 1;
    IntVec out;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = body.find(',', start);
      std::string cell(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
      cell.erase(std::remove_if(cell.begin(), cell.end(), [](char c) { return std::isspace(uchar(c)); }),
                 cell.end());
      Int v = 0;
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || p != cell.data() + cell.size()) {
        fail(ErrorKind::MalformedVector, "bad vector entry '" + cell + "'");
      }
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  Int exponent(Int limit) {
    if (!peek('^')) return 1;
    ++pos_;
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(uchar(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    Int v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || p != digits.data() + digits.size()) {
      fail(ErrorKind::UnknownToken, "malformed exponent '" + digits + "'");
    }
    if (ec != std::errc() || v > limit || v < -limit) {
      fail(ErrorKind::ExponentOutOfRange, "exponent " + digits + " exceeds limit " + std::to_string(limit));
    }
    return v;
  }

 private:
  static unsigned char uchar(char c) { return static_cast<unsigned char>(c); }
  void skip() {
    while (pos_ < text_.size() && (std::isspace(uchar(text_[pos_])) || text_[pos_] == '*' || text_[pos_] == '.')) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupElement FibredPresentation::parse_word(std::string_view text, const ParseOptions& opts) const {
  static const std::regex kVector(R"(x(\d+))");
  GroupElement g = identity();
  Tokenizer tok(text);
  while (!tok.done()) {
    const std::string name = tok.identifier();
    if (name == "v") {
      const IntVec v = tok.vector_literal();
      if (int(v.size()) != rank_) fail(ErrorKind::MalformedVector, "vector literal length differs from rank");
      const Int k = tok.exponent(opts.exponent_limit);
      right_multiply_vector(g, scaled(v, k));
      continue;
    }
    const Int k = tok.exponent(opts.exponent_limit);
    if (name == "e") continue;
    std::smatch m;
    if (std::regex_match(name, m, kVector)) {
      const long idx = std::stol(m[1]) - 1;
      if (idx < 0 || idx >= rank_) fail(ErrorKind::UnknownToken, "no fibre generator " + name);
      g.tail_[idx] = checked_add(g.tail_[idx], k);
      continue;
    }
    auto it = std::find_if(letters_.begin(), letters_.end(), [&](const Letter& l) { return l.name == name; });
    if (it == letters_.end()) fail(ErrorKind::UnknownToken, "unknown token '" + name + "'");
    const int index = int(it - letters_.begin());
    for (Int i = 0; i < (k < 0 ? -k : k); ++i) right_multiply_letter(g, index, k < 0 ? -1 : 1);
  }
  return g;
}

std::string FibredPresentation::format(const GroupElement& g) const {
  std::string out;
  for (const auto& s : g.syllables_) {
    append_vector_tokens(out, s.residue);
    if (!out.empty()) out += ' ';
    out += letters_[s.letter].name;
    if (s.sign < 0) out += "^-1";
  }
  append_vector_tokens(out, g.tail_);
  return out.empty() ? "e" : out;
}

CosetKey FibredPresentation::coset_key(const GroupElement& g) const {
  check_same_group(g);
  CosetKey k;
  k.group_id_ = id_;
  k.syllables_ = g.syllables_;
  return k;
}

GroupElement FibredPresentation::representative(const CosetKey& key) const {
  check_same_group(key);
  GroupElement g = identity();
  g.syllables_ = key.syllables_;
  return g;
}

std::string FibredPresentation::format(const CosetKey& key) const {
  std::string out;
  for (const auto& s : key.syllables()) {
    append_vector_tokens(out, s.residue);
    if (!out.empty()) out += ' ';
    out += letters_[s.letter].name;
    if (s.sign < 0) out += "^-1";
  }
  return out.empty() ? "H" : out + " H";
}

// ---------------------------------------------------------------------------
// Commensuration data

RationalMatrix FibredPresentation::matrix_A(const std::vector<Syllable>& syllables) const {
  RationalMatrix acc = RationalMatrix::identity(rank_);
  for (const auto& s : syllables) {
    const Letter& l = letters_[s.letter];
    acc = (s.sign > 0 ? l.inverse : l.matrix) * acc;
  }
  return acc;
}

RationalMatrix FibredPresentation::matrix_A(const GroupElement& g) const {
  check_same_group(g);
  return matrix_A(g.syllables_);
}

RationalMatrix FibredPresentation::matrix_A(const CosetKey& key) const {
  check_same_group(key);
  return matrix_A(key.syllables_);
}

CommensurationIndices FibredPresentation::commensuration_indices(const GroupElement& g) const {
  check_same_group(g);
  if (g.syllables_.empty()) return {};
  // g v g^-1 stays in Z^n iff every partial conjugate, innermost letter
  // first, is integral.
  std::vector<std::pair<IntMat, Int>> conditions;
  RationalMatrix conj = RationalMatrix::identity(rank_);
  for (auto it = g.syllables_.rbegin(); it != g.syllables_.rend(); ++it) {
    const Letter& l = letters_[it->letter];
    conj = (it->sign > 0 ? l.matrix : l.inverse) * conj;
    conditions.push_back(conj.integer_form());
  }
  const LatticeBasis source = congruence_lattice(conditions, rank_);
  const auto& [num, den] = conditions.back();
  const LatticeBasis image = image_lattice(num, den, source);
  return {source.index(), image.index()};
}

// ---------------------------------------------------------------------------
// Hashing

namespace {

std::size_t hash_syllables(const std::vector<Syllable>& syllables) {
  std::size_t h = syllables.size();
  for (const auto& s : syllables) {
    h = hash_mix(h, static_cast<std::uint64_t>(s.letter * 2 + (s.sign > 0 ? 1 : 0)));
    for (Int x : s.residue) h = hash_mix(h, static_cast<std::uint64_t>(x));
  }
  return h;
}

}  // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = hash_syllables(g.syllables());
  for (Int x : g.tail()) h = hash_mix(h, static_cast<std::uint64_t>(x));
  return h;
}

std::size_t CosetKeyHash::operator()(const CosetKey& k) const noexcept { return hash_syllables(k.syllables()); }

}  // namespace cscope
