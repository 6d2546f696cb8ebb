#include "cscope/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cscope/cayley.hpp"
#include "cscope/coset_space.hpp"
#include "cscope/error.hpp"
#include "cscope/invariants.hpp"
#include "cscope/presentation.hpp"
#include "cscope/topology.hpp"

namespace cscope::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.3.0";
constexpr int kScaleSearch = 4;

struct Options {
  std::vector<std::string> groups;
  int radius = 4;
  std::optional<int> inner;
  int scale = 1;
  std::optional<int> outer_scale;
  std::optional<int> outer_radius;
  int cap = 20;
  int sample = 6;
  Int range = 20;
  std::string word;
  std::string coset_word;
  std::string json_path;
  std::string dot_path;
  std::optional<std::size_t> budget;
};

class Emitter {
 public:
  Emitter(std::ostream& out, std::string hash) : out_(out), hash_(std::move(hash)) {}

  void set_hash(std::string hash) { hash_ = std::move(hash); }

  void emit(std::string type, json body) {
    json rec = json::object();
    rec["type"] = std::move(type);
    rec["presentation"] = hash_;
    for (auto& [k, v] : body.items()) rec[k] = v;
    out_ << rec.dump() << '\n';
    records_.push_back(std::move(rec));
  }

  const std::vector<json>& records() const { return records_; }

 private:
  std::ostream& out_;
  std::string hash_;
  std::vector<json> records_;
};

FibredPresentation load_group(const std::string& spec) {
  if (is_preset_name(spec)) return FibredPresentation::preset(spec);
  std::ifstream in(spec);
  if (!in) fail(ErrorKind::ConfigError, "'" + spec + "' is neither a preset nor a readable file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("invalid JSON in ") + spec + ": " + e.what());
  }
  return FibredPresentation::from_json(doc);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ConfigError, "cannot write " + path);
  out << text;
}

json rational_json(const Rational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

json matrix_json(const RationalMatrix& m) { return m.formatted(); }

json spheres_json(const Snapshot& s) {
  json out = json::array();
  for (auto n : s.sphere_sizes()) out.push_back(n);
  return out;
}

json distortion_json(const DistortionValue& d) {
  return {{"norm", rational_json(d.norm)},
          {"F", display_number(d.F)},
          {"inverse_norm", rational_json(d.inverse_norm)},
          {"symmetric_F", display_number(d.symmetric_F)}};
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json("Unknown"); }

std::pair<std::size_t, std::size_t> interior_degree_range(const Snapshot& s) {
  const auto adj = s.adjacency();
  std::size_t lo = SIZE_MAX, hi = 0;
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (!s.complete[v] || s.dist[v] >= s.radius) continue;
    lo = std::min(lo, adj[v].size());
    hi = std::max(hi, adj[v].size());
  }
  if (lo == SIZE_MAX) lo = 0;
  return {lo, hi};
}

void require_nonnegative(const Options& o) {
  if (o.radius < 0 || o.scale < 0 || o.cap < 0 || o.sample < 0 || o.range < 0 || (o.inner && *o.inner < 0) ||
      (o.outer_scale && *o.outer_scale < 0) || (o.outer_radius && *o.outer_radius < 0)) {
    fail(ErrorKind::ConfigError, "radii, scales and caps must be nonnegative");
  }
}

json profile_sphere_json(const SphereDistortion& s, double width) {
  json hist = json::array();
  for (const auto& [bucket, count] : s.histogram) {
    hist.push_back({{"from", display_number(bucket * width)}, {"count", count}});
  }
  return {{"radius", s.radius},
          {"cosets", s.cosets},
          {"maxF_num", s.max_norm.get_num().get_str()},
          {"maxF_den", s.max_norm.get_den().get_str()},
          {"maxF_log", display_number(s.max_F)},
          {"minF_num", s.min_norm.get_num().get_str()},
          {"minF_den", s.min_norm.get_den().get_str()},
          {"minF_log", display_number(s.min_F)},
          {"at_most_threshold", s.at_most_threshold},
          {"identity_matrices", s.identity_matrices},
          {"histogram", hist}};
}

json verdict_json(const DistortionVerdict& v) {
  json out = {{"verdict", to_string(v.kind)},
              {"scale", "at scale R=" + std::to_string(v.radius)},
              {"radius", v.radius},
              {"slope", display_number(v.slope)}};
  if (v.kind == VerdictKind::BoundedAtScale) out["bound"] = display_number(v.bound);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_info(const FibredPresentation& g, Emitter& em) {
  json letters = json::array();
  for (const auto& l : g.letters()) {
    json sb = json::array(), ib = json::array();
    for (int i = 0; i < g.rank(); ++i) {
      sb.push_back(l.source.basis().row(i));
      ib.push_back(l.image.basis().row(i));
    }
    letters.push_back({{"name", l.name},
                       {"matrix", matrix_json(l.matrix)},
                       {"source_index", l.source.index()},
                       {"image_index", l.image.index()},
                       {"source_basis", sb},
                       {"image_basis", ib}});
  }
  em.emit("info", {{"rank", g.rank()},
                   {"document", g.document().to_json()},
                   {"letters", letters},
                   {"quotient_degree_bound", g.quotient_degree_bound()}});
}

void export_snapshot(const Snapshot& s, const Options& o, const std::string& name) {
  if (!o.json_path.empty()) write_file(o.json_path, s.to_json().dump() + "\n");
  if (!o.dot_path.empty()) write_file(o.dot_path, s.to_dot(name));
}

void cmd_ball(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const GroupBall gb = ball(g, o.radius, b);
  em.emit("ball", {{"radius", o.radius},
                   {"vertices", gb.elements.size()},
                   {"edges", gb.snapshot.edges.size()},
                   {"spheres", spheres_json(gb.snapshot)}});
  export_snapshot(gb.snapshot, o, "ball");
}

void cmd_quotient(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const QuotientBall qb = quotient_ball(g, o.radius, b);
  const auto [lo, hi] = interior_degree_range(qb.snapshot);
  em.emit("quotient", {{"radius", o.radius},
                       {"vertices", qb.keys.size()},
                       {"edges", qb.snapshot.edges.size()},
                       {"spheres", spheres_json(qb.snapshot)},
                       {"interior_degree_min", lo},
                       {"interior_degree_max", hi},
                       {"degree_bound", g.quotient_degree_bound()}});
  export_snapshot(qb.snapshot, o, "quotient");
}

void cmd_element(const FibredPresentation& g, const Options& o, Emitter& em) {
  const GroupElement x = g.parse_word(o.word);
  const CosetKey key = g.coset_key(x);
  json syllables = json::array();
  for (const auto& s : x.syllables()) {
    syllables.push_back({{"letter", g.letters()[s.letter].name}, {"sign", s.sign}, {"residue", s.residue}});
  }
  const auto ci = g.commensuration_indices(x);
  json rec = {{"word", o.word},
              {"normal_form", g.format(x)},
              {"syllables", syllables},
              {"tail", x.tail()},
              {"coset", g.format(key)},
              {"matrix_A", matrix_json(g.matrix_A(x))},
              {"distortion", distortion_json(fibre_distortion(g, key))},
              {"commensuration", {{"source_index", ci.source}, {"image_index", ci.image}}}};
  if (g.rank() == 1) {
    const HeightValue h = height(g, x);
    rec["height"] = {{"ratio", rational_json(h.ratio)}, {"log", display_number(h.log_value)}};
  }
  em.emit("element", rec);
}

void cmd_ends(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const QuotientBall qb = quotient_ball(g, o.radius, b);
  const int r_max = o.inner ? *o.inner : std::max(0, o.radius - 1);
  const auto table = ends_table(qb.snapshot, r_max);
  json counts = json::array();
  for (const auto& rep : table) {
    em.emit("ends", {{"radius", o.radius},
                     {"r", rep.inner_radius},
                     {"components", rep.components.size()},
                     {"deep", rep.deep_count()}});
    counts.push_back(rep.deep_count());
  }
  em.emit("ends_summary", {{"radius", o.radius},
                           {"deep_counts", counts},
                           {"hopf_class", hopf_class(table)},
                           {"note", "evidence at scale; >=3 deep components classify as infinitely ended (Hopf)"}});
}

void cmd_distortion(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const DistortionProfile p = distortion_profile(g, o.radius, {}, b);
  for (const auto& s : p.spheres) em.emit("distortion", profile_sphere_json(s, p.bucket_width));
  std::uint64_t kernel = 0;
  for (const auto& s : p.spheres) {
    if (s.radius > 0) kernel += s.identity_matrices;
  }
  json v = verdict_json(p.verdict);
  v["nontrivial_identity_matrices"] = kernel;
  v["aiq_evidence"] = kernel == 0 ? "no nontrivial syllable word with A = I within the radius"
                                  : "nontrivial syllable words with A = I found";
  em.emit("verdict", v);
}

void cmd_hausdorff(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const CosetKey key = g.coset_key(g.parse_word(o.coset_word));
  const HausdorffBound h = coset_hausdorff_lb(g, key, o.sample, o.cap, b);
  json by_radius = json::array();
  for (const auto& v : h.by_radius) by_radius.push_back(optional_json(v));
  em.emit("hausdorff", {{"coset", g.format(key)},
                        {"sample", o.sample},
                        {"cap", o.cap},
                        {"fibre_to_coset", optional_json(h.fibre_to_coset)},
                        {"coset_to_fibre", optional_json(h.coset_to_fibre)},
                        {"lower_bound", optional_json(h.combined)},
                        {"stabilized_at", h.stabilized_at},
                        {"by_radius", by_radius},
                        {"samples", h.samples}});
}

void cmd_projection(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const CosetKey key = g.coset_key(g.parse_word(o.coset_word));
  const ProjectionQuality q = projection_quality(g, key, o.range, o.cap, b);
  em.emit("projection", {{"coset", g.format(key)},
                         {"range", o.range},
                         {"cap", o.cap},
                         {"gap", optional_json(q.gap)},
                         {"worst", q.worst},
                         {"samples", q.samples}});
}

void cmd_rips(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const GroupBall inner = ball(g, o.radius, b);
  const RipsComplex2 c = rips(inner.snapshot, o.scale);
  const Betti bt = betti_z2(c);
  em.emit("rips", {{"radius", o.radius},
                   {"scale", o.scale},
                   {"vertices", c.vertices},
                   {"edges", c.edges.size()},
                   {"triangles", c.triangles.size()},
                   {"b0", bt.b0},
                   {"b1", bt.b1}});
  if (!o.json_path.empty()) {
    write_file(o.json_path, RipsComplex2::triplets(c.boundary1(), c.vertices) + RipsComplex2::triplets(c.boundary2(), c.edges.size()));
  }
  if (o.outer_radius || o.outer_scale) {
    const int outer_radius = o.outer_radius.value_or(o.radius);
    const GroupBall outer = ball(g, outer_radius, b);
    int outer_scale = o.outer_scale.value_or(o.scale);
    AcyclicityResult r = relative_acyclicity(inner.snapshot, o.scale, outer.snapshot, outer_scale);
    // Without an explicit outer scale, widen it until the cycles fill.
    for (int step = 0; !o.outer_scale && !r.holds && step < kScaleSearch; ++step) {
      ++outer_scale;
      r = relative_acyclicity(inner.snapshot, o.scale, outer.snapshot, outer_scale);
    }
    json witness = json::array();
    for (const auto& [x, y] : r.witness) witness.push_back({x, y});
    em.emit("acyclicity", {{"inner_radius", o.radius},
                           {"inner_scale", o.scale},
                           {"outer_radius", outer_radius},
                           {"outer_scale", outer_scale},
                           {"outer_scale_searched", !o.outer_scale.has_value()},
                           {"holds", r.holds},
                           {"cycles_checked", r.cycles_checked},
                           {"witness", witness}});
  }
}

void cmd_ccc(const FibredPresentation& g, const Options& o, const Budget& b, Emitter& em) {
  const int a = o.inner.value_or(1);
  const int rq = o.outer_radius.value_or(std::max(0, o.radius - 1));
  const CccReport r = ccc_correspondence(g, o.radius, a, rq, b);
  em.emit("ccc", {{"total_radius", o.radius},
                  {"neighborhood", a},
                  {"quotient_radius", rq},
                  {"total_deep", r.total_deep},
                  {"quotient_deep", r.quotient_deep},
                  {"match", r.match}});
}

json compare_one(const std::string& name, const FibredPresentation& g, const Options& o, const Budget& b) {
  const QuotientBall qb = quotient_ball(g, o.radius, b);
  const auto [lo, hi] = interior_degree_range(qb.snapshot);
  const Betti bt = betti_z2(rips(qb.snapshot, 1));
  const bool tree = bt.b1 == 0 && lo == hi;
  const auto table = ends_table(qb.snapshot, std::max(0, o.radius - 1));
  json counts = json::array();
  for (const auto& rep : table) counts.push_back(rep.deep_count());
  const DistortionProfile p = distortion_profile(g, o.radius, {}, b);
  json spectrum = json::array();
  for (const auto& m : p.spheres.back().spectrum) spectrum.push_back(display_number(log_rational(m)));
  return {{"group", name},
          {"quotient_degree_bound", g.quotient_degree_bound()},
          {"interior_degree_min", lo},
          {"interior_degree_max", hi},
          {"quotient_vertices", qb.keys.size()},
          {"tree_certificate", {{"b1_at_scale_1", bt.b1}, {"constant_degree", lo == hi}, {"tree", tree}}},
          {"ends", {{"deep_counts", counts}, {"hopf_class", hopf_class(table)}}},
          {"distortion", verdict_json(p.verdict)},
          {"maxF_num", p.spheres.back().max_norm.get_num().get_str()},
          {"maxF_den", p.spheres.back().max_norm.get_den().get_str()},
          {"maxF_log", display_number(p.spheres.back().max_F)},
          {"F_spectrum", spectrum},
          {"F_spectrum_truncated", p.spheres.back().spectrum_truncated}};
}

void cmd_compare(const Options& o, const Budget& b, Emitter& em) {
  if (o.groups.size() != 2) fail(ErrorKind::ConfigError, "compare needs exactly two groups");
  const FibredPresentation ga = load_group(o.groups[0]);
  const FibredPresentation gb = load_group(o.groups[1]);
  em.set_hash(ga.hash_hex());
  const json a = compare_one(o.groups[0], ga, o, b);
  em.emit("compare", a);
  em.set_hash(gb.hash_hex());
  const json c = compare_one(o.groups[1], gb, o, b);
  em.emit("compare", c);
  em.set_hash(ga.hash_hex() + "," + gb.hash_hex());
  const bool same_shape = a["interior_degree_max"] == c["interior_degree_max"] &&
                          a["interior_degree_min"] == c["interior_degree_min"] &&
                          a["tree_certificate"] == c["tree_certificate"] && a["ends"] == c["ends"];
  const bool distinguished = a["distortion"]["verdict"] != c["distortion"]["verdict"];
  em.emit("comparison", {{"radius", o.radius}, {"same_quotient_shape", same_shape}, {"distinguished", distinguished}});
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded: return kBudget;
    case ErrorKind::Overflow: return kInternal;
    default: return kConfig;
  }
}

}  // namespace

json display_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Coarse geometry of multiple HNN extensions of Z^n"};
  app.require_subcommand(1);
  app.set_help_flag();
  Options o;

  auto add_common = [&](CLI::App* sub, int group_count) {
    if (group_count == 2) {
      sub->add_option("groups", o.groups, "two presets or presentation files")->required()->expected(2);
    } else {
      sub->add_option("group", o.groups, "preset name or presentation file")->required()->expected(1);
    }
    sub->add_option("--radius", o.radius);
    sub->add_option("--inner", o.inner);
    sub->add_option("--scale", o.scale);
    sub->add_option("--outer-scale", o.outer_scale);
    sub->add_option("--outer-radius", o.outer_radius);
    sub->add_option("--cap", o.cap);
    sub->add_option("--sample", o.sample);
    sub->add_option("--range", o.range);
    sub->add_option("--word", o.word);
    sub->add_option("--coset-word", o.coset_word);
    sub->add_option("--json", o.json_path);
    sub->add_option("--dot", o.dot_path);
    sub->add_option("--budget", o.budget);
  };
  const std::vector<std::string> single = {"info", "ball", "quotient", "element", "ends", "distortion",
                                           "hausdorff", "projection", "rips", "ccc"};
  for (const auto& name : single) add_common(app.add_subcommand(name), 1);
  add_common(app.add_subcommand("compare"), 2);

  Emitter em(out, "");
  auto finish = [&](int code) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json meta = {{"type", "meta"}, {"version", kVersion}, {"elapsed_ms", ms}, {"threads", Budget::default_threads()},
                 {"exit", code}};
    out << meta.dump() << '\n';
    return code;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    em.emit("error", {{"kind", "ConfigError"}, {"message", e.what()}});
    return finish(kConfig);
  }
  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    require_nonnegative(o);
    Budget budget;
    if (o.budget) budget.vertices = *o.budget;
    if (command == "compare") {
      cmd_compare(o, budget, em);
    } else {
      const FibredPresentation g = load_group(o.groups.at(0));
      em.set_hash(g.hash_hex());
      if (command == "info") cmd_info(g, em);
      else if (command == "ball") cmd_ball(g, o, budget, em);
      else if (command == "quotient") cmd_quotient(g, o, budget, em);
      else if (command == "element") cmd_element(g, o, em);
      else if (command == "ends") cmd_ends(g, o, budget, em);
      else if (command == "distortion") cmd_distortion(g, o, budget, em);
      else if (command == "hausdorff") cmd_hausdorff(g, o, budget, em);
      else if (command == "projection") cmd_projection(g, o, budget, em);
      else if (command == "rips") cmd_rips(g, o, budget, em);
      else if (command == "ccc") cmd_ccc(g, o, budget, em);
    }
  } catch (const Error& e) {
    em.emit("error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}});
    return finish(exit_code_for(e.kind()));
  }
  if (command != "compare" && !o.json_path.empty() && command != "ball" && command != "quotient" &&
      command != "rips") {
    write_file(o.json_path, json(em.records()).dump() + "\n");
  }
  return finish(kOk);
}

}  // namespace cscope::cli
