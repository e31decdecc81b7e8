#include "bergepart/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "bergepart/berge.hpp"
#include "bergepart/bounds.hpp"
#include "bergepart/constructors.hpp"
#include "bergepart/lemma_checkers.hpp"
#include "bergepart/search.hpp"
#include "bergepart/serialize.hpp"

namespace bergepart::cli {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  unsigned threads = 0;

  std::string construction;
  int n = 0;
  int k = 0;
  std::string output;
  std::string verify_pattern;

  std::string pattern;
  std::string input;
  bool no_certificate = false;

  bool measure_construction = false;

  std::string lemma;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;

  std::string family = "star";
  std::uint64_t budget = std::uint64_t{1} << 40;
  bool prove_unique = false;
  bool symmetry = false;
};

Json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

Json sets_to_json(std::span<const SubsetMask> sets) {
  Json out = Json::array();
  for (SubsetMask s : sets) out.push_back(mask_to_json(s));
  return out;
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["sets"] = sets_to_json(w.sets);
  j["vertex_map"] = w.embedding.vertex_map;
  j["edge_map"] = w.embedding.edge_map;
  return j;
}

Json validation_to_json(const ValidationReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["violation_count"] = report.violations.size();
  Json list = Json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < 20; ++i) {
    const auto& v = report.violations[i];
    list.push_back({{"kind", std::string(violation_kind_name(v.kind))}, {"set", mask_to_json(v.mask)},
                    {"part", v.part_index}});
  }
  j["violations"] = std::move(list);
  return j;
}

Json freeness_to_json(const FreenessReport& report, const PatternGraph& g) {
  Json j;
  j["pattern"] = g.name();
  j["all_free"] = report.all_free();
  j["parts"] = report.verdicts.size();
  j["free_parts"] = std::count_if(report.verdicts.begin(), report.verdicts.end(), [](auto& v) { return v.free; });
  j["certified_by_components"] =
      std::count_if(report.verdicts.begin(), report.verdicts.end(), [](auto& v) { return v.by_certificate; });
  if (report.first_bad_part) {
    j["first_bad_part"] = *report.first_bad_part;
    j["witness"] = witness_to_json(*report.first_witness);
  } else {
    j["first_bad_part"] = nullptr;
  }
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_partition(const Partition& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (json) {
    out << partition_to_json(p).dump() << '\n';
  } else {
    out << partition_to_text(p);
  }
  if (!out) throw IoError("write failed for " + path);
}

// Flattens a JSON object into aligned "key  value" lines.
void print_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  std::size_t width = 0;
  for (const auto& [key, value] : j.items()) width = std::max(width, prefix.size() + key.size());
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix + key;
    if (value.is_object()) {
      print_text(value, out, name + ".");
    } else {
      out << std::left << std::setw(static_cast<int>(width) + 2) << name
          << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

struct Outcome {
  std::string status;
  Json result;
};

int emit(const Options& opt, const std::string& command, Json config, const Outcome& outcome, std::ostream& out) {
  Json report;
  report["header"] = {{"tool", "bergepart"}, {"version", kVersion}, {"command", command}, {"config", std::move(config)}};
  report["status"] = outcome.status;
  report["result"] = outcome.result;
  if (opt.format == "text") {
    Json flat;
    flat["status"] = outcome.status;
    flat["result"] = outcome.result;
    print_text(flat, out);
  } else {
    out << report.dump(2) << '\n';
  }
  return outcome.status == "ok" ? kSuccess : kFinding;
}

// ---------------------------------------------------------------------------

Outcome do_construct(const Options& opt, Json& config) {
  Partition p;
  Json result;
  result["construction"] = opt.construction;
  if (opt.construction == "quad") {
    p = quad_partition(GroundSet(opt.n));
  } else if (opt.construction == "modular") {
    auto packing = modular_packing_partition(GroundSet(opt.n), opt.k);
    p = std::move(packing.partition);
    const auto& st = packing.stats;
    Json levels = Json::array();
    for (const auto& level : st.levels) {
      levels.push_back({{"m", level.m}, {"residue", level.residue}, {"class_size", level.class_size},
                        {"parts", level.parts}});
    }
    result["stats"] = {{"k", st.k},
                       {"levels", std::move(levels)},
                       {"full_parts", st.full_parts},
                       {"leftover_sets", st.leftover_sets},
                       {"leftover_parts", st.leftover_parts},
                       {"total_parts", st.total_parts},
                       {"ratio", st.ratio}};
  } else if (opt.construction == "exceptional5") {
    p = exceptional_partition_5();
  } else if (opt.construction == "claw6") {
    p = claw_partition_6();
  } else {
    p = claw_partition_9();
  }
  config["n"] = p.ground.n();
  result["n"] = p.ground.n();
  result["family"] = std::string(family_name(p.family));
  result["parts"] = p.parts.size();
  result["sets"] = p.set_count();
  const auto validation = validate_partition(p);
  result["validation"] = validation_to_json(validation);
  std::string status = validation.ok() ? "ok" : "violation";
  if (!opt.verify_pattern.empty() && validation.ok()) {
    const auto g = PatternGraph::parse(opt.verify_pattern);
    const auto freeness = partition_is_g_free(p, g);
    result["verify"] = freeness_to_json(freeness, g);
    if (!freeness.all_free()) status = "violation";
  }
  if (!opt.output.empty()) {
    write_partition(p, opt.output);
    result["output"] = opt.output;
  }
  return {status, std::move(result)};
}

Outcome do_verify(const Options& opt) {
  const Partition p = parse_partition(read_file(opt.input));
  const auto g = PatternGraph::parse(opt.pattern);
  Json result;
  result["input"] = opt.input;
  result["n"] = p.ground.n();
  result["family"] = std::string(family_name(p.family));
  result["parts"] = p.parts.size();
  const auto validation = validate_partition(p);
  result["validation"] = validation_to_json(validation);
  if (!validation.ok()) return {"violation", std::move(result)};
  FreenessOptions fo;
  fo.use_component_certificate = !opt.no_certificate;
  const auto freeness = partition_is_g_free(p, g, fo);
  result["verify"] = freeness_to_json(freeness, g);
  return {freeness.all_free() ? "ok" : "violation", std::move(result)};
}

Outcome do_bounds(const Options& opt) {
  const auto g = PatternGraph::parse(opt.pattern);
  BoundsOptions bo;
  bo.measure_construction = opt.measure_construction;
  const auto report = known_bounds(opt.n, g, bo);
  Json result;
  result["n"] = opt.n;
  result["pattern"] = g.name();
  result["lower"] = big_to_json(report.lower);
  result["upper"] = big_to_json(report.upper);
  result["exact"] = report.exact ? big_to_json(*report.exact) : Json(nullptr);
  Json sources = Json::array();
  for (const auto& p : report.provenance) sources.push_back({{"source", p.label}, {"detail", p.detail}});
  result["provenance"] = std::move(sources);
  return {report.exact ? "ok" : "gap", std::move(result)};
}

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["statement"] = std::string(statement_label(r.statement));
  j["n"] = r.n;
  if (r.mode.kind == CheckMode::Kind::Exhaustive) {
    j["mode"] = "exhaustive";
  } else {
    j["mode"] = "sample";
    j["samples"] = r.mode.samples;
    j["seed"] = r.mode.seed;
  }
  j["tuples_checked"] = r.tuples_checked;
  j["violation_count"] = r.violation_count;
  Json list = Json::array();
  for (const auto& tuple : r.violations) list.push_back(sets_to_json(tuple));
  j["violations"] = std::move(list);
  return j;
}

Outcome do_lemma(const Options& opt, Json& config) {
  const CheckMode mode = opt.exhaustive ? CheckMode::exhaustive() : CheckMode::sample(opt.samples, opt.seed);
  if (!opt.exhaustive && opt.samples == 0) throw CLI::ValidationError("lemma", "give --exhaustive or --samples");
  config["mode"] = opt.exhaustive ? "exhaustive" : "sample";
  std::vector<CheckReport> reports;
  if (opt.lemma == "triangle") {
    reports = check_triangle_lemma(opt.n, mode, opt.threads);
  } else if (opt.lemma == "c4claim") {
    reports.push_back(check_c4_claim(opt.n, mode, opt.threads));
  } else if (opt.lemma == "c4even") {
    reports = check_even_c4_lemma(opt.n, mode, opt.threads);
  } else {
    reports.push_back(check_odd_c4_lemma(opt.n, mode, opt.threads));
  }
  Json list = Json::array();
  bool clean = true;
  for (const auto& r : reports) {
    clean = clean && r.violation_count == 0;
    list.push_back(check_report_to_json(r));
  }
  Json result;
  result["lemma"] = opt.lemma;
  result["reports"] = std::move(list);
  return {clean ? "ok" : "violation", std::move(result)};
}

Outcome do_search(const Options& opt) {
  SearchConfig cfg;
  cfg.n = opt.n;
  cfg.pattern = PatternGraph::parse(opt.pattern);
  cfg.family = opt.family == "full" ? Family::PowerSet : Family::PowerSetStar;
  cfg.node_budget = opt.budget;
  cfg.symmetry = opt.symmetry;
  cfg.prove_unique = opt.prove_unique;

  Json result;
  const auto res = exact_f(cfg);
  result["n"] = opt.n;
  result["pattern"] = cfg.pattern.name();
  result["complete"] = res.complete;
  result["value"] = res.value ? Json(*res.value) : Json(nullptr);
  result["lower"] = res.lower;
  result["upper"] = res.upper;
  result["nodes_expanded"] = res.nodes_expanded;
  bool complete = res.complete;
  if (res.witness) {
    result["witness"] = partition_to_json(*res.witness);
    if (!opt.output.empty()) {
      write_partition(*res.witness, opt.output);
      result["output"] = opt.output;
    }
  }
  if (opt.prove_unique) {
    const auto census = census_optimal(cfg);
    result["census"] = {{"value", census.value},
                        {"classes", census.classes},
                        {"colorings", census.colorings},
                        {"nodes_expanded", census.nodes_expanded},
                        {"complete", census.complete}};
    complete = complete && census.complete;
  }
  return {complete ? "ok" : "incomplete", std::move(result)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partitions of the power set into Berge-G-free classes", "bergepart"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* construct = app.add_subcommand("construct", "Build an explicit partition");
  construct->require_subcommand(1);
  for (const char* kind : {"quad", "modular", "exceptional5", "claw6", "claw9"}) {
    auto* sub = construct->add_subcommand(kind);
    if (std::string(kind) == "quad" || std::string(kind) == "modular") {
      sub->add_option("--n", opt.n, "Ground set size")->required();
    }
    if (std::string(kind) == "modular") sub->add_option("--k", opt.k, "Pattern edge count")->required();
    sub->add_option("-o,--output", opt.output, "Write the partition (.json for JSON, text otherwise)");
    sub->add_option("--verify", opt.verify_pattern, "Check every part against a pattern");
    sub->callback([&opt, kind] { opt.construction = kind; });
  }

  auto* verify = app.add_subcommand("verify", "Validate a partition file and check it is pattern-free");
  verify->add_option("--pattern", opt.pattern, "c3, c4, cK:<k>, pK:<k>, sK:<k> or edges:1-2,...")->required();
  verify->add_option("file", opt.input, "Partition file (JSON or text)")->required();
  verify->add_flag("--no-certificate", opt.no_certificate, "Always enumerate sub-families");

  auto* bounds = app.add_subcommand("bounds", "Known lower and upper bounds for f(n, G)");
  bounds->add_option("--n", opt.n)->required();
  bounds->add_option("--pattern", opt.pattern)->required();
  bounds->add_flag("--measure-construction", opt.measure_construction, "Include the modular packing count");

  auto* lemma = app.add_subcommand("lemma", "Brute-force or sample the medium/large set lemmas");
  lemma->require_subcommand(1);
  for (const char* kind : {"triangle", "c4claim", "c4even", "c4odd"}) {
    auto* sub = lemma->add_subcommand(kind);
    sub->add_option("--n", opt.n)->required();
    sub->add_flag("--exhaustive", opt.exhaustive);
    sub->add_option("--samples", opt.samples);
    sub->add_option("--seed", opt.seed);
    sub->callback([&opt, kind] { opt.lemma = kind; });
  }

  auto* search = app.add_subcommand("search", "Exact f(n, G) by branch and bound");
  search->add_option("--n", opt.n)->required();
  search->add_option("--pattern", opt.pattern)->required();
  search->add_option("--family", opt.family)->check(CLI::IsMember({"star", "full"}));
  search->add_option("--budget", opt.budget, "Node budget");
  search->add_flag("--prove-unique", opt.prove_unique, "Count optimal partitions up to relabeling");
  search->add_flag("--symmetry", opt.symmetry, "Orbit pruning on the (n-1)-sets");
  search->add_option("-o,--output", opt.output, "Write the witness partition");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kSuccess;
    err << app.help();
    return kUsage;
  }

  Json config;
  config["threads"] = opt.threads;
  try {
    if (construct->parsed()) {
      const std::string command = "construct " + opt.construction;
      config["output"] = opt.output;
      config["verify"] = opt.verify_pattern;
      const Outcome outcome = do_construct(opt, config);
      return emit(opt, command, config, outcome, out);
    }
    if (verify->parsed()) {
      config["pattern"] = opt.pattern;
      config["input"] = opt.input;
      return emit(opt, "verify", config, do_verify(opt), out);
    }
    if (bounds->parsed()) {
      config["n"] = opt.n;
      config["pattern"] = opt.pattern;
      config["measure_construction"] = opt.measure_construction;
      return emit(opt, "bounds", config, do_bounds(opt), out);
    }
    if (lemma->parsed()) {
      config["n"] = opt.n;
      config["samples"] = opt.samples;
      config["seed"] = opt.seed;
      const Outcome outcome = do_lemma(opt, config);
      return emit(opt, "lemma " + opt.lemma, config, outcome, out);
    }
    config["n"] = opt.n;
    config["pattern"] = opt.pattern;
    config["family"] = opt.family;
    config["budget"] = opt.budget;
    config["symmetry"] = opt.symmetry;
    config["prove_unique"] = opt.prove_unique;
    return emit(opt, "search", config, do_search(opt), out);
  } catch (const CLI::ValidationError& e) {
    err << "bergepart: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "bergepart: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace bergepart::cli
