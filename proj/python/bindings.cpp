#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bergepart/berge.hpp"
#include "bergepart/bounds.hpp"
#include "bergepart/cli.hpp"
#include "bergepart/constructors.hpp"
#include "bergepart/lemma_checkers.hpp"
#include "bergepart/search.hpp"
#include "bergepart/serialize.hpp"

namespace py = pybind11;
using namespace bergepart;

namespace {

using SetList = std::vector<std::vector<int>>;

std::vector<SubsetMask> to_masks(const SetList& sets) {
  std::vector<SubsetMask> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(SubsetMask::of(s));
  return out;
}

SetList from_masks(std::span<const SubsetMask> sets) {
  SetList out;
  out.reserve(sets.size());
  for (SubsetMask s : sets) out.push_back(s.elements());
  return out;
}

py::int_ big(const BigInt& v) {
  const std::string digits = v.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

py::object embedding(const std::optional<BergeEmbedding>& e) {
  if (!e) return py::none();
  py::dict d;
  d["vertex_map"] = e->vertex_map;
  d["edge_map"] = e->edge_map;
  return d;
}

Family family_arg(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw py::value_error("unknown family: " + name);
  return *f;
}

CheckMode mode_arg(bool exhaustive, std::uint64_t samples, std::uint64_t seed) {
  if (exhaustive) return CheckMode::exhaustive();
  if (samples == 0) throw py::value_error("give exhaustive=True or samples > 0");
  return CheckMode::sample(samples, seed);
}

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["statement"] = std::string(statement_label(r.statement));
  d["n"] = r.n;
  d["tuples_checked"] = r.tuples_checked;
  d["violation_count"] = r.violation_count;
  py::list violations;
  for (const auto& t : r.violations) violations.append(from_masks(t));
  d["violations"] = violations;
  return d;
}

py::list reports(const std::vector<CheckReport>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(report_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partitions of the power set into Berge-G-free classes";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<InvalidPattern>(m, "InvalidPattern", PyExc_ValueError);
  py::register_exception<InvalidPartition>(m, "InvalidPartition", PyExc_ValueError);
  py::register_exception<ArityMismatch>(m, "ArityMismatch", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<TooLargeForExhaustive>(m, "TooLargeForExhaustive", PyExc_ValueError);

  py::class_<Partition>(m, "Partition")
      .def(py::init([](int n, const std::string& family, const std::vector<SetList>& parts) {
             Partition p{GroundSet(n), family_arg(family), {}};
             for (const auto& part : parts) p.parts.push_back(to_masks(part));
             return p;
           }),
           py::arg("n"), py::arg("family"), py::arg("parts"))
      .def_property_readonly("n", [](const Partition& p) { return p.ground.n(); })
      .def_property_readonly("family", [](const Partition& p) { return std::string(family_name(p.family)); })
      .def_property_readonly("parts",
                             [](const Partition& p) {
                               std::vector<SetList> out;
                               for (const auto& part : p.parts) out.push_back(from_masks(part));
                               return out;
                             })
      .def("__len__", [](const Partition& p) { return p.parts.size(); })
      .def("set_count", &Partition::set_count)
      .def("is_valid", [](const Partition& p) { return validate_partition(p).ok(); })
      .def("violations",
           [](const Partition& p) {
             py::list out;
             for (const auto& v : validate_partition(p).violations) {
               out.append(py::make_tuple(std::string(violation_kind_name(v.kind)), v.mask.elements(), v.part_index));
             }
             return out;
           })
      .def("is_g_free",
           [](const Partition& p, const std::string& pattern) {
             return partition_is_g_free(p, PatternGraph::parse(pattern)).all_free();
           },
           py::arg("pattern"))
      .def("witness",
           [](const Partition& p, const std::string& pattern) -> py::object {
             const auto report = partition_is_g_free(p, PatternGraph::parse(pattern));
             if (report.all_free()) return py::none();
             py::dict d;
             d["part"] = *report.first_bad_part;
             d["sets"] = from_masks(report.first_witness->sets);
             d["vertex_map"] = report.first_witness->embedding.vertex_map;
             d["edge_map"] = report.first_witness->embedding.edge_map;
             return d;
           },
           py::arg("pattern"))
      .def("canonical_key", [](const Partition& p) { return py::bytes(canonicalize(p)); })
      .def("to_json", [](const Partition& p) { return partition_to_json(p).dump(); })
      .def("to_text", [](const Partition& p) { return partition_to_text(p); });

  m.def("parse_partition", [](const std::string& content) { return parse_partition(content); }, py::arg("content"));

  m.def("quad_partition", [](int n) { return quad_partition(GroundSet(n)); }, py::arg("n"));
  m.def("exceptional_partition_5", &exceptional_partition_5);
  m.def("claw_partition_6", &claw_partition_6);
  m.def("claw_partition_9", &claw_partition_9);
  m.def(
      "modular_packing_partition",
      [](int n, int k) {
        auto packing = modular_packing_partition(GroundSet(n), k);
        py::dict stats;
        stats["full_parts"] = packing.stats.full_parts;
        stats["leftover_sets"] = packing.stats.leftover_sets;
        stats["leftover_parts"] = packing.stats.leftover_parts;
        stats["total_parts"] = packing.stats.total_parts;
        stats["ratio"] = packing.stats.ratio;
        return py::make_tuple(std::move(packing.partition), stats);
      },
      py::arg("n"), py::arg("k"));

  m.def(
      "detect",
      [](const SetList& family, const std::string& pattern) {
        return embedding(detect(to_masks(family), PatternGraph::parse(pattern)));
      },
      py::arg("family"), py::arg("pattern"));
  m.def(
      "find_berge_embedding",
      [](const SetList& family, const std::string& pattern) {
        return embedding(find_berge_embedding(to_masks(family), PatternGraph::parse(pattern)));
      },
      py::arg("family"), py::arg("pattern"));
  m.def(
      "classify_quadruple",
      [](const SetList& q, int n) {
        if (q.size() != 4) throw py::value_error("need four sets");
        const auto s = to_masks(q);
        const auto c = classify_quadruple(s[0], s[1], s[2], s[3], GroundSet(n));
        const char* tag = c.tag == QuadClass::Tag::C4 ? "c4" : c.tag == QuadClass::Tag::Psi ? "psi" : "neither";
        py::dict d;
        d["tag"] = tag;
        d["stem"] = c.tag == QuadClass::Tag::Psi ? py::cast(c.stem.elements()) : py::none();
        d["apex"] = c.apex ? py::cast(*c.apex) : py::none();
        return d;
      },
      py::arg("sets"), py::arg("n"));

  m.def("triangle_value", [](int n) { return big(triangle_value(n)); }, py::arg("n"));
  m.def("star_lower_bound", [](int n, int k) { return big(star_lower_bound(n, k)); }, py::arg("n"), py::arg("k"));
  m.def(
      "known_bounds",
      [](int n, const std::string& pattern, bool measure) {
        const auto r = known_bounds(n, PatternGraph::parse(pattern), {measure});
        py::dict d;
        d["lower"] = big(r.lower);
        d["upper"] = big(r.upper);
        d["exact"] = r.exact ? py::object(big(*r.exact)) : py::none();
        py::list sources;
        for (const auto& p : r.provenance) sources.append(py::make_tuple(p.label, p.detail));
        d["provenance"] = sources;
        return d;
      },
      py::arg("n"), py::arg("pattern"), py::arg("measure_construction") = false);

  const auto lemma_args = [] {
    return std::make_tuple(py::arg("n"), py::arg("exhaustive") = false, py::arg("samples") = 0,
                           py::arg("seed") = 1, py::arg("threads") = 0);
  };
  auto [a0, a1, a2, a3, a4] = lemma_args();
  m.def(
      "check_triangle_lemma",
      [](int n, bool ex, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return reports(check_triangle_lemma(n, mode_arg(ex, samples, seed), threads));
      },
      a0, a1, a2, a3, a4);
  m.def(
      "check_c4_claim",
      [](int n, bool ex, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return report_dict(check_c4_claim(n, mode_arg(ex, samples, seed), threads));
      },
      a0, a1, a2, a3, a4);
  m.def(
      "check_even_c4_lemma",
      [](int n, bool ex, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return reports(check_even_c4_lemma(n, mode_arg(ex, samples, seed), threads));
      },
      a0, a1, a2, a3, a4);
  m.def(
      "check_odd_c4_lemma",
      [](int n, bool ex, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
        return report_dict(check_odd_c4_lemma(n, mode_arg(ex, samples, seed), threads));
      },
      a0, a1, a2, a3, a4);

  m.def(
      "exact_f",
      [](int n, const std::string& pattern, const std::string& family, std::uint64_t budget, bool symmetry) {
        SearchConfig cfg;
        cfg.n = n;
        cfg.pattern = PatternGraph::parse(pattern);
        cfg.family = family_arg(family);
        cfg.node_budget = budget;
        cfg.symmetry = symmetry;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = exact_f(cfg);
        }
        py::dict d;
        d["value"] = r.value ? py::cast(*r.value) : py::none();
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["complete"] = r.complete;
        d["nodes_expanded"] = r.nodes_expanded;
        d["witness"] = r.witness ? py::cast(*r.witness) : py::none();
        return d;
      },
      py::arg("n"), py::arg("pattern") = "c3", py::arg("family") = "star",
      py::arg("budget") = std::uint64_t{1} << 40, py::arg("symmetry") = false);
  m.def(
      "census_optimal",
      [](int n, const std::string& pattern, bool symmetry) {
        SearchConfig cfg;
        cfg.n = n;
        cfg.pattern = PatternGraph::parse(pattern);
        cfg.prove_unique = true;
        cfg.symmetry = symmetry;
        CensusResult r;
        {
          py::gil_scoped_release release;
          r = census_optimal(cfg);
        }
        py::dict d;
        d["value"] = r.value;
        d["classes"] = r.classes;
        d["colorings"] = r.colorings;
        d["complete"] = r.complete;
        d["representatives"] = r.representatives;
        return d;
      },
      py::arg("n"), py::arg("pattern") = "c3", py::arg("symmetry") = true);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
