// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "flkit/aggregate.hpp"
#include "flkit/blues.hpp"
#include "flkit/cli.hpp"
#include "flkit/corpus.hpp"
#include "flkit/distance.hpp"
#include "flkit/error.hpp"
#include "flkit/eval.hpp"
#include "flkit/extract.hpp"
#include "flkit/sbfl.hpp"
#include "flkit/sbir.hpp"
#include "flkit/text.hpp"

namespace py = pybind11;

namespace {

using Pairs = std::vector<std::pair<std::string, double>>;

Pairs to_pairs(const flkit::RankedList& list) {
  Pairs out;
  for (const auto& e : list) out.emplace_back(e.item_id, e.score);
  return out;
}

flkit::RankedList from_items(const std::vector<std::string>& items) {
  flkit::RankedList list;
  for (std::size_t i = 0; i < items.size(); ++i) list.push_back(items[i], 1.0 / static_cast<double>(i + 1));
  return list;
}

std::vector<flkit::RankedList> from_item_lists(const std::vector<std::vector<std::string>>& lists) {
  std::vector<flkit::RankedList> out;
  for (const auto& l : lists) out.push_back(from_items(l));
  return out;
}

}  // namespace

PYBIND11_MODULE(_flkit, m) {
  m.doc() = "Statement-level fault localization: SBFL, Blues, rank aggregation, evaluation";

  static py::exception<flkit::Error> error(m, "FlkitError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const flkit::Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("version", &flkit::version_string);
  m.def("porter_stem", &flkit::porter_stem, py::arg("word"));
  m.def("tokenize", py::overload_cast<std::string_view, bool>(&flkit::tokenize), py::arg("text"),
        py::arg("is_code") = false);

  m.def(
      "extract_statements",
      [](const std::string& path, const std::string& source) {
        py::list out;
        for (const auto& s : flkit::extract_statements(path, source)) {
          py::dict d;
          d["statement_id"] = s.statement_id;
          d["kind"] = s.kind;
          d["start_line"] = s.start_line;
          d["end_line"] = s.end_line;
          d["tokens"] = s.tokens;
          out.append(d);
        }
        return out;
      },
      py::arg("file_path"), py::arg("source"));

  m.def(
      "distance",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b, std::size_t k,
         const std::string& metric) { return flkit::list_distance(flkit::parse_distance(metric), a, b, k); },
      py::arg("a"), py::arg("b"), py::arg("k"), py::arg("metric") = "spearman");

  m.def(
      "aggregate",
      [](const std::vector<std::vector<std::string>>& lists, std::vector<double> weights, std::size_t k,
         std::uint64_t seed, const std::string& metric) {
        if (weights.empty()) weights.assign(lists.size(), 1.0);
        flkit::AggregationConfig config;
        config.k = k;
        config.seed = seed;
        config.distance = flkit::parse_distance(metric);
        const auto r = flkit::ce_aggregate(from_item_lists(lists), weights, config);
        return py::make_tuple(r.items, r.objective, r.iterations);
      },
      py::arg("lists"), py::arg("weights") = std::vector<double>{}, py::arg("k") = 100, py::arg("seed") = 1,
      py::arg("metric") = "spearman");

  m.def(
      "brute_force",
      [](const std::vector<std::vector<std::string>>& lists, std::vector<double> weights, std::size_t k,
         const std::string& metric) {
        if (weights.empty()) weights.assign(lists.size(), 1.0);
        const auto r =
            flkit::brute_force_aggregate(from_item_lists(lists), weights, k, flkit::parse_distance(metric));
        return py::make_tuple(r.items, r.objective);
      },
      py::arg("lists"), py::arg("weights") = std::vector<double>{}, py::arg("k") = 100,
      py::arg("metric") = "spearman");

  py::class_<flkit::DefectBundle>(m, "DefectBundle")
      .def_readonly("defect_id", &flkit::DefectBundle::defect_id)
      .def_readonly("project", &flkit::DefectBundle::project)
      .def_property_readonly("statement_count", [](const flkit::DefectBundle& b) { return b.statements.size(); })
      .def_property_readonly("buggy_statements", [](const flkit::DefectBundle& b) {
        return b.ground_truth ? std::vector<std::string>(b.ground_truth->buggy_statements.begin(),
                                                         b.ground_truth->buggy_statements.end())
                              : std::vector<std::string>{};
      });

  m.def(
      "load_bundle", [](const std::filesystem::path& dir) { return flkit::load_defect_bundle(dir); },
      py::arg("path"));
  m.def(
      "sbfl", [](const flkit::DefectBundle& b) { return to_pairs(flkit::rank_sbfl(b)); }, py::arg("bundle"));
  m.def(
      "blues", [](const flkit::DefectBundle& b) { return to_pairs(flkit::blues_ensemble(b)); }, py::arg("bundle"));
  m.def(
      "sbir",
      [](const flkit::DefectBundle& b, std::uint64_t seed) {
        flkit::SbirOptions options;
        options.aggregation.seed = seed;
        return to_pairs(flkit::sbir_localize(b, options));
      },
      py::arg("bundle"), py::arg("seed") = 1);

  m.def(
      "evaluate",
      [](const std::vector<flkit::DefectBundle>& bundles, const std::vector<std::string>& techniques,
         bool union_mode) {
        flkit::EvalOptions options;
        options.techniques = techniques;
        options.union_mode = union_mode;
        return flkit::dump_corpus_report(flkit::evaluate_corpus(bundles, options));
      },
      py::arg("bundles"), py::arg("techniques") = std::vector<std::string>{}, py::arg("union_mode") = false,
      "Returns the report as a JSON string.");

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"flkit"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = flkit::run_command(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
