// SPDX-License-Identifier: Apache-2.0
#include "flkit/eval.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <map>
#include <sstream>

#include "flkit/blues.hpp"
#include "flkit/error.hpp"
#include "flkit/sbfl.hpp"

namespace flkit {
namespace {

constexpr const char* kReportFormat = "flkit-report-1";

bool within(std::optional<std::size_t> rank, Cutoff k) { return rank && (!k || *rank <= *k); }

std::string blues_config_technique(const RankerConfig& cfg) { return "blues/" + cfg.name(); }

template <typename T>
std::optional<T> as_optional(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::vector<Cutoff> default_cutoffs() { return {1, 25, 50, 100, std::nullopt}; }

std::string cutoff_label(Cutoff k) { return k ? std::to_string(*k) : std::string("all"); }

Cutoff parse_cutoff(std::string_view text) {
  if (text == "all") return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw Error(Errc::InvalidConfig, "cutoff must be a positive integer or 'all', got '" + std::string(text) + "'");
  }
  return value;
}

std::optional<std::size_t> first_buggy_rank(const RankedList& ranked, const GroundTruth& gt) {
  for (const auto& e : ranked) {
    if (gt.buggy_statements.count(e.item_id) != 0) return e.rank;
  }
  return std::nullopt;
}

std::size_t e_inspect_at_k(std::span<const LocalizationResult> results, Cutoff k) {
  if (k && *k == 0) throw Error(Errc::InvalidConfig, "k must be >= 1");
  return static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [&](const LocalizationResult& r) { return within(r.first_buggy_rank, k); }));
}

double exam_score(const RankedList& ranked, const GroundTruth& gt, Cutoff k) {
  const std::size_t length = k ? std::min(*k, ranked.size()) : ranked.size();
  const auto rank = first_buggy_rank(ranked, gt);
  if (length == 0 || !rank || *rank > length) return 1.0;
  return static_cast<double>(*rank) / static_cast<double>(length);
}

LocalizationResult localize_result(const std::string& defect_id, const std::string& technique,
                                   const RankedList& ranked, const GroundTruth& gt,
                                   std::span<const Cutoff> cutoffs) {
  LocalizationResult r;
  r.defect_id = defect_id;
  r.technique = technique;
  r.list_length = ranked.size();
  r.first_buggy_rank = first_buggy_rank(ranked, gt);
  for (const Cutoff k : cutoffs) r.exam.push_back(exam_score(ranked, gt, k));
  return r;
}

std::vector<LocalizationResult> union_results(std::span<const std::vector<LocalizationResult>> constituents,
                                              const std::string& technique) {
  std::map<std::string, LocalizationResult> merged;
  for (const auto& results : constituents) {
    for (const auto& r : results) {
      const auto [it, inserted] = merged.try_emplace(r.defect_id, r);
      LocalizationResult& u = it->second;
      if (inserted) {
        u.technique = technique;
        continue;
      }
      u.list_length = std::max(u.list_length, r.list_length);
      if (r.first_buggy_rank && (!u.first_buggy_rank || *r.first_buggy_rank < *u.first_buggy_rank)) {
        u.first_buggy_rank = r.first_buggy_rank;
      }
      if (r.exam.size() != u.exam.size()) throw Error(Errc::ArityMismatch, "constituents use different cutoffs");
      for (std::size_t i = 0; i < u.exam.size(); ++i) u.exam[i] = std::min(u.exam[i], r.exam[i]);
    }
  }
  std::vector<LocalizationResult> out;
  out.reserve(merged.size());
  for (auto& [id, r] : merged) out.push_back(std::move(r));
  return out;
}

TechniqueReport summarize(const std::string& technique, std::vector<LocalizationResult> results,
                          std::size_t skipped, std::span<const Cutoff> cutoffs) {
  std::sort(results.begin(), results.end(),
            [](const LocalizationResult& a, const LocalizationResult& b) { return a.defect_id < b.defect_id; });
  TechniqueReport report;
  report.technique = technique;
  report.defects = results.size();
  report.skipped = skipped;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    CutoffMetrics m;
    m.k = cutoffs[i];
    m.e_inspect = e_inspect_at_k(results, cutoffs[i]);
    if (!results.empty()) {
      double sum = 0.0;
      for (const auto& r : results) sum += r.exam.at(i);
      m.mean_exam = sum / static_cast<double>(results.size());
    }
    report.metrics.push_back(m);
  }
  report.per_defect = std::move(results);
  return report;
}

const TechniqueReport* CorpusReport::find(std::string_view technique) const {
  for (const auto& t : techniques) {
    if (t.technique == technique) return &t;
  }
  return nullptr;
}

std::vector<std::string> all_techniques(std::size_t f) {
  std::vector<std::string> names{"sbfl"};
  for (const auto& cfg : ensemble_configs(f)) names.push_back(blues_config_technique(cfg));
  names.emplace_back("blues");
  names.emplace_back("sbir");
  return names;
}

CorpusReport evaluate_corpus(std::span<const DefectBundle> bundles, const EvalOptions& options) {
  const auto techniques = options.techniques.empty() ? all_techniques(options.sbir.blues.f) : options.techniques;
  const auto cutoffs = options.cutoffs.empty() ? default_cutoffs() : options.cutoffs;
  for (const Cutoff k : cutoffs) {
    if (k && *k == 0) throw Error(Errc::InvalidConfig, "cutoff must be >= 1");
  }

  const auto configs = ensemble_configs(options.sbir.blues.f);
  std::map<std::string, std::size_t> config_index;
  for (std::size_t i = 0; i < configs.size(); ++i) config_index[blues_config_technique(configs[i])] = i;
  for (const auto& t : techniques) {
    if (t != "sbfl" && t != "blues" && t != "sbir" && config_index.count(t) == 0) {
      throw Error(Errc::InvalidConfig, "unknown technique '" + t + "'");
    }
  }
  const auto wants = [&](auto pred) { return std::any_of(techniques.begin(), techniques.end(), pred); };
  const bool need_sbfl = wants([](const std::string& t) { return t == "sbfl" || t == "sbir"; });
  const bool need_blues = options.union_mode || wants([](const std::string& t) { return t != "sbfl"; });

  std::vector<const DefectBundle*> ordered;
  for (const auto& b : bundles) {
    if (!b.ground_truth || b.ground_truth->buggy_statements.empty()) {
      throw Error(Errc::NoGroundTruth, b.defect_id);
    }
    ordered.push_back(&b);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const DefectBundle* a, const DefectBundle* b) { return a->defect_id < b->defect_id; });

  std::map<std::string, std::vector<LocalizationResult>> results;
  std::map<std::string, std::size_t> skipped;
  std::vector<std::vector<LocalizationResult>> config_results(configs.size());
  std::size_t blues_skipped = 0;

  for (const DefectBundle* bundle : ordered) {
    const GroundTruth& gt = *bundle->ground_truth;
    const auto record = [&](const std::string& technique, const RankedList& ranked) {
      results[technique].push_back(localize_result(bundle->defect_id, technique, ranked, gt, cutoffs));
    };

    std::optional<RankedList> sbfl;
    if (need_sbfl && validate_bundle(*bundle, Technique::Sbfl).runnable) sbfl = rank_sbfl(*bundle);
    std::optional<BluesRun> blues;
    if (need_blues && validate_bundle(*bundle, Technique::Irfl).runnable) blues = run_blues(*bundle, options.sbir.blues);
    if (!blues) ++blues_skipped;

    for (const auto& t : techniques) {
      if (t == "sbfl") {
        sbfl ? record(t, *sbfl) : void(++skipped[t]);
      } else if (t == "blues") {
        blues ? record(t, blues->ensemble) : void(++skipped[t]);
      } else if (t == "sbir") {
        if (sbfl && blues) {
          record(t, fuse_lists(*sbfl, blues->ensemble, options.sbir).ranked);
        } else {
          ++skipped[t];
        }
      } else {
        blues ? record(t, blues->config_lists.at(config_index.at(t))) : void(++skipped[t]);
      }
    }
    if (blues && options.union_mode) {
      for (std::size_t i = 0; i < configs.size(); ++i) {
        config_results[i].push_back(localize_result(bundle->defect_id, blues_config_technique(configs[i]),
                                                    blues->config_lists[i], gt, cutoffs));
      }
    }
  }

  CorpusReport report;
  report.cutoffs = cutoffs;
  for (const auto& t : techniques) report.techniques.push_back(summarize(t, results[t], skipped[t], cutoffs));
  if (options.union_mode) {
    report.techniques.push_back(summarize(kBluesUnion, union_results(config_results, kBluesUnion), blues_skipped, cutoffs));
  }
  return report;
}

nlohmann::ordered_json to_json(const CorpusReport& report) {
  nlohmann::ordered_json j;
  j["format"] = kReportFormat;
  auto& ks = j["cutoffs"] = nlohmann::ordered_json::array();
  for (const Cutoff k : report.cutoffs) ks.push_back(cutoff_label(k));
  auto& techniques = j["techniques"] = nlohmann::ordered_json::array();
  for (const auto& t : report.techniques) {
    nlohmann::ordered_json tj;
    tj["technique"] = t.technique;
    tj["defects"] = t.defects;
    tj["skipped"] = t.skipped;
    nlohmann::ordered_json e_inspect = nlohmann::ordered_json::object();
    nlohmann::ordered_json exam = nlohmann::ordered_json::object();
    for (const auto& m : t.metrics) {
      e_inspect[cutoff_label(m.k)] = m.e_inspect;
      exam[cutoff_label(m.k)] = m.mean_exam;
    }
    tj["e_inspect"] = std::move(e_inspect);
    tj["mean_exam"] = std::move(exam);
    auto& rows = tj["per_defect"] = nlohmann::ordered_json::array();
    for (const auto& r : t.per_defect) {
      nlohmann::ordered_json rj;
      rj["defect_id"] = r.defect_id;
      rj["first_buggy_rank"] = r.first_buggy_rank ? nlohmann::ordered_json(*r.first_buggy_rank) : nullptr;
      rj["list_length"] = r.list_length;
      rj["exam"] = r.exam;
      rows.push_back(std::move(rj));
    }
    techniques.push_back(std::move(tj));
  }
  return j;
}

CorpusReport corpus_report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kReportFormat) {
      throw Error(Errc::ParseError, "unsupported report format");
    }
    CorpusReport report;
    for (const auto& k : j.at("cutoffs")) report.cutoffs.push_back(parse_cutoff(k.get<std::string>()));
    for (const auto& tj : j.at("techniques")) {
      TechniqueReport t;
      t.technique = tj.at("technique").get<std::string>();
      t.defects = tj.at("defects").get<std::size_t>();
      t.skipped = tj.at("skipped").get<std::size_t>();
      for (const Cutoff k : report.cutoffs) {
        const auto label = cutoff_label(k);
        t.metrics.push_back({k, tj.at("e_inspect").at(label).get<std::size_t>(),
                             tj.at("mean_exam").at(label).get<double>()});
      }
      for (const auto& rj : tj.at("per_defect")) {
        LocalizationResult r;
        r.defect_id = rj.at("defect_id").get<std::string>();
        r.technique = t.technique;
        r.first_buggy_rank = as_optional<std::size_t>(rj.at("first_buggy_rank"));
        r.list_length = rj.at("list_length").get<std::size_t>();
        r.exam = rj.at("exam").get<std::vector<double>>();
        t.per_defect.push_back(std::move(r));
      }
      report.techniques.push_back(std::move(t));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("corpus report: ") + e.what());
  }
}

std::string dump_corpus_report(const CorpusReport& report) { return to_json(report).dump(2) + "\n"; }

std::string format_report_table(const CorpusReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"technique"};
  for (const Cutoff k : report.cutoffs) header.push_back("@" + cutoff_label(k));
  for (const Cutoff k : report.cutoffs) header.push_back("EXAM@" + cutoff_label(k));
  header.emplace_back("defects");
  header.emplace_back("skipped");
  rows.push_back(header);
  for (const auto& t : report.techniques) {
    std::vector<std::string> row{t.technique};
    for (const auto& m : t.metrics) row.push_back(std::to_string(m.e_inspect));
    for (const auto& m : t.metrics) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(1) << 100.0 * m.mean_exam << '%';
      row.push_back(cell.str());
    }
    row.push_back(std::to_string(t.defects));
    row.push_back(std::to_string(t.skipped));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace flkit
