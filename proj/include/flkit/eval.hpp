// SPDX-License-Identifier: Apache-2.0
//
// Fault-localization metrics and corpus reports.
//
// A cutoff of std::nullopt means "all" throughout.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "flkit/corpus.hpp"
#include "flkit/ranked_list.hpp"
#include "flkit/sbir.hpp"

namespace flkit {

using Cutoff = std::optional<std::size_t>;

/// The report columns: 1, 25, 50, 100, all.
std::vector<Cutoff> default_cutoffs();
std::string cutoff_label(Cutoff k);
/// "all" or a positive integer. Throws Error(InvalidConfig).
Cutoff parse_cutoff(std::string_view text);

struct LocalizationResult {
  std::string defect_id;
  std::string technique;
  std::size_t list_length = 0;
  std::optional<std::size_t> first_buggy_rank;  // nullopt: not localized
  std::vector<double> exam;  // one per cutoff of the evaluation
};

/// Smallest rank holding a ground-truth statement.
std::optional<std::size_t> first_buggy_rank(const RankedList& ranked, const GroundTruth& gt);

/// Defects with first_buggy_rank <= k. Throws Error(InvalidConfig) for k == 0.
std::size_t e_inspect_at_k(std::span<const LocalizationResult> results, Cutoff k);

/// first_buggy_rank / length over the list truncated to k; 1.0 when the
/// statement is not in that prefix or the list is empty.
double exam_score(const RankedList& ranked, const GroundTruth& gt, Cutoff k = std::nullopt);

LocalizationResult localize_result(const std::string& defect_id, const std::string& technique,
                                   const RankedList& ranked, const GroundTruth& gt,
                                   std::span<const Cutoff> cutoffs);

/// Per-defect union over constituents: a defect is localized at the best rank
/// any constituent reaches, and each EXAM is the constituents' minimum.
/// Defects are matched by id; output is sorted by defect id.
std::vector<LocalizationResult> union_results(std::span<const std::vector<LocalizationResult>> constituents,
                                              const std::string& technique);

struct CutoffMetrics {
  Cutoff k;
  std::size_t e_inspect = 0;
  double mean_exam = 0.0;
};

struct TechniqueReport {
  std::string technique;
  std::size_t defects = 0;  // evaluated
  std::size_t skipped = 0;  // bundles the technique could not run on
  std::vector<CutoffMetrics> metrics;
  std::vector<LocalizationResult> per_defect;  // sorted by defect id
};

TechniqueReport summarize(const std::string& technique, std::vector<LocalizationResult> results,
                          std::size_t skipped, std::span<const Cutoff> cutoffs);

struct CorpusReport {
  std::vector<Cutoff> cutoffs;
  std::vector<TechniqueReport> techniques;

  const TechniqueReport* find(std::string_view technique) const;
};

/// "sbfl", "blues", "blues/m=1/high" ... "blues/m=all/wt", "sbir".
std::vector<std::string> all_techniques(std::size_t f = 50);
/// Name of the union-mode row over the six Blues configurations.
inline constexpr const char* kBluesUnion = "blues-union";

struct EvalOptions {
  std::vector<std::string> techniques;  // empty: all_techniques()
  std::vector<Cutoff> cutoffs;          // empty: default_cutoffs()
  bool union_mode = false;
  SbirOptions sbir;
};

/// Throws Error(NoGroundTruth) when a bundle lacks ground truth, and
/// Error(InvalidConfig) for an unknown technique.
CorpusReport evaluate_corpus(std::span<const DefectBundle> bundles, const EvalOptions& options = {});

nlohmann::ordered_json to_json(const CorpusReport& report);
CorpusReport corpus_report_from_json(const nlohmann::json& j);
std::string dump_corpus_report(const CorpusReport& report);
/// Aligned plain-text table: one row per technique, E_inspect@k then EXAM@k.
std::string format_report_table(const CorpusReport& report);

}  // namespace flkit
