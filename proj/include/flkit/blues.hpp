// SPDX-License-Identifier: Apache-2.0
//
// Statement-level IR fault localization from a bug report.
//
// Files are ranked by structured BM25 against the report (fields: class,
// method and variable names, comments). Statements of each top file are
// ranked by BM25 within that file. A RankerConfig (f, m, ScoreFn) turns
// the two levels into one statement list; six configurations are merged
// into the ensemble by best rank.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flkit/bm25.hpp"
#include "flkit/corpus.hpp"
#include "flkit/ranked_list.hpp"
#include "flkit/text.hpp"

namespace flkit {

enum class ScoreFn { High, Wt };

struct RankerConfig {
  std::size_t f = 50;
  std::optional<std::size_t> m;  // nullopt: every statement of the file
  ScoreFn score_fn = ScoreFn::High;

  /// e.g. "m=25/high", "m=all/wt".
  std::string name() const;
  /// Throws Error(InvalidConfig) when f == 0 or m == 0.
  void validate() const;
};

/// The six ensemble members, in merge precedence order:
/// HIGH with m = 1, 25, 50, 100, all; then WT with m = all.
std::vector<RankerConfig> ensemble_configs(std::size_t f = 50);

struct BluesOptions {
  Bm25Params bm25;
  FieldMap file_fields;       // empty: all query x doc field pairs
  FieldMap statement_fields;  // empty: all query x doc field pairs
  std::size_t f = 50;
  const Tokenizer* tokenizer = nullptr;  // null: built-in stopwords
};

FieldedDocument bug_report_query(const BugReport& report, const Tokenizer& tokenizer);
std::vector<FieldedDocument> file_documents(const DefectBundle& bundle, const Tokenizer& tokenizer);
FieldedDocument statement_document(const StatementRecord& statement, const Tokenizer& tokenizer);

/// Throws Error(NotRunnable) for an empty report or a bundle without files.
RankedList rank_files(const DefectBundle& bundle, const BluesOptions& options = {});

/// Throws Error(NoStatements) when `file` has no statements.
RankedList rank_statements_in_file(const std::string& file, const DefectBundle& bundle,
                                   const BluesOptions& options = {});

RankedList apply_ranker_config(const RankedList& files,
                               const std::map<std::string, RankedList>& per_file_statements,
                               const RankerConfig& config);

/// Best-rank union: key = minimum rank over lists; ties go to the earlier
/// list. Emitted score is 1 / key.
RankedList merge_best_rank(std::span<const RankedList> lists);

struct BluesRun {
  RankedList files;
  std::map<std::string, RankedList> per_file_statements;  // top-f files only
  std::vector<RankerConfig> configs;
  std::vector<RankedList> config_lists;
  RankedList ensemble;
};

/// Full pipeline; file and statement rankings are computed once and shared
/// by every configuration. Throws Error(NotRunnable).
BluesRun run_blues(const DefectBundle& bundle, const BluesOptions& options = {});

RankedList blues_ensemble(const DefectBundle& bundle, const BluesOptions& options = {});

}  // namespace flkit
