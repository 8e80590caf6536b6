// SPDX-License-Identifier: Apache-2.0
//
// Defect bundles: the per-defect artifact set (statements, bug report,
// test coverage, optional ground truth) and its on-disk interchange format.
//
// Layout of a bundle directory:
//   manifest.json       {"defect_id", "project", "paths": {...}}
//   statements.jsonl    one StatementRecord per line
//   bug_report.json     {"report_id", "summary", "description"}
//   coverage.jsonl      one CoverageRecord per line
//   ground_truth.json   {"buggy_statements": [...]}   (optional)
//   sources/            source files keyed by file_path (optional)
//
// manifest "paths" may rename any of the files above; missing keys fall back
// to the default names. When statements.jsonl is absent but a sources
// directory is present, statements are extracted in-process.
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flkit {

enum class KindCategory { Expression, Node, Statement };

/// Catalog of statement kinds. Loaded from a data file so non-Java front ends
/// can remap kinds without recompiling.
class StatementCatalog {
 public:
  struct Kind {
    std::string name;
    KindCategory category;
  };

  /// Parses "<category> <Name>" lines; '#' starts a comment.
  static StatementCatalog parse(std::string_view text);
  static StatementCatalog load(const std::filesystem::path& path);
  /// The bundled Java catalog (32 expression, 3 node, 22 statement kinds).
  static const StatementCatalog& builtin();

  bool contains(std::string_view name) const;
  std::optional<KindCategory> category_of(std::string_view name) const;
  const std::vector<Kind>& kinds() const noexcept { return kinds_; }
  std::size_t count(KindCategory category) const;

 private:
  std::vector<Kind> kinds_;
  std::map<std::string, KindCategory, std::less<>> by_name_;
};

struct StatementRecord {
  std::string statement_id;
  std::string file_path;
  std::string kind;
  int start_line = 1;
  int end_line = 1;
  std::string raw_text;
  /// Index terms. Used verbatim when non-empty; otherwise derived from raw_text.
  std::vector<std::string> tokens;

  bool operator==(const StatementRecord&) const = default;
};

struct BugReport {
  std::string report_id;
  std::string summary;
  std::string description;

  bool operator==(const BugReport&) const = default;
};

enum class TestOutcome { Pass, Fail };

struct CoverageRecord {
  std::string test_id;
  TestOutcome outcome = TestOutcome::Pass;
  std::set<std::string> covered;

  bool operator==(const CoverageRecord&) const = default;
};

struct GroundTruth {
  std::set<std::string> buggy_statements;

  bool operator==(const GroundTruth&) const = default;
};

struct DefectBundle {
  std::string defect_id;
  std::string project;
  std::vector<StatementRecord> statements;
  BugReport bug_report;
  std::vector<CoverageRecord> coverage;
  std::optional<GroundTruth> ground_truth;
  std::map<std::string, std::string> file_texts;

  bool operator==(const DefectBundle& other) const;

  /// Record with this id, or nullptr.
  const StatementRecord* find_statement(std::string_view statement_id) const;

  /// Distinct file paths, in first-appearance order over statements then file_texts.
  std::vector<std::string> file_paths() const;

  /// Rebuilds the id lookup; call after mutating `statements`.
  void reindex();

 private:
  std::unordered_map<std::string, std::size_t> statement_index_;
};

/// Loads and cross-validates a bundle directory.
/// Throws Error with MissingFile, ParseError (with line number),
/// DanglingReference, or DuplicateStatementId.
DefectBundle load_defect_bundle(const std::filesystem::path& dir,
                                const StatementCatalog& catalog = StatementCatalog::builtin());

/// Checks the invariants load_defect_bundle enforces, for in-memory bundles.
void check_bundle_references(const DefectBundle& bundle,
                             const StatementCatalog& catalog = StatementCatalog::builtin());

/// Writes the bundle in the directory layout above. Sources are written
/// under sources/ when file_texts is non-empty.
void save_defect_bundle(const DefectBundle& bundle, const std::filesystem::path& dir);

// Line-oriented record codecs, shared with the CLI and the Python module.
std::string statement_to_jsonl(const StatementRecord& s);
StatementRecord statement_from_json_line(std::string_view line);
std::string coverage_to_jsonl(const CoverageRecord& c);
CoverageRecord coverage_from_json_line(std::string_view line);

enum class Technique { Sbfl, Irfl, Sbir };

struct ValidationReport {
  Technique mode = Technique::Sbfl;
  bool runnable = true;
  std::vector<std::string> reasons;
};

ValidationReport validate_bundle(const DefectBundle& bundle, Technique mode);

}  // namespace flkit
