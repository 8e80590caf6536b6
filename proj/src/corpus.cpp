// SPDX-License-Identifier: Apache-2.0
#include "flkit/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "embedded_data.hpp"
#include "flkit/error.hpp"
#include "flkit/extract.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace flkit {

// ---------------------------------------------------------------------------
// StatementCatalog

StatementCatalog StatementCatalog::parse(std::string_view text) {
  StatementCatalog catalog;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string category, name;
    if (!(fields >> category)) continue;
    if (!(fields >> name)) {
      throw Error(Errc::ParseError, "statement catalog line " + std::to_string(line_no));
    }
    KindCategory cat;
    if (category == "expression") {
      cat = KindCategory::Expression;
    } else if (category == "node") {
      cat = KindCategory::Node;
    } else if (category == "statement") {
      cat = KindCategory::Statement;
    } else {
      throw Error(Errc::ParseError, "statement catalog line " + std::to_string(line_no) +
                                        ": unknown category '" + category + "'");
    }
    if (catalog.by_name_.emplace(name, cat).second) catalog.kinds_.push_back({name, cat});
  }
  return catalog;
}

StatementCatalog StatementCatalog::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const StatementCatalog& StatementCatalog::builtin() {
  static const StatementCatalog catalog = parse(embedded::statement_kinds());
  return catalog;
}

bool StatementCatalog::contains(std::string_view name) const {
  return by_name_.find(name) != by_name_.end();
}

std::optional<KindCategory> StatementCatalog::category_of(std::string_view name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t StatementCatalog::count(KindCategory category) const {
  return static_cast<std::size_t>(std::count_if(
      kinds_.begin(), kinds_.end(), [&](const Kind& k) { return k.category == category; }));
}

// ---------------------------------------------------------------------------
// DefectBundle

bool DefectBundle::operator==(const DefectBundle& other) const {
  return defect_id == other.defect_id && project == other.project &&
         statements == other.statements && bug_report == other.bug_report &&
         coverage == other.coverage && ground_truth == other.ground_truth &&
         file_texts == other.file_texts;
}

const StatementRecord* DefectBundle::find_statement(std::string_view statement_id) const {
  if (statement_index_.size() == statements.size()) {
    const auto it = statement_index_.find(std::string(statement_id));
    return it == statement_index_.end() ? nullptr : &statements[it->second];
  }
  for (const auto& s : statements) {
    if (s.statement_id == statement_id) return &s;
  }
  return nullptr;
}

std::vector<std::string> DefectBundle::file_paths() const {
  std::vector<std::string> paths;
  std::unordered_set<std::string> seen;
  for (const auto& s : statements) {
    if (seen.insert(s.file_path).second) paths.push_back(s.file_path);
  }
  for (const auto& [path, text] : file_texts) {
    if (seen.insert(path).second) paths.push_back(path);
  }
  return paths;
}

void DefectBundle::reindex() {
  statement_index_.clear();
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (!statement_index_.emplace(statements[i].statement_id, i).second) {
      throw Error(Errc::DuplicateStatementId, statements[i].statement_id);
    }
  }
}

// ---------------------------------------------------------------------------
// Record codecs

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw Error(Errc::ParseError, where + ": " + ex.what());
  }
}

template <typename Fn>
auto with_context(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, where + ": " + ex.what());
  }
}

StatementRecord statement_from_json(const json& j) {
  StatementRecord s;
  s.statement_id = j.at("statement_id").get<std::string>();
  s.file_path = j.at("file_path").get<std::string>();
  s.kind = j.at("kind").get<std::string>();
  s.start_line = j.at("start_line").get<int>();
  s.end_line = j.at("end_line").get<int>();
  s.raw_text = j.value("raw_text", std::string());
  if (j.contains("tokens")) s.tokens = j.at("tokens").get<std::vector<std::string>>();
  return s;
}

CoverageRecord coverage_from_json(const json& j) {
  CoverageRecord c;
  c.test_id = j.at("test_id").get<std::string>();
  const auto outcome = j.at("outcome").get<std::string>();
  if (outcome == "pass") {
    c.outcome = TestOutcome::Pass;
  } else if (outcome == "fail") {
    c.outcome = TestOutcome::Fail;
  } else {
    throw Error(Errc::ParseError, "outcome must be \"pass\" or \"fail\", got \"" + outcome + "\"");
  }
  for (const auto& id : j.at("covered")) c.covered.insert(id.get<std::string>());
  return c;
}

template <typename T, typename Decode>
std::vector<T> read_jsonl(const fs::path& path, Decode&& decode) {
  const std::string text = read_file(path);
  std::vector<T> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + " line " + std::to_string(line_no);
    const json j = parse_json(line, where);
    try {
      out.push_back(with_context(where, [&] { return decode(j); }));
    } catch (const Error& ex) {
      if (ex.code() != Errc::ParseError) throw;
      const std::string msg = ex.what();
      if (msg.find(where) != std::string::npos) throw;
      throw Error(Errc::ParseError, where + ": " + msg);
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

struct BundlePaths {
  fs::path statements = "statements.jsonl";
  fs::path bug_report = "bug_report.json";
  fs::path coverage = "coverage.jsonl";
  fs::path ground_truth = "ground_truth.json";
  fs::path sources = "sources";
};

}  // namespace

std::string statement_to_jsonl(const StatementRecord& s) {
  ordered_json j;
  j["statement_id"] = s.statement_id;
  j["file_path"] = s.file_path;
  j["kind"] = s.kind;
  j["start_line"] = s.start_line;
  j["end_line"] = s.end_line;
  j["raw_text"] = s.raw_text;
  j["tokens"] = s.tokens;
  return j.dump();
}

StatementRecord statement_from_json_line(std::string_view line) {
  const json j = parse_json(line, "statement record");
  return with_context("statement record", [&] { return statement_from_json(j); });
}

std::string coverage_to_jsonl(const CoverageRecord& c) {
  ordered_json j;
  j["test_id"] = c.test_id;
  j["outcome"] = c.outcome == TestOutcome::Fail ? "fail" : "pass";
  j["covered"] = c.covered;
  return j.dump();
}

CoverageRecord coverage_from_json_line(std::string_view line) {
  const json j = parse_json(line, "coverage record");
  return with_context("coverage record", [&] { return coverage_from_json(j); });
}

// ---------------------------------------------------------------------------
// Load / save

void check_bundle_references(const DefectBundle& bundle, const StatementCatalog& catalog) {
  std::unordered_set<std::string> ids;
  for (const auto& s : bundle.statements) {
    if (!ids.insert(s.statement_id).second) throw Error(Errc::DuplicateStatementId, s.statement_id);
    if (!catalog.contains(s.kind)) {
      throw Error(Errc::ParseError, s.statement_id + ": kind '" + s.kind + "' not in catalog");
    }
    if (s.start_line < 1 || s.start_line > s.end_line) {
      throw Error(Errc::ParseError, s.statement_id + ": invalid line span");
    }
  }
  for (const auto& c : bundle.coverage) {
    for (const auto& id : c.covered) {
      if (!ids.contains(id)) throw Error(Errc::DanglingReference, id);
    }
  }
  if (bundle.ground_truth) {
    if (bundle.ground_truth->buggy_statements.empty()) {
      throw Error(Errc::ParseError, "ground truth must name at least one statement");
    }
    for (const auto& id : bundle.ground_truth->buggy_statements) {
      if (!ids.contains(id)) throw Error(Errc::DanglingReference, id);
    }
  }
}

DefectBundle load_defect_bundle(const fs::path& dir, const StatementCatalog& catalog) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw Error(Errc::MissingFile, manifest_path.string());
  const json manifest = parse_json(read_file(manifest_path), "manifest.json");

  DefectBundle bundle;
  BundlePaths paths;
  with_context("manifest.json", [&] {
    bundle.defect_id = manifest.at("defect_id").get<std::string>();
    bundle.project = manifest.value("project", std::string());
    if (manifest.contains("paths")) {
      const json& p = manifest.at("paths");
      const auto pick = [&](const char* key, fs::path& target) {
        if (p.contains(key)) target = p.at(key).get<std::string>();
      };
      pick("statements", paths.statements);
      pick("bug_report", paths.bug_report);
      pick("coverage", paths.coverage);
      pick("ground_truth", paths.ground_truth);
      pick("sources", paths.sources);
    }
    return 0;
  });

  if (const fs::path src = dir / paths.sources; fs::is_directory(src)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(src)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      bundle.file_texts.emplace(fs::relative(f, src).generic_string(), read_file(f));
    }
  }

  if (const fs::path stmts = dir / paths.statements; fs::exists(stmts)) {
    bundle.statements = read_jsonl<StatementRecord>(stmts, statement_from_json);
  } else if (!bundle.file_texts.empty()) {
    for (const auto& [path, text] : bundle.file_texts) {
      auto records = extract_statements(path, text);
      bundle.statements.insert(bundle.statements.end(), std::make_move_iterator(records.begin()),
                               std::make_move_iterator(records.end()));
    }
  } else {
    throw Error(Errc::MissingFile, stmts.string());
  }

  const json report = parse_json(read_file(dir / paths.bug_report), paths.bug_report.string());
  with_context(paths.bug_report.string(), [&] {
    bundle.bug_report.report_id = report.value("report_id", std::string());
    bundle.bug_report.summary = report.at("summary").get<std::string>();
    bundle.bug_report.description = report.value("description", std::string());
    return 0;
  });

  bundle.coverage = read_jsonl<CoverageRecord>(dir / paths.coverage, coverage_from_json);

  if (const fs::path gt = dir / paths.ground_truth; fs::exists(gt)) {
    const json j = parse_json(read_file(gt), paths.ground_truth.string());
    GroundTruth truth;
    with_context(paths.ground_truth.string(), [&] {
      for (const auto& id : j.at("buggy_statements")) truth.buggy_statements.insert(id.get<std::string>());
      return 0;
    });
    bundle.ground_truth = std::move(truth);
  }

  check_bundle_references(bundle, catalog);
  bundle.reindex();
  return bundle;
}

void save_defect_bundle(const DefectBundle& bundle, const fs::path& dir) {
  fs::create_directories(dir);

  ordered_json manifest;
  manifest["defect_id"] = bundle.defect_id;
  manifest["project"] = bundle.project;
  ordered_json paths;
  paths["statements"] = "statements.jsonl";
  paths["bug_report"] = "bug_report.json";
  paths["coverage"] = "coverage.jsonl";
  if (bundle.ground_truth) paths["ground_truth"] = "ground_truth.json";
  if (!bundle.file_texts.empty()) paths["sources"] = "sources";
  manifest["paths"] = paths;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  std::string lines;
  for (const auto& s : bundle.statements) lines += statement_to_jsonl(s) + "\n";
  write_file(dir / "statements.jsonl", lines);

  ordered_json report;
  report["report_id"] = bundle.bug_report.report_id;
  report["summary"] = bundle.bug_report.summary;
  report["description"] = bundle.bug_report.description;
  write_file(dir / "bug_report.json", report.dump(2) + "\n");

  lines.clear();
  for (const auto& c : bundle.coverage) lines += coverage_to_jsonl(c) + "\n";
  write_file(dir / "coverage.jsonl", lines);

  if (bundle.ground_truth) {
    ordered_json gt;
    gt["buggy_statements"] = bundle.ground_truth->buggy_statements;
    write_file(dir / "ground_truth.json", gt.dump(2) + "\n");
  }

  for (const auto& [path, text] : bundle.file_texts) {
    const fs::path target = dir / "sources" / fs::path(path);
    fs::create_directories(target.parent_path());
    write_file(target, text);
  }
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_bundle(const DefectBundle& bundle, Technique mode) {
  ValidationReport report;
  report.mode = mode;

  const bool needs_spectrum = mode == Technique::Sbfl || mode == Technique::Sbir;
  const bool needs_report = mode == Technique::Irfl || mode == Technique::Sbir;

  if (needs_spectrum) {
    const bool has_failing = std::any_of(bundle.coverage.begin(), bundle.coverage.end(),
                                         [](const auto& c) { return c.outcome == TestOutcome::Fail; });
    if (!has_failing) report.reasons.emplace_back("no failing test");
  }
  if (needs_report) {
    const auto blank = [](const std::string& s) {
      return s.find_first_not_of(" \t\r\n") == std::string::npos;
    };
    if (blank(bundle.bug_report.summary) && blank(bundle.bug_report.description)) {
      report.reasons.emplace_back("empty bug report");
    }
    if (bundle.statements.empty()) report.reasons.emplace_back("no statements");
  }
  report.runnable = report.reasons.empty();
  return report;
}

}  // namespace flkit
