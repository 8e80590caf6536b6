// SPDX-License-Identifier: Apache-2.0
#include "flkit/blues.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "flkit/error.hpp"
#include "flkit/extract.hpp"

namespace flkit {
namespace {

const Tokenizer& tokenizer_of(const BluesOptions& options) {
  static const Tokenizer fallback;
  return options.tokenizer != nullptr ? *options.tokenizer : fallback;
}

std::string joined(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    out += w;
    out += ' ';
  }
  return out;
}

}  // namespace

std::string RankerConfig::name() const {
  return "m=" + (m ? std::to_string(*m) : std::string("all")) + "/" +
         (score_fn == ScoreFn::High ? "high" : "wt");
}

void RankerConfig::validate() const {
  if (f == 0) throw Error(Errc::InvalidConfig, "ranker f must be >= 1");
  if (m && *m == 0) throw Error(Errc::InvalidConfig, "ranker m must be >= 1 or all");
}

std::vector<RankerConfig> ensemble_configs(std::size_t f) {
  return {
      {f, 1, ScoreFn::High},   {f, 25, ScoreFn::High},          {f, 50, ScoreFn::High},
      {f, 100, ScoreFn::High}, {f, std::nullopt, ScoreFn::High}, {f, std::nullopt, ScoreFn::Wt},
  };
}

FieldedDocument bug_report_query(const BugReport& report, const Tokenizer& tokenizer) {
  FieldedDocument q;
  q.doc_id = report.report_id;
  q.fields["summary"] = tokenizer.tokenize(report.summary, true);
  q.fields["description"] = tokenizer.tokenize(report.description, true);
  return q;
}

std::vector<FieldedDocument> file_documents(const DefectBundle& bundle, const Tokenizer& tokenizer) {
  std::unordered_map<std::string, std::vector<const StatementRecord*>> by_file;
  for (const auto& s : bundle.statements) by_file[s.file_path].push_back(&s);

  std::vector<FieldedDocument> docs;
  for (const auto& path : bundle.file_paths()) {
    FieldedDocument doc;
    doc.doc_id = path;
    if (const auto text = bundle.file_texts.find(path); text != bundle.file_texts.end()) {
      const auto fields = extract_file(path, text->second, tokenizer).fields;
      doc.fields["class_names"] = tokenizer.tokenize(joined(fields.class_names), true);
      doc.fields["method_names"] = tokenizer.tokenize(joined(fields.method_names), true);
      doc.fields["variable_names"] = tokenizer.tokenize(joined(fields.variable_names), true);
      doc.fields["comments"] = tokenizer.tokenize(joined(fields.comments), false);
    } else {
      // Without source text, the file is the bag of its statements' terms.
      auto& terms = doc.fields["variable_names"];
      for (const auto* s : by_file[path]) {
        const auto doc_terms = statement_document(*s, tokenizer).fields.at("stmt_terms");
        terms.insert(terms.end(), doc_terms.begin(), doc_terms.end());
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

FieldedDocument statement_document(const StatementRecord& statement, const Tokenizer& tokenizer) {
  FieldedDocument doc;
  doc.doc_id = statement.statement_id;
  doc.fields["stmt_terms"] =
      statement.tokens.empty() ? tokenizer.tokenize(statement.raw_text, true) : statement.tokens;
  return doc;
}

RankedList rank_files(const DefectBundle& bundle, const BluesOptions& options) {
  const auto& report = bundle.bug_report;
  const auto blank = [](const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; };
  if (blank(report.summary) && blank(report.description)) {
    throw Error(Errc::NotRunnable, bundle.defect_id + ": empty bug report");
  }
  const auto& tok = tokenizer_of(options);
  const auto docs = file_documents(bundle, tok);
  if (docs.empty()) throw Error(Errc::NotRunnable, bundle.defect_id + ": no source files");
  const Index index = build_index(docs);
  return rank_documents(index, bug_report_query(report, tok), options.bm25, options.file_fields);
}

RankedList rank_statements_in_file(const std::string& file, const DefectBundle& bundle,
                                   const BluesOptions& options) {
  const auto& tok = tokenizer_of(options);
  std::vector<FieldedDocument> docs;
  for (const auto& s : bundle.statements) {
    if (s.file_path == file) docs.push_back(statement_document(s, tok));
  }
  if (docs.empty()) throw Error(Errc::NoStatements, file);
  const Index index = build_index(docs);
  return rank_documents(index, bug_report_query(bundle.bug_report, tok), options.bm25,
                        options.statement_fields);
}

RankedList apply_ranker_config(const RankedList& files,
                               const std::map<std::string, RankedList>& per_file_statements,
                               const RankerConfig& config) {
  config.validate();
  const std::size_t top = std::min(config.f, files.size());

  struct Candidate {
    std::string id;
    double score;
  };
  std::vector<Candidate> picked;
  for (std::size_t fi = 0; fi < top; ++fi) {
    const auto it = per_file_statements.find(files[fi].item_id);
    if (it == per_file_statements.end()) continue;
    const RankedList& stmts = it->second;
    const std::size_t take = config.m ? std::min(*config.m, stmts.size()) : stmts.size();
    for (std::size_t si = 0; si < take; ++si) {
      const double score = config.score_fn == ScoreFn::Wt ? files[fi].score * stmts[si].score : stmts[si].score;
      picked.push_back({stmts[si].item_id, score});
    }
  }
  if (config.score_fn == ScoreFn::Wt) {
    // `picked` is already in (file rank, statement order); stable sort keeps that for ties.
    std::stable_sort(picked.begin(), picked.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  }
  RankedList out;
  for (auto& c : picked) {
    if (!out.contains(c.id)) out.push_back(std::move(c.id), c.score);
  }
  return out;
}

RankedList merge_best_rank(std::span<const RankedList> lists) {
  struct Best {
    std::size_t key;
    std::size_t list;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Best> best;
  for (std::size_t li = 0; li < lists.size(); ++li) {
    for (const auto& e : lists[li]) {
      const auto [it, inserted] = best.try_emplace(e.item_id, Best{e.rank, li});
      if (inserted) {
        order.push_back(e.item_id);
      } else if (e.rank < it->second.key) {
        it->second = {e.rank, li};
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    const Best& x = best.at(a);
    const Best& y = best.at(b);
    if (x.key != y.key) return x.key < y.key;
    return x.list < y.list;
  });
  RankedList out;
  for (const auto& id : order) out.push_back(id, 1.0 / static_cast<double>(best.at(id).key));
  return out;
}

BluesRun run_blues(const DefectBundle& bundle, const BluesOptions& options) {
  if (const auto report = validate_bundle(bundle, Technique::Irfl); !report.runnable) {
    throw Error(Errc::NotRunnable, bundle.defect_id + ": " + report.reasons.front());
  }
  BluesRun run;
  run.files = rank_files(bundle, options);
  run.configs = ensemble_configs(options.f);

  const std::size_t top = std::min(options.f, run.files.size());
  for (std::size_t i = 0; i < top; ++i) {
    const std::string& file = run.files[i].item_id;
    const bool has_statements = std::any_of(bundle.statements.begin(), bundle.statements.end(),
                                            [&](const auto& s) { return s.file_path == file; });
    if (has_statements) run.per_file_statements.emplace(file, rank_statements_in_file(file, bundle, options));
  }
  for (const auto& cfg : run.configs) {
    run.config_lists.push_back(apply_ranker_config(run.files, run.per_file_statements, cfg));
  }
  run.ensemble = merge_best_rank(run.config_lists);
  return run;
}

RankedList blues_ensemble(const DefectBundle& bundle, const BluesOptions& options) {
  return run_blues(bundle, options).ensemble;
}

}  // namespace flkit
