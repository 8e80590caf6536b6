// SPDX-License-Identifier: Apache-2.0
//
// Fielded inverted index and Okapi BM25 scoring.
//
//   score(q, d) = sum over mapped (query field qf, doc field df), weighted,
//                 sum over terms t of q[qf] (repeats included)
//                   idf_df(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avglen))
//   idf_df(t)   = ln(N / df_df(t))
//
// N counts every document in the index; df, len and avglen are per field.
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "flkit/ranked_list.hpp"

namespace flkit {

struct FieldedDocument {
  std::string doc_id;
  std::map<std::string, std::vector<std::string>> fields;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  /// Throws Error(InvalidConfig) unless k1 > 0 and 0 <= b <= 1.
  void validate() const;
};

/// Which (query field, doc field) pairs contribute, and with what weight.
/// An empty map means every query field against every doc field, weight 1.
struct FieldMap {
  struct Pair {
    std::string query_field;
    std::string doc_field;
    double weight = 1.0;
  };
  std::vector<Pair> pairs;
};

class Index {
 public:
  using TermCounts = std::unordered_map<std::string, std::size_t>;

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
  bool has_doc(const std::string& doc_id) const { return doc_slot_.contains(doc_id); }

  /// Field names present in any document, sorted.
  std::vector<std::string> field_names() const;

  std::size_t df(const std::string& field, const std::string& term) const;
  double idf(const std::string& field, const std::string& term) const;
  std::size_t tf(const std::string& doc_id, const std::string& field, const std::string& term) const;
  std::size_t field_length(const std::string& doc_id, const std::string& field) const;
  double average_field_length(const std::string& field) const;

  /// doc_id -> tf for a term, ordered by doc_id.
  std::map<std::string, std::size_t> postings(const std::string& field, const std::string& term) const;

  nlohmann::ordered_json to_json() const;
  static Index from_json(const nlohmann::json& j);

  bool operator==(const Index& other) const;

 private:
  friend Index build_index(const std::vector<FieldedDocument>& docs);
  friend double bm25_score(const Index&, const FieldedDocument&, const std::string&,
                           const Bm25Params&, const FieldMap&);

  struct FieldStats {
    std::unordered_map<std::string, std::size_t> df;
    std::size_t total_length = 0;
  };
  struct DocEntry {
    std::map<std::string, TermCounts> tf;  // field -> term -> count
    std::map<std::string, std::size_t> length;
  };

  void add(const FieldedDocument& doc);

  std::vector<std::string> doc_ids_;  // sorted
  std::unordered_map<std::string, std::size_t> doc_slot_;
  std::vector<DocEntry> docs_;
  std::map<std::string, FieldStats> fields_;
};

/// Throws Error(DuplicateDocId). The result does not depend on input order.
Index build_index(const std::vector<FieldedDocument>& docs);

/// Throws Error(UnknownDoc) when doc_id is not indexed.
double bm25_score(const Index& index, const FieldedDocument& query, const std::string& doc_id,
                  const Bm25Params& params = {}, const FieldMap& field_map = {});

/// Documents with score > 0, by score descending then doc_id ascending.
/// Throws Error(EmptyIndex).
RankedList rank_documents(const Index& index, const FieldedDocument& query,
                          const Bm25Params& params = {}, const FieldMap& field_map = {});

void save_index(const Index& index, const std::filesystem::path& path);
Index load_index(const std::filesystem::path& path);

}  // namespace flkit
