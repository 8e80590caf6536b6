// SPDX-License-Identifier: Apache-2.0
#include "flkit/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flkit/error.hpp"

namespace flkit {

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw Error(Errc::InvalidConfig, "BM25 k1 must be > 0");
  if (!(b >= 0.0 && b <= 1.0)) throw Error(Errc::InvalidConfig, "BM25 b must be in [0, 1]");
}

void Index::add(const FieldedDocument& doc) {
  DocEntry entry;
  for (const auto& [field, tokens] : doc.fields) {
    if (field.empty()) throw Error(Errc::InvalidConfig, doc.doc_id + ": empty field name");
    auto& counts = entry.tf[field];
    for (const auto& t : tokens) ++counts[t];
    entry.length[field] = tokens.size();
    auto& stats = fields_[field];
    stats.total_length += tokens.size();
    for (const auto& [term, count] : counts) ++stats.df[term];
  }
  doc_slot_.emplace(doc.doc_id, doc_ids_.size());
  doc_ids_.push_back(doc.doc_id);
  docs_.push_back(std::move(entry));
}

Index build_index(const std::vector<FieldedDocument>& docs) {
  std::vector<const FieldedDocument*> order;
  order.reserve(docs.size());
  for (const auto& d : docs) order.push_back(&d);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->doc_id < b->doc_id; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->doc_id == order[i - 1]->doc_id) throw Error(Errc::DuplicateDocId, order[i]->doc_id);
  }
  Index index;
  for (const auto* d : order) index.add(*d);
  return index;
}

std::vector<std::string> Index::field_names() const {
  std::vector<std::string> names;
  for (const auto& [name, stats] : fields_) names.push_back(name);
  return names;
}

std::size_t Index::df(const std::string& field, const std::string& term) const {
  const auto f = fields_.find(field);
  if (f == fields_.end()) return 0;
  const auto t = f->second.df.find(term);
  return t == f->second.df.end() ? 0 : t->second;
}

double Index::idf(const std::string& field, const std::string& term) const {
  const std::size_t d = df(field, term);
  if (d == 0) return 0.0;
  return std::log(static_cast<double>(doc_count()) / static_cast<double>(d));
}

std::size_t Index::tf(const std::string& doc_id, const std::string& field, const std::string& term) const {
  const auto slot = doc_slot_.find(doc_id);
  if (slot == doc_slot_.end()) throw Error(Errc::UnknownDoc, doc_id);
  const auto& entry = docs_[slot->second];
  const auto f = entry.tf.find(field);
  if (f == entry.tf.end()) return 0;
  const auto t = f->second.find(term);
  return t == f->second.end() ? 0 : t->second;
}

std::size_t Index::field_length(const std::string& doc_id, const std::string& field) const {
  const auto slot = doc_slot_.find(doc_id);
  if (slot == doc_slot_.end()) throw Error(Errc::UnknownDoc, doc_id);
  const auto& lengths = docs_[slot->second].length;
  const auto f = lengths.find(field);
  return f == lengths.end() ? 0 : f->second;
}

double Index::average_field_length(const std::string& field) const {
  const auto f = fields_.find(field);
  if (f == fields_.end() || doc_count() == 0) return 0.0;
  return static_cast<double>(f->second.total_length) / static_cast<double>(doc_count());
}

std::map<std::string, std::size_t> Index::postings(const std::string& field,
                                                   const std::string& term) const {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto f = docs_[i].tf.find(field);
    if (f == docs_[i].tf.end()) continue;
    const auto t = f->second.find(term);
    if (t != f->second.end()) out.emplace(doc_ids_[i], t->second);
  }
  return out;
}

bool Index::operator==(const Index& other) const {
  if (doc_ids_ != other.doc_ids_ || fields_.size() != other.fields_.size()) return false;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (docs_[i].tf != other.docs_[i].tf || docs_[i].length != other.docs_[i].length) return false;
  }
  for (const auto& [name, stats] : fields_) {
    const auto it = other.fields_.find(name);
    if (it == other.fields_.end() || it->second.df != stats.df ||
        it->second.total_length != stats.total_length) {
      return false;
    }
  }
  return true;
}

// Dump layout: {"documents": [{"doc_id", "fields": {field: {"length", "terms": {term: tf}}}}]}.
// Collection statistics are recomputed on restore.
nlohmann::ordered_json Index::to_json() const {
  nlohmann::ordered_json docs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [field, counts] : docs_[i].tf) {
      std::map<std::string, std::size_t> sorted(counts.begin(), counts.end());
      nlohmann::ordered_json f;
      f["length"] = docs_[i].length.at(field);
      f["terms"] = sorted;
      fields[field] = std::move(f);
    }
    nlohmann::ordered_json d;
    d["doc_id"] = doc_ids_[i];
    d["fields"] = std::move(fields);
    docs.push_back(std::move(d));
  }
  nlohmann::ordered_json out;
  out["format"] = "flkit-index-1";
  out["documents"] = std::move(docs);
  return out;
}

Index Index::from_json(const nlohmann::json& j) {
  std::vector<FieldedDocument> docs;
  try {
    for (const auto& d : j.at("documents")) {
      FieldedDocument doc;
      doc.doc_id = d.at("doc_id").get<std::string>();
      for (const auto& [field, f] : d.at("fields").items()) {
        auto& tokens = doc.fields[field];
        std::size_t counted = 0;
        for (const auto& [term, count] : f.at("terms").items()) {
          const auto n = count.get<std::size_t>();
          tokens.insert(tokens.end(), n, term);
          counted += n;
        }
        if (counted != f.at("length").get<std::size_t>()) {
          throw Error(Errc::ParseError, doc.doc_id + ": field length mismatch in '" + field + "'");
        }
      }
      docs.push_back(std::move(doc));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, std::string("index dump: ") + ex.what());
  }
  return build_index(docs);
}

double bm25_score(const Index& index, const FieldedDocument& query, const std::string& doc_id,
                  const Bm25Params& params, const FieldMap& field_map) {
  const auto slot = index.doc_slot_.find(doc_id);
  if (slot == index.doc_slot_.end()) throw Error(Errc::UnknownDoc, doc_id);
  const auto& doc = index.docs_[slot->second];

  const auto score_pair = [&](const std::vector<std::string>& terms, const std::string& doc_field) {
    const auto tf_it = doc.tf.find(doc_field);
    if (tf_it == doc.tf.end()) return 0.0;
    const double len = static_cast<double>(doc.length.at(doc_field));
    const double avglen = index.average_field_length(doc_field);
    const double norm = params.k1 * (1.0 - params.b + params.b * len / avglen);
    double sum = 0.0;
    for (const auto& term : terms) {
      const auto t = tf_it->second.find(term);
      if (t == tf_it->second.end()) continue;
      const double tf = static_cast<double>(t->second);
      sum += index.idf(doc_field, term) * tf * (params.k1 + 1.0) / (tf + norm);
    }
    return sum;
  };

  double score = 0.0;
  if (field_map.pairs.empty()) {
    for (const auto& [qfield, terms] : query.fields) {
      for (const auto& [dfield, stats] : index.fields_) score += score_pair(terms, dfield);
    }
  } else {
    for (const auto& p : field_map.pairs) {
      const auto q = query.fields.find(p.query_field);
      if (q == query.fields.end()) continue;
      score += p.weight * score_pair(q->second, p.doc_field);
    }
  }
  return score;
}

RankedList rank_documents(const Index& index, const FieldedDocument& query, const Bm25Params& params,
                          const FieldMap& field_map) {
  if (index.doc_count() == 0) throw Error(Errc::EmptyIndex, "cannot rank against an empty index");
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& id : index.doc_ids()) {
    const double s = bm25_score(index, query, id, params, field_map);
    if (s > 0.0) scored.emplace_back(id, s);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return RankedList::from_ordered(scored);
}

void save_index(const Index& index, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << index.to_json().dump(1) << "\n";
}

Index load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Index::from_json(nlohmann::json::parse(buf.str()));
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(Errc::ParseError, path.string() + ": " + ex.what());
  }
}

}  // namespace flkit
