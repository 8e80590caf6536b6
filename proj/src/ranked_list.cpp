// SPDX-License-Identifier: Apache-2.0
#include "flkit/ranked_list.hpp"

#include <fstream>
#include <sstream>
#include <algorithm>

#include "flkit/error.hpp"

namespace flkit {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MissingFile: return "MissingFile";
    case Errc::ParseError: return "ParseError";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::DuplicateDocId: return "DuplicateDocId";
    case Errc::DuplicateStatementId: return "DuplicateStatementId";
    case Errc::UnknownDoc: return "UnknownDoc";
    case Errc::EmptyIndex: return "EmptyIndex";
    case Errc::NoTests: return "NoTests";
    case Errc::NotRunnable: return "NotRunnable";
    case Errc::NoStatements: return "NoStatements";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoGroundTruth: return "NoGroundTruth";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

void RankedList::push_back(std::string item_id, double score) {
  const std::size_t rank = entries_.size() + 1;
  if (!index_.emplace(item_id, rank).second) {
    throw Error(Errc::ParseError, "duplicate item in ranked list: " + item_id);
  }
  entries_.push_back({std::move(item_id), score, rank});
}

RankedList RankedList::from_ordered(const std::vector<std::pair<std::string, double>>& items) {
  RankedList out;
  out.entries_.reserve(items.size());
  for (const auto& [id, score] : items) out.push_back(id, score);
  return out;
}

RankedList RankedList::truncated(std::size_t k) const {
  RankedList out;
  const std::size_t n = std::min(k, entries_.size());
  for (std::size_t i = 0; i < n; ++i) out.push_back(entries_[i].item_id, entries_[i].score);
  return out;
}

std::optional<std::size_t> RankedList::rank_of(std::string_view item_id) const {
  const auto it = index_.find(std::string(item_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> RankedList::item_ids() const {
  std::vector<std::string> ids;
  ids.reserve(entries_.size());
  for (const auto& e : entries_) ids.push_back(e.item_id);
  return ids;
}

nlohmann::ordered_json to_json(const RankedList& list) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : list) {
    nlohmann::ordered_json obj;
    obj["item_id"] = e.item_id;
    obj["score"] = e.score;
    obj["rank"] = e.rank;
    arr.push_back(std::move(obj));
  }
  return arr;
}

RankedList ranked_list_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "ranked list must be a JSON array");
  std::vector<std::pair<std::size_t, std::pair<std::string, double>>> rows;
  for (const auto& obj : j) {
    try {
      rows.push_back({obj.at("rank").get<std::size_t>(),
                      {obj.at("item_id").get<std::string>(), obj.at("score").get<double>()}});
    } catch (const nlohmann::json::exception& ex) {
      throw Error(Errc::ParseError, std::string("ranked list entry: ") + ex.what());
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::string, double>> items;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i + 1) {
      throw Error(Errc::ParseError, "ranked list ranks must be exactly 1..n");
    }
    items.push_back(std::move(rows[i].second));
  }
  return RankedList::from_ordered(items);
}

std::string dump_ranked_list(const RankedList& list) {
  const auto j = to_json(list);
  return (list.empty() ? std::string("[]") : j.dump(2)) + "\n";
}

RankedList read_ranked_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(Errc::ParseError, path.string() + ": " + ex.what());
  }
  return ranked_list_from_json(j);
}

}  // namespace flkit
