// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace flkit {

struct RankedEntry {
  std::string item_id;
  double score = 0.0;
  std::size_t rank = 0;

  bool operator==(const RankedEntry&) const = default;
};

/// Ordered, duplicate-free list of (item, score, rank) with ranks 1..size().
///
/// Scores are carried but not required to be monotone: block-wise rankers
/// emit per-block scores in block order.
class RankedList {
 public:
  RankedList() = default;

  /// Appends with rank = size() + 1. Throws Error(ParseError) on a duplicate id.
  void push_back(std::string item_id, double score);

  /// Builds from (id, score) pairs already in final order.
  static RankedList from_ordered(const std::vector<std::pair<std::string, double>>& items);

  const std::vector<RankedEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const RankedEntry& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// First `k` entries (or all when k >= size()).
  RankedList truncated(std::size_t k) const;

  /// 1-based rank of `item_id`, or nullopt when absent.
  std::optional<std::size_t> rank_of(std::string_view item_id) const;

  bool contains(std::string_view item_id) const { return rank_of(item_id).has_value(); }

  std::vector<std::string> item_ids() const;

  bool operator==(const RankedList& other) const { return entries_ == other.entries_; }

 private:
  std::vector<RankedEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

nlohmann::ordered_json to_json(const RankedList& list);
RankedList ranked_list_from_json(const nlohmann::json& j);

/// Serialized form: JSON array of {item_id, score, rank} with a trailing newline.
std::string dump_ranked_list(const RankedList& list);
RankedList read_ranked_list(const std::filesystem::path& path);

}  // namespace flkit
