// SPDX-License-Identifier: Apache-2.0
#include "flkit/distance.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <unordered_map>
#include <vector>

#include "flkit/error.hpp"

namespace flkit {
namespace {

struct RankPair {
  std::size_t in_a;
  std::size_t in_b;
};

std::vector<RankPair> union_ranks(std::span<const std::string> a, std::span<const std::string> b,
                                  std::size_t k) {
  const std::size_t absent = k + 1;
  std::unordered_map<std::string_view, std::size_t> slot;
  std::vector<RankPair> ranks;
  const std::size_t ka = std::min(k, a.size());
  const std::size_t kb = std::min(k, b.size());
  for (std::size_t i = 0; i < ka; ++i) {
    if (slot.try_emplace(a[i], ranks.size()).second) ranks.push_back({i + 1, absent});
  }
  for (std::size_t i = 0; i < kb; ++i) {
    const auto [it, inserted] = slot.try_emplace(b[i], ranks.size());
    if (inserted) {
      ranks.push_back({absent, i + 1});
    } else {
      ranks[it->second].in_b = i + 1;
    }
  }
  return ranks;
}

}  // namespace

std::string_view distance_name(Distance d) noexcept {
  return d == Distance::Spearman ? "spearman" : "kendall";
}

Distance parse_distance(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "spearman") return Distance::Spearman;
  if (lower == "kendall") return Distance::Kendall;
  throw Error(Errc::InvalidConfig, "unknown distance '" + std::string(name) + "'");
}

double spearman_footrule(std::span<const std::string> a, std::span<const std::string> b, std::size_t k) {
  double sum = 0.0;
  for (const auto& r : union_ranks(a, b, k)) {
    sum += static_cast<double>(r.in_a > r.in_b ? r.in_a - r.in_b : r.in_b - r.in_a);
  }
  return sum;
}

double kendall_distance(std::span<const std::string> a, std::span<const std::string> b, std::size_t k) {
  const auto ranks = union_ranks(a, b, k);
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    for (std::size_t j = i + 1; j < ranks.size(); ++j) {
      const auto da = static_cast<long>(ranks[i].in_a) - static_cast<long>(ranks[j].in_a);
      const auto db = static_cast<long>(ranks[i].in_b) - static_cast<long>(ranks[j].in_b);
      if ((da < 0 && db > 0) || (da > 0 && db < 0)) ++discordant;
    }
  }
  return static_cast<double>(discordant);
}

double spearman_footrule(const RankedList& a, const RankedList& b, std::size_t k) {
  const auto ia = a.item_ids();
  const auto ib = b.item_ids();
  return spearman_footrule(ia, ib, k);
}

double kendall_distance(const RankedList& a, const RankedList& b, std::size_t k) {
  const auto ia = a.item_ids();
  const auto ib = b.item_ids();
  return kendall_distance(ia, ib, k);
}

double list_distance(Distance d, std::span<const std::string> a, std::span<const std::string> b,
                     std::size_t k) {
  return d == Distance::Spearman ? spearman_footrule(a, b, k) : kendall_distance(a, b, k);
}

}  // namespace flkit
