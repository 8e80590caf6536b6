// SPDX-License-Identifier: Apache-2.0
//
// Distances between top-k lists. Only the first k items of each list count;
// an item missing from a list takes rank k + 1 there.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "flkit/ranked_list.hpp"

namespace flkit {

enum class Distance { Spearman, Kendall };

std::string_view distance_name(Distance d) noexcept;
/// "spearman" or "kendall" (case-insensitive). Throws Error(InvalidConfig).
Distance parse_distance(std::string_view name);

/// Sum over the union of both top-k sets of |rank_a - rank_b|.
double spearman_footrule(std::span<const std::string> a, std::span<const std::string> b, std::size_t k);
double spearman_footrule(const RankedList& a, const RankedList& b, std::size_t k);

/// Discordant pairs over the union of both top-k sets. A pair tied in either
/// list (both absent there) is not discordant.
double kendall_distance(std::span<const std::string> a, std::span<const std::string> b, std::size_t k);
double kendall_distance(const RankedList& a, const RankedList& b, std::size_t k);

double list_distance(Distance d, std::span<const std::string> a, std::span<const std::string> b,
                     std::size_t k);

}  // namespace flkit
