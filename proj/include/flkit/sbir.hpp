// SPDX-License-Identifier: Apache-2.0
//
// Fuses the SBFL and Blues-ensemble statement lists with cross-entropy rank
// aggregation (Spearman footrule, k = 100, equal weights by default).
#pragma once

#include <vector>

#include "flkit/aggregate.hpp"
#include "flkit/blues.hpp"
#include "flkit/corpus.hpp"
#include "flkit/ranked_list.hpp"

namespace flkit {

struct SbirOptions {
  BluesOptions blues;
  AggregationConfig aggregation;  // k also truncates both inputs
  double sbfl_weight = 1.0;
  double blues_weight = 1.0;
};

struct SbirRun {
  RankedList sbfl;   // truncated to k
  RankedList blues;  // truncated to k
  AggregationResult aggregation;
  RankedList ranked;  // scores are 1 / rank
};

/// Throws Error(NotRunnable) unless the bundle has a failing test and a report.
SbirRun run_sbir(const DefectBundle& bundle, const SbirOptions& options = {});

/// The fusion step alone, for callers that already hold both input lists.
SbirRun fuse_lists(const RankedList& sbfl, const RankedList& blues, const SbirOptions& options = {});

RankedList sbir_localize(const DefectBundle& bundle, const SbirOptions& options = {});

/// Items in order with score 1 / rank.
RankedList reciprocal_rank_list(const std::vector<std::string>& items);

}  // namespace flkit
