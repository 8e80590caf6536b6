// SPDX-License-Identifier: Apache-2.0
#include "flkit/sbir.hpp"

#include <array>

#include "flkit/error.hpp"
#include "flkit/sbfl.hpp"

namespace flkit {

RankedList reciprocal_rank_list(const std::vector<std::string>& items) {
  RankedList out;
  for (std::size_t i = 0; i < items.size(); ++i) out.push_back(items[i], 1.0 / static_cast<double>(i + 1));
  return out;
}

SbirRun run_sbir(const DefectBundle& bundle, const SbirOptions& options) {
  options.aggregation.validate();
  if (const auto report = validate_bundle(bundle, Technique::Sbir); !report.runnable) {
    throw Error(Errc::NotRunnable, bundle.defect_id + ": " + report.reasons.front());
  }
  return fuse_lists(rank_sbfl(bundle), blues_ensemble(bundle, options.blues), options);
}

SbirRun fuse_lists(const RankedList& sbfl, const RankedList& blues, const SbirOptions& options) {
  const std::size_t k = options.aggregation.k;
  SbirRun run;
  run.sbfl = sbfl.truncated(k);
  run.blues = blues.truncated(k);
  const std::array<RankedList, 2> lists{run.sbfl, run.blues};
  const std::array<double, 2> weights{options.sbfl_weight, options.blues_weight};
  run.aggregation = ce_aggregate(lists, weights, options.aggregation);
  run.ranked = reciprocal_rank_list(run.aggregation.items);
  return run;
}

RankedList sbir_localize(const DefectBundle& bundle, const SbirOptions& options) {
  return run_sbir(bundle, options).ranked;
}

}  // namespace flkit
