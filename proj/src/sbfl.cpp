// SPDX-License-Identifier: Apache-2.0
#include "flkit/sbfl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "flkit/error.hpp"

namespace flkit {
namespace {

// Trailing ":<n>" of a statement id, or nullopt when the id has another shape.
std::optional<long> ordinal_of(const std::string& id) {
  const auto colon = id.rfind(':');
  if (colon == std::string::npos || colon + 1 == id.size()) return std::nullopt;
  long value = 0;
  const char* first = id.data() + colon + 1;
  const char* last = id.data() + id.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

SpectrumCounters compute_counters(std::span<const CoverageRecord> coverage,
                                  std::span<const StatementRecord> statements) {
  if (coverage.empty()) throw Error(Errc::NoTests, "no coverage records");
  long failing = 0;
  long passing = 0;
  SpectrumCounters counters;
  for (const auto& s : statements) counters.emplace(s.statement_id, Counters{});
  for (const auto& test : coverage) {
    const bool failed = test.outcome == TestOutcome::Fail;
    (failed ? failing : passing) += 1;
    for (const auto& id : test.covered) {
      const auto it = counters.find(id);
      if (it == counters.end()) throw Error(Errc::DanglingReference, id);
      (failed ? it->second.e_f : it->second.e_p) += 1;
    }
  }
  for (auto& [id, c] : counters) {
    c.n_f = failing - c.e_f;
    c.n_p = passing - c.e_p;
  }
  return counters;
}

double ochiai_score(const Counters& c) {
  if (c.e_f <= 0) return 0.0;
  const double denom = std::sqrt(static_cast<double>(c.e_f + c.n_f) * static_cast<double>(c.e_f + c.e_p));
  if (denom == 0.0) return 0.0;
  return static_cast<double>(c.e_f) / denom;
}

RankedList rank_sbfl(const DefectBundle& bundle) {
  if (const auto report = validate_bundle(bundle, Technique::Sbfl); !report.runnable) {
    throw Error(Errc::NotRunnable, bundle.defect_id + ": " + report.reasons.front());
  }
  const auto counters = compute_counters(bundle.coverage, bundle.statements);

  std::vector<std::size_t> order(bundle.statements.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> score(bundle.statements.size());
  std::vector<long> ordinal(bundle.statements.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    score[i] = ochiai_score(counters.at(bundle.statements[i].statement_id));
    ordinal[i] = ordinal_of(bundle.statements[i].statement_id).value_or(std::numeric_limits<long>::max());
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    const auto& sa = bundle.statements[a];
    const auto& sb = bundle.statements[b];
    if (sa.file_path != sb.file_path) return sa.file_path < sb.file_path;
    if (sa.start_line != sb.start_line) return sa.start_line < sb.start_line;
    return ordinal[a] < ordinal[b];
  });

  RankedList out;
  for (const std::size_t i : order) {
    if (score[i] <= 0.0) break;
    out.push_back(bundle.statements[i].statement_id, score[i]);
  }
  return out;
}

}  // namespace flkit
