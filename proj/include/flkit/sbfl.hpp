// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <string>

#include "flkit/corpus.hpp"
#include "flkit/ranked_list.hpp"

namespace flkit {

/// Spectrum of one statement: failing/passing tests that do (e) or do not (n) execute it.
struct Counters {
  long e_f = 0;
  long n_f = 0;
  long e_p = 0;
  long n_p = 0;

  bool operator==(const Counters&) const = default;
};

using SpectrumCounters = std::map<std::string, Counters>;

/// Throws Error(NoTests) when `coverage` is empty.
SpectrumCounters compute_counters(std::span<const CoverageRecord> coverage,
                                  std::span<const StatementRecord> statements);

/// e_f / sqrt((e_f + n_f) * (e_f + e_p)); 0 when e_f == 0.
double ochiai_score(const Counters& c);

/// Statements with positive Ochiai score, best first. Equal scores keep
/// source order: file_path, start_line, then the id's trailing ordinal
/// (ids without one go last, in bundle order).
/// Throws Error(NotRunnable) when the bundle has no failing test.
RankedList rank_sbfl(const DefectBundle& bundle);

}  // namespace flkit
