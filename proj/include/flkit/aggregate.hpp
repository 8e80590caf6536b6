// SPDX-License-Identifier: Apache-2.0
//
// Unsupervised rank aggregation: find the length-k list delta minimizing
//
//   f(delta) = sum_i w_i * d(delta, L_i)
//
// with a cross-entropy Monte Carlo search over an n x k column-stochastic
// matrix of placement probabilities (row j, column r: item j at position r),
// or exhaustively for small instances.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flkit/distance.hpp"
#include "flkit/ranked_list.hpp"

namespace flkit {

using CandidateList = std::vector<std::string>;
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw; identical on
/// every platform for a given generator state.
double unit_real(Rng& rng);

struct AggregationConfig {
  std::size_t k = 100;
  std::uint64_t seed = 1;
  Distance distance = Distance::Spearman;
  std::size_t max_iter = 1000;
  std::size_t conv_in = 7;
  std::optional<std::size_t> samples;  // N; default 10 * n * k
  std::optional<double> rho;           // default 0.01 when N >= 100, else 0.1
  double update_weight = 0.25;

  /// Throws Error(InvalidConfig).
  void validate() const;
  std::size_t sample_count(std::size_t n, std::size_t k_eff) const;
  double elite_quantile(std::size_t sample_count) const;
};

/// Throws Error(ArityMismatch) when |weights| != |lists|.
double aggregate_objective(std::span<const std::string> delta, std::span<const RankedList> lists,
                           std::span<const double> weights, Distance distance, std::size_t k);

/// Items of all lists in first-appearance order (lists in argument order).
std::vector<std::string> canonical_universe(std::span<const RankedList> lists);

class ProbabilityMatrix {
 public:
  ProbabilityMatrix() = default;
  ProbabilityMatrix(std::size_t rows, std::size_t cols, double fill);

  /// Every cell 1/n.
  static ProbabilityMatrix uniform(std::size_t n, std::size_t k);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }
  double& operator()(std::size_t row, std::size_t col) { return cells_[row * cols_ + col]; }
  double column_sum(std::size_t col) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> cells_;
};

/// Row indices, one per column: column r draws a row with probability
/// proportional to p(row, r) among rows not yet drawn. A column whose
/// remaining mass is zero falls back to uniform over the remaining rows.
std::vector<std::size_t> sample_candidate(const ProbabilityMatrix& p, Rng& rng);

/// One cross-entropy step. Samples are row-index lists of length p.cols().
/// The elite threshold is the ceil(rho * N)-th smallest score (1-based); every
/// sample scoring at or below it is elite. Each cell becomes
///   (1 - w) * p + w * (fraction of elites placing that row in that column).
ProbabilityMatrix update_probabilities(const ProbabilityMatrix& p,
                                       std::span<const std::vector<std::size_t>> samples,
                                       std::span<const double> scores, double rho, double w);

struct IterationState {
  std::size_t iteration = 0;  // 1-based
  const ProbabilityMatrix* matrix = nullptr;  // after this iteration's update
  double iteration_min = 0.0;
  double best_objective = 0.0;
};

struct AggregationResult {
  CandidateList items;  // global best-so-far
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t universe_size = 0;
  std::size_t k = 0;
  std::size_t samples = 0;
  double rho = 0.0;
  std::string stop_reason;  // "converged", "max_iter", "trivial"
  CandidateList final_iteration_best;
  double final_iteration_objective = 0.0;
};

using IterationObserver = std::function<void(const IterationState&)>;

/// Cross-entropy Monte Carlo aggregation. Empty lists are dropped first; if
/// none remain the result is empty. When all remaining lists agree on their
/// top-k the answer is that list (objective 0) without sampling.
/// Throws Error(EmptyInput) for no lists, Error(ArityMismatch) on weights.
AggregationResult ce_aggregate(std::span<const RankedList> lists, std::span<const double> weights,
                               const AggregationConfig& config, const IterationObserver& observer = {});

struct BruteForceResult {
  CandidateList items;
  double objective = 0.0;
};

/// Exact optimum over every k-permutation of the union (k shrunk to n).
/// Ties resolve to the lexicographically smallest id sequence.
/// Throws Error(TooLarge) when the permutation count exceeds `guard`.
BruteForceResult brute_force_aggregate(std::span<const RankedList> lists, std::span<const double> weights,
                                       std::size_t k, Distance distance, std::uint64_t guard = 10'000'000);

}  // namespace flkit
