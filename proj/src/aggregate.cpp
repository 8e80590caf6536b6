// SPDX-License-Identifier: Apache-2.0
#include "flkit/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "flkit/error.hpp"

namespace flkit {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr int kRejectionTries = 16;

void check_arity(std::span<const RankedList> lists, std::span<const double> weights) {
  if (lists.size() != weights.size()) {
    throw Error(Errc::ArityMismatch, std::to_string(lists.size()) + " lists but " +
                                         std::to_string(weights.size()) + " weights");
  }
}

// Scores candidates given as row indices into a fixed universe. Not thread-safe:
// it owns scratch space reused across calls.
class Evaluator {
 public:
  Evaluator(const std::vector<std::string>& universe, std::span<const RankedList> lists,
            std::span<const double> weights, Distance distance, std::size_t k)
      : k_(k), distance_(distance), weights_(weights.begin(), weights.end()), pos_(universe.size(), 0) {
    std::unordered_map<std::string_view, std::size_t> row_of;
    for (std::size_t i = 0; i < universe.size(); ++i) row_of.emplace(universe[i], i);
    for (const auto& list : lists) {
      std::vector<std::size_t> rows;
      std::vector<std::size_t> rank(universe.size(), k + 1);
      const std::size_t top = std::min(k, list.size());
      for (std::size_t i = 0; i < top; ++i) {
        const std::size_t row = row_of.at(list[i].item_id);
        rows.push_back(row);
        rank[row] = i + 1;
      }
      list_rows_.push_back(std::move(rows));
      list_rank_.push_back(std::move(rank));
    }
  }

  double operator()(std::span<const std::size_t> candidate) {
    for (std::size_t r = 0; r < candidate.size(); ++r) pos_[candidate[r]] = r + 1;
    double total = 0.0;
    for (std::size_t li = 0; li < list_rows_.size(); ++li) {
      const double d = distance_ == Distance::Spearman ? footrule(candidate, li) : kendall(candidate, li);
      total += weights_[li] * d;
    }
    for (const std::size_t row : candidate) pos_[row] = 0;
    return total;
  }

 private:
  double footrule(std::span<const std::size_t> candidate, std::size_t li) const {
    const auto& rank = list_rank_[li];
    std::size_t sum = 0;
    for (std::size_t r = 0; r < candidate.size(); ++r) {
      const std::size_t a = r + 1;
      const std::size_t b = rank[candidate[r]];
      sum += a > b ? a - b : b - a;
    }
    const auto& rows = list_rows_[li];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (pos_[rows[i]] == 0) sum += k_ + 1 - (i + 1);
    }
    return static_cast<double>(sum);
  }

  double kendall(std::span<const std::size_t> candidate, std::size_t li) {
    const auto& rank = list_rank_[li];
    pairs_.clear();
    for (std::size_t r = 0; r < candidate.size(); ++r) pairs_.push_back({r + 1, rank[candidate[r]]});
    const auto& rows = list_rows_[li];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (pos_[rows[i]] == 0) pairs_.push_back({k_ + 1, i + 1});
    }
    std::size_t discordant = 0;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
        const bool a_lt = pairs_[i].first < pairs_[j].first;
        const bool a_gt = pairs_[i].first > pairs_[j].first;
        const bool b_lt = pairs_[i].second < pairs_[j].second;
        const bool b_gt = pairs_[i].second > pairs_[j].second;
        if ((a_lt && b_gt) || (a_gt && b_lt)) ++discordant;
      }
    }
    return static_cast<double>(discordant);
  }

  std::size_t k_;
  Distance distance_;
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> list_rows_;
  std::vector<std::vector<std::size_t>> list_rank_;
  std::vector<std::size_t> pos_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct Effective {
  std::vector<RankedList> lists;
  std::vector<double> weights;
};

Effective drop_empty(std::span<const RankedList> lists, std::span<const double> weights) {
  Effective out;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (lists[i].empty()) continue;
    out.lists.push_back(lists[i]);
    out.weights.push_back(weights[i]);
  }
  return out;
}

CandidateList top_ids(const RankedList& list, std::size_t k) {
  CandidateList ids;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) ids.push_back(list[i].item_id);
  return ids;
}

CandidateList to_ids(std::span<const std::size_t> rows, const std::vector<std::string>& universe) {
  CandidateList ids;
  ids.reserve(rows.size());
  for (const std::size_t r : rows) ids.push_back(universe[r]);
  return ids;
}

}  // namespace

double unit_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void AggregationConfig::validate() const {
  if (k == 0) throw Error(Errc::InvalidConfig, "k must be >= 1");
  if (max_iter == 0) throw Error(Errc::InvalidConfig, "max_iter must be >= 1");
  if (conv_in == 0) throw Error(Errc::InvalidConfig, "conv_in must be >= 1");
  if (samples && *samples == 0) throw Error(Errc::InvalidConfig, "samples must be >= 1");
  if (rho && !(*rho > 0.0 && *rho < 1.0)) throw Error(Errc::InvalidConfig, "rho must be in (0, 1)");
  if (!(update_weight > 0.0 && update_weight <= 1.0)) {
    throw Error(Errc::InvalidConfig, "update weight must be in (0, 1]");
  }
}

std::size_t AggregationConfig::sample_count(std::size_t n, std::size_t k_eff) const {
  return samples ? *samples : std::max<std::size_t>(1, 10 * n * k_eff);
}

double AggregationConfig::elite_quantile(std::size_t sample_count) const {
  if (rho) return *rho;
  return sample_count >= 100 ? 0.01 : 0.1;
}

double aggregate_objective(std::span<const std::string> delta, std::span<const RankedList> lists,
                           std::span<const double> weights, Distance distance, std::size_t k) {
  check_arity(lists, weights);
  double total = 0.0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const auto ids = lists[i].item_ids();
    total += weights[i] * list_distance(distance, delta, ids, k);
  }
  return total;
}

std::vector<std::string> canonical_universe(std::span<const RankedList> lists) {
  std::vector<std::string> universe;
  std::unordered_map<std::string_view, bool> seen;
  for (const auto& list : lists) {
    for (const auto& e : list) {
      if (seen.emplace(e.item_id, true).second) universe.push_back(e.item_id);
    }
  }
  return universe;
}

ProbabilityMatrix::ProbabilityMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

ProbabilityMatrix ProbabilityMatrix::uniform(std::size_t n, std::size_t k) {
  return ProbabilityMatrix(n, k, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
}

double ProbabilityMatrix::column_sum(std::size_t col) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) sum += (*this)(r, col);
  return sum;
}

namespace {

// Column-wise cumulative sums, reused for every sample of one iteration.
class ColumnSampler {
 public:
  explicit ColumnSampler(const ProbabilityMatrix& p) : p_(p), cum_(p.rows() * p.cols()), used_(p.rows(), 0) {
    for (std::size_t c = 0; c < p.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < p.rows(); ++r) {
        acc += p(r, c);
        cum_[c * p.rows() + r] = acc;
      }
    }
  }

  void draw(Rng& rng, std::size_t* out) {
    for (std::size_t c = 0; c < p_.cols(); ++c) {
      const std::size_t row = draw_column(rng, c);
      used_[row] = 1;
      out[c] = row;
    }
    for (std::size_t c = 0; c < p_.cols(); ++c) used_[out[c]] = 0;
  }

 private:
  std::size_t draw_column(Rng& rng, std::size_t c) {
    const std::size_t n = p_.rows();
    const double* cum = cum_.data() + c * n;
    const double total = cum[n - 1];
    if (total > 0.0) {
      for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
        const double x = unit_real(rng) * total;
        const std::size_t row = static_cast<std::size_t>(std::upper_bound(cum, cum + n, x) - cum);
        if (row < n && used_[row] == 0 && p_(row, c) > 0.0) return row;
      }
    }
    double remaining = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (used_[r] == 0) remaining += p_(r, c);
    }
    if (remaining > 0.0) {
      const double x = unit_real(rng) * remaining;
      double acc = 0.0;
      std::size_t last = n;
      for (std::size_t r = 0; r < n; ++r) {
        if (used_[r] != 0 || p_(r, c) <= 0.0) continue;
        acc += p_(r, c);
        last = r;
        if (x < acc) return r;
      }
      return last;
    }
    // Degenerate column: every unused row has zero mass.
    std::size_t free_rows = 0;
    for (std::size_t r = 0; r < n; ++r) free_rows += used_[r] == 0 ? 1 : 0;
    auto pick = static_cast<std::size_t>(unit_real(rng) * static_cast<double>(free_rows));
    for (std::size_t r = 0; r < n; ++r) {
      if (used_[r] != 0) continue;
      if (pick == 0) return r;
      --pick;
    }
    throw Error(Errc::InvalidConfig, "more columns than rows");
  }

  const ProbabilityMatrix& p_;
  std::vector<double> cum_;
  std::vector<unsigned char> used_;
};

double elite_threshold(std::span<const double> scores, double rho) {
  const std::size_t count = scores.size();
  auto q = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(count) - 1e-9));
  q = std::clamp<std::size_t>(q, 1, count);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q - 1), sorted.end());
  return sorted[q - 1];
}

ProbabilityMatrix update_flat(const ProbabilityMatrix& p, std::span<const std::size_t> flat,
                              std::span<const double> scores, double rho, double w) {
  const std::size_t k = p.cols();
  const double threshold = elite_threshold(scores, rho);
  ProbabilityMatrix counts(p.rows(), k, 0.0);
  std::size_t elites = 0;
  for (std::size_t s = 0; s < scores.size(); ++s) {
    if (scores[s] > threshold) continue;
    ++elites;
    for (std::size_t c = 0; c < k; ++c) counts(flat[s * k + c], c) += 1.0;
  }
  ProbabilityMatrix next(p.rows(), k, 0.0);
  const double inv = 1.0 / static_cast<double>(elites);
  for (std::size_t r = 0; r < p.rows(); ++r) {
    for (std::size_t c = 0; c < k; ++c) next(r, c) = (1.0 - w) * p(r, c) + w * counts(r, c) * inv;
  }
  return next;
}

}  // namespace

std::vector<std::size_t> sample_candidate(const ProbabilityMatrix& p, Rng& rng) {
  if (p.cols() > p.rows()) throw Error(Errc::InvalidConfig, "more columns than rows");
  std::vector<std::size_t> out(p.cols());
  if (p.cols() == 0) return out;
  ColumnSampler sampler(p);
  sampler.draw(rng, out.data());
  return out;
}

ProbabilityMatrix update_probabilities(const ProbabilityMatrix& p,
                                       std::span<const std::vector<std::size_t>> samples,
                                       std::span<const double> scores, double rho, double w) {
  if (samples.size() != scores.size() || samples.empty()) {
    throw Error(Errc::ArityMismatch, "need one score per sample and at least one sample");
  }
  std::vector<std::size_t> flat;
  flat.reserve(samples.size() * p.cols());
  for (const auto& s : samples) {
    if (s.size() != p.cols()) throw Error(Errc::ArityMismatch, "sample length differs from matrix columns");
    flat.insert(flat.end(), s.begin(), s.end());
  }
  return update_flat(p, flat, scores, rho, w);
}

AggregationResult ce_aggregate(std::span<const RankedList> lists, std::span<const double> weights,
                               const AggregationConfig& config, const IterationObserver& observer) {
  config.validate();
  if (lists.empty()) throw Error(Errc::EmptyInput, "no lists to aggregate");
  check_arity(lists, weights);

  const Effective eff = drop_empty(lists, weights);
  AggregationResult result;
  if (eff.lists.empty()) {
    result.stop_reason = "trivial";
    return result;
  }
  const auto universe = canonical_universe(eff.lists);
  const std::size_t n = universe.size();
  const std::size_t k = std::min(config.k, n);
  result.universe_size = n;
  result.k = k;

  const CandidateList first = top_ids(eff.lists.front(), k);
  const bool unanimous = std::all_of(eff.lists.begin(), eff.lists.end(),
                                     [&](const RankedList& l) { return top_ids(l, k) == first; });
  if (unanimous && first.size() == k) {
    result.items = first;
    result.final_iteration_best = first;
    result.stop_reason = "trivial";
    return result;
  }

  const std::size_t count = config.sample_count(n, k);
  const double rho = config.elite_quantile(count);
  result.samples = count;
  result.rho = rho;

  Evaluator evaluate(universe, eff.lists, eff.weights, config.distance, k);
  Rng rng(config.seed);
  ProbabilityMatrix p = ProbabilityMatrix::uniform(n, k);
  std::vector<std::size_t> flat(count * k);
  std::vector<double> scores(count);
  std::vector<std::size_t> best_rows;
  double best = std::numeric_limits<double>::infinity();
  double previous_min = std::numeric_limits<double>::quiet_NaN();
  std::size_t stable = 0;
  result.stop_reason = "max_iter";

  for (std::size_t it = 1; it <= config.max_iter; ++it) {
    ColumnSampler sampler(p);
    std::size_t iter_best = 0;
    for (std::size_t s = 0; s < count; ++s) {
      std::size_t* row = flat.data() + s * k;
      sampler.draw(rng, row);
      scores[s] = evaluate(std::span<const std::size_t>(row, k));
      if (scores[s] < scores[iter_best]) iter_best = s;
    }
    const double iter_min = scores[iter_best];
    const auto iter_rows = std::span<const std::size_t>(flat.data() + iter_best * k, k);
    if (iter_min < best - kTieTolerance) {
      best = iter_min;
      best_rows.assign(iter_rows.begin(), iter_rows.end());
    }
    result.final_iteration_best = to_ids(iter_rows, universe);
    result.final_iteration_objective = iter_min;

    p = update_flat(p, flat, scores, rho, config.update_weight);
    result.iterations = it;
    if (observer) observer(IterationState{it, &p, iter_min, best});

    stable = std::abs(iter_min - previous_min) <= kTieTolerance ? stable + 1 : 0;
    previous_min = iter_min;
    if (stable >= config.conv_in) {
      result.stop_reason = "converged";
      break;
    }
  }
  result.items = to_ids(best_rows, universe);
  result.objective = best;
  return result;
}

BruteForceResult brute_force_aggregate(std::span<const RankedList> lists, std::span<const double> weights,
                                       std::size_t k, Distance distance, std::uint64_t guard) {
  if (lists.empty()) throw Error(Errc::EmptyInput, "no lists to aggregate");
  check_arity(lists, weights);
  if (k == 0) throw Error(Errc::InvalidConfig, "k must be >= 1");
  const Effective eff = drop_empty(lists, weights);
  BruteForceResult result;
  if (eff.lists.empty()) return result;

  auto universe = canonical_universe(eff.lists);
  std::sort(universe.begin(), universe.end());
  const std::size_t n = universe.size();
  const std::size_t k_eff = std::min(k, n);

  std::uint64_t perms = 1;
  for (std::size_t i = 0; i < k_eff; ++i) {
    perms *= n - i;
    if (perms > guard) {
      throw Error(Errc::TooLarge, "more than " + std::to_string(guard) + " candidate lists");
    }
  }

  Evaluator evaluate(universe, eff.lists, eff.weights, distance, k_eff);
  std::vector<std::size_t> current;
  std::vector<unsigned char> used(n, 0);
  std::vector<std::size_t> best_rows;
  double best = std::numeric_limits<double>::infinity();

  // Rows are in lexicographic id order, so the first optimum met is the smallest.
  auto dfs = [&](auto&& self) -> void {
    if (current.size() == k_eff) {
      const double value = evaluate(current);
      if (value < best - kTieTolerance) {
        best = value;
        best_rows = current;
      }
      return;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] != 0) continue;
      used[r] = 1;
      current.push_back(r);
      self(self);
      current.pop_back();
      used[r] = 0;
    }
  };
  dfs(dfs);

  result.items = to_ids(best_rows, universe);
  result.objective = best;
  return result;
}

}  // namespace flkit
