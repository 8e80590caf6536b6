// SPDX-License-Identifier: Apache-2.0
//
// Direct definitions of the top-k distances and an exhaustive aggregator,
// independent of the library's implementation.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using List = std::vector<std::string>;

inline std::map<std::string, int> ranks_of(const List& l, int k) {
  std::map<std::string, int> r;
  for (int i = 0; i < static_cast<int>(l.size()) && i < k; ++i) r[l[i]] = i + 1;
  return r;
}

inline int rank_or_absent(const std::map<std::string, int>& r, const std::string& item, int k) {
  auto it = r.find(item);
  return it == r.end() ? k + 1 : it->second;
}

inline double footrule(const List& a, const List& b, int k) {
  const auto ra = ranks_of(a, k);
  const auto rb = ranks_of(b, k);
  std::set<std::string> u;
  for (const auto& [x, _] : ra) u.insert(x);
  for (const auto& [x, _] : rb) u.insert(x);
  double d = 0;
  for (const auto& x : u) d += std::abs(rank_or_absent(ra, x, k) - rank_or_absent(rb, x, k));
  return d;
}

inline double kendall(const List& a, const List& b, int k) {
  const auto ra = ranks_of(a, k);
  const auto rb = ranks_of(b, k);
  std::set<std::string> su;
  for (const auto& [x, _] : ra) su.insert(x);
  for (const auto& [x, _] : rb) su.insert(x);
  const std::vector<std::string> u(su.begin(), su.end());
  double d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const int x = rank_or_absent(ra, u[i], k) - rank_or_absent(ra, u[j], k);
      const int y = rank_or_absent(rb, u[i], k) - rank_or_absent(rb, u[j], k);
      if (static_cast<long>(x) * y < 0) d += 1;
    }
  }
  return d;
}

inline double objective(const List& delta, const std::vector<List>& lists, const std::vector<double>& w, int k,
                        bool use_kendall) {
  double f = 0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    f += w[i] * (use_kendall ? kendall(delta, lists[i], k) : footrule(delta, lists[i], k));
  }
  return f;
}

struct Optimum {
  List best;
  double value = std::numeric_limits<double>::infinity();
};

// Enumerates every ordered k-subset by permuting the sorted universe and
// keeping distinct prefixes.
inline Optimum brute_force(const std::vector<List>& lists, const std::vector<double>& w, int k,
                           bool use_kendall) {
  std::set<std::string> su;
  for (const auto& l : lists) su.insert(l.begin(), l.end());
  List u(su.begin(), su.end());
  const int kk = std::min<int>(k, static_cast<int>(u.size()));
  Optimum opt;
  std::set<List> seen;
  do {
    List prefix(u.begin(), u.begin() + kk);
    if (!seen.insert(prefix).second) continue;
    const double v = objective(prefix, lists, w, kk, use_kendall);
    if (v < opt.value - 1e-12 || (std::abs(v - opt.value) <= 1e-12 && prefix < opt.best)) {
      opt.value = v;
      opt.best = prefix;
    }
  } while (std::next_permutation(u.begin(), u.end()));
  return opt;
}

}  // namespace oracle
