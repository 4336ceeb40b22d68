#pragma once

// Exhaustive reference answers for tiny instances. Deliberately naive.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "accord/problem.hpp"

namespace oracle {

using namespace accord;

inline std::int64_t knapsack_best(const KnapsackInstance& k) {
  const std::size_t n = k.items.size();
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::int64_t v = 0, w = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        v += k.items[i].value;
        w += k.items[i].weight;
      }
    if (w <= k.capacity) best = std::max(best, v);
  }
  return best;
}

inline std::int64_t tsp_best(const RoutingInstance& r) {
  std::vector<int> rest(r.size() - 1);
  std::iota(rest.begin(), rest.end(), 1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t len = 0;
    int prev = 0;
    for (int v : rest) {
      len += r.distance(static_cast<std::size_t>(prev), static_cast<std::size_t>(v));
      prev = v;
    }
    len += r.distance(static_cast<std::size_t>(prev), 0);
    best = std::min(best, len);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// Every assignment of customers to at most V routes, each route ordered optimally.
inline std::int64_t vrp_best(const RoutingInstance& r) {
  const std::size_t customers = r.size() - 1;
  const auto v = static_cast<std::size_t>(r.vehicle_count);
  std::vector<std::size_t> label(customers, 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  auto route_cost = [&](std::vector<int> nodes) {
    if (nodes.empty()) return std::int64_t{0};
    std::sort(nodes.begin(), nodes.end());
    std::int64_t b = std::numeric_limits<std::int64_t>::max();
    do {
      std::int64_t len = 0;
      int prev = 0;
      for (int x : nodes) {
        len += r.distance(static_cast<std::size_t>(prev), static_cast<std::size_t>(x));
        prev = x;
      }
      b = std::min(b, len + r.distance(static_cast<std::size_t>(prev), 0));
    } while (std::next_permutation(nodes.begin(), nodes.end()));
    return b;
  };
  while (true) {
    std::vector<std::vector<int>> groups(v);
    std::vector<std::int64_t> load(v, 0);
    for (std::size_t c = 0; c < customers; ++c) {
      groups[label[c]].push_back(static_cast<int>(c + 1));
      load[label[c]] += r.demands[c + 1];
    }
    if (std::all_of(load.begin(), load.end(), [&](std::int64_t l) { return l <= r.capacity; })) {
      std::int64_t total = 0;
      for (const auto& g : groups) total += route_cost(g);
      best = std::min(best, total);
    }
    std::size_t i = 0;
    while (i < customers && ++label[i] == v) label[i++] = 0;
    if (i == customers) break;
  }
  return best;
}

// Tries every assignment of items to at most n bins.
inline std::int64_t binpack_best(const BinPackInstance& b) {
  const std::size_t n = b.weights.size();
  std::int64_t best = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> load(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t used) -> void {
    if (used >= best) return;
    if (i == n) {
      best = used;
      return;
    }
    for (std::int64_t k = 0; k <= used && k < static_cast<std::int64_t>(n); ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (load[kk] + b.weights[i] > b.capacity) continue;
      load[kk] += b.weights[i];
      self(self, i + 1, std::max(used, k + 1));
      load[kk] -= b.weights[i];
    }
  };
  rec(rec, 0, 0);
  return best;
}

inline std::int64_t fssp_best(const ShopInstance& s) {
  std::vector<int> perm(static_cast<std::size_t>(s.jobs));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    best = std::min(best, flow_shop_makespan(s, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Enumerates every machine-order combination (each machine's job sequence) and
// takes the earliest-start schedule of each acyclic one.
inline std::int64_t jssp_best(const ShopInstance& s) {
  const auto m = static_cast<std::size_t>(s.machines);
  const auto n = static_cast<std::size_t>(s.jobs);
  std::vector<std::vector<int>> order(m);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& op : s.ops[j]) order[static_cast<std::size_t>(op.machine)].push_back(static_cast<int>(j));
  for (auto& o : order) std::sort(o.begin(), o.end());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  auto evaluate = [&]() {
    std::vector<std::size_t> job_pos(n, 0), mach_pos(m, 0);
    std::vector<std::int64_t> job_ready(n, 0), mach_ready(m, 0);
    std::size_t done = 0, total = 0;
    for (const auto& ops : s.ops) total += ops.size();
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t k = 0; k < m; ++k) {
        if (mach_pos[k] >= order[k].size()) continue;
        const auto j = static_cast<std::size_t>(order[k][mach_pos[k]]);
        if (job_pos[j] >= s.ops[j].size() || static_cast<std::size_t>(s.ops[j][job_pos[j]].machine) != k) continue;
        const auto start = std::max(job_ready[j], mach_ready[k]);
        const auto end = start + s.ops[j][job_pos[j]].duration;
        job_ready[j] = mach_ready[k] = end;
        ++job_pos[j];
        ++mach_pos[k];
        ++done;
        progress = true;
      }
    }
    if (done != total) return;
    best = std::min(best, *std::max_element(job_ready.begin(), job_ready.end()));
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == m) {
      evaluate();
      return;
    }
    do {
      self(self, k + 1);
    } while (std::next_permutation(order[k].begin(), order[k].end()));
  };
  rec(rec, 0);
  return best;
}

// Lower bound for two-machine flow shops: max over both machine loads plus the
// smallest lead-in / tail, and the longest single job.
inline std::int64_t fssp_two_machine_bound(const ShopInstance& s) {
  std::int64_t sum1 = 0, sum2 = 0, min1 = std::numeric_limits<std::int64_t>::max(),
               min2 = std::numeric_limits<std::int64_t>::max(), longest = 0;
  for (int j = 0; j < s.jobs; ++j) {
    sum1 += s.duration(j, 0);
    sum2 += s.duration(j, 1);
    min1 = std::min(min1, s.duration(j, 0));
    min2 = std::min(min2, s.duration(j, 1));
    longest = std::max(longest, s.duration(j, 0) + s.duration(j, 1));
  }
  return std::max({sum1 + min2, sum2 + min1, longest});
}

}  // namespace oracle
