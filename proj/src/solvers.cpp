#include "accord/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace accord {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Deadline {
 public:
  explicit Deadline(double limit) : limit_(limit), start_(Clock::now()) {}
  void check(const char* method) {
    if (limit_ <= 0.0 || (++ticks_ & 0x3ff) != 0) return;
    if (seconds_since(start_) > limit_)
      throw Error(ErrorCode::SolverTimeout, std::string(method) + " exceeded its time budget");
  }

 private:
  double limit_;
  Clock::time_point start_;
  std::uint64_t ticks_ = 0;
};

SolveResult finish(const ProblemInstance& instance, SolutionData data, std::string method, bool optimal,
                   Clock::time_point t0) {
  SolveResult r;
  r.solution = make_solution(instance, std::move(data));
  r.method = std::move(method);
  r.optimal = optimal;
  r.elapsed = seconds_since(t0);
  return r;
}

void require_kind(const ProblemInstance& instance, ProblemKind kind, const char* method) {
  if (instance.kind() != kind)
    throw Error(ErrorCode::KindMismatch, std::string(method) + " cannot solve " +
                                             std::string(kind_name(instance.kind())));
}

std::int64_t tour_length(const RoutingInstance& r, const std::vector<int>& tour) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < tour.size(); ++i)
    total += r.distance(static_cast<std::size_t>(tour[i]), static_cast<std::size_t>(tour[(i + 1) % tour.size()]));
  return total;
}

}  // namespace

// ---------------------------------------------------------------- knapsack

SolveResult knapsack_exact(const ProblemInstance& instance, const SolveOptions& options) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Knapsack, "knapsack_exact");
  const auto& k = instance.knapsack();
  const std::size_t n = k.items.size();
  const auto cap = static_cast<std::size_t>(std::max<std::int64_t>(k.capacity, 0));
  if (static_cast<double>(n) * static_cast<double>(cap + 1) > static_cast<double>(options.knapsack_work_bound))
    throw Error(ErrorCode::WorkBoundExceeded, "knapsack DP table exceeds the configured work bound");

  std::vector<std::int64_t> best(cap + 1, 0);
  std::vector<bool> take(n * (cap + 1), false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(k.items[i].weight);
    const auto v = k.items[i].value;
    if (w > cap) continue;
    for (std::size_t c = cap + 1; c-- > w;) {
      if (best[c - w] + v > best[c]) {
        best[c] = best[c - w] + v;
        take[i * (cap + 1) + c] = true;
      }
    }
  }
  Picks picks;
  std::size_t c = cap;
  for (std::size_t i = n; i-- > 0;) {
    if (take[i * (cap + 1) + c]) {
      picks.items.push_back(static_cast<int>(i));
      c -= static_cast<std::size_t>(k.items[i].weight);
    }
  }
  std::reverse(picks.items.begin(), picks.items.end());
  return finish(instance, std::move(picks), "knapsack_exact", true, t0);
}

// --------------------------------------------------------------------- TSP

SolveResult tsp_exact(const ProblemInstance& instance) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Tsp, "tsp_exact");
  const auto& r = instance.routing();
  const std::size_t n = r.size();
  if (n > kTspExactMaxNodes)
    throw Error(ErrorCode::TooLarge, "tsp_exact supports at most " + std::to_string(kTspExactMaxNodes) + " nodes");
  if (n <= 3) {
    Tour t;
    for (std::size_t i = 0; i < n; ++i) t.nodes.push_back(static_cast<int>(i));
    return finish(instance, std::move(t), "tsp_exact", true, t0);
  }

  // Held-Karp over subsets of customers 1..n-1; bit i-1 stands for node i.
  const std::size_t m = n - 1;
  const std::size_t full = (std::size_t{1} << m);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> cost(full * m, kInf);
  std::vector<int> parent(full * m, -1);
  for (std::size_t j = 0; j < m; ++j) cost[(std::size_t{1} << j) * m + j] = r.distance(0, j + 1);

  for (std::size_t set = 1; set < full; ++set) {
    for (std::size_t last = 0; last < m; ++last) {
      if (!(set & (std::size_t{1} << last))) continue;
      const std::int64_t base = cost[set * m + last];
      if (base >= kInf) continue;
      for (std::size_t next = 0; next < m; ++next) {
        if (set & (std::size_t{1} << next)) continue;
        const std::size_t nset = set | (std::size_t{1} << next);
        const std::int64_t c = base + r.distance(last + 1, next + 1);
        if (c < cost[nset * m + next]) {
          cost[nset * m + next] = c;
          parent[nset * m + next] = static_cast<int>(last);
        }
      }
    }
  }
  std::int64_t best = kInf;
  std::size_t best_last = 0;
  for (std::size_t last = 0; last < m; ++last) {
    const std::int64_t c = cost[(full - 1) * m + last] + r.distance(last + 1, 0);
    if (c < best) {
      best = c;
      best_last = last;
    }
  }
  std::vector<int> rev;
  std::size_t set = full - 1;
  int cur = static_cast<int>(best_last);
  while (cur >= 0) {
    rev.push_back(cur + 1);
    const int prev = parent[set * m + static_cast<std::size_t>(cur)];
    set &= ~(std::size_t{1} << static_cast<std::size_t>(cur));
    cur = prev;
  }
  Tour t{{0}};
  t.nodes.insert(t.nodes.end(), rev.rbegin(), rev.rend());
  return finish(instance, std::move(t), "tsp_exact", true, t0);
}

std::vector<int> cheapest_arc_tour(const RoutingInstance& r) {
  const std::size_t n = r.size();
  std::vector<bool> used(n, false);
  std::vector<int> tour{0};
  used[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const auto last = static_cast<std::size_t>(tour.back());
    std::size_t pick = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 1; j < n; ++j) {
      if (used[j]) continue;
      const auto d = r.distance(last, j);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = true;
    tour.push_back(static_cast<int>(pick));
  }
  return tour;
}

void two_opt(const RoutingInstance& r, std::vector<int>& tour, std::vector<std::int64_t>* lengths) {
  const std::size_t n = tour.size();
  if (n < 4) return;
  auto d = [&](std::size_t a, std::size_t b) {
    return r.distance(static_cast<std::size_t>(tour[a]), static_cast<std::size_t>(tour[b % n]));
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
      for (std::size_t j = i + 2; j < n && !improved; ++j) {
        if (i == 0 && j == n - 1) continue;
        const std::int64_t delta = d(i, j) + d(i + 1, j + 1) - d(i, i + 1) - d(j, j + 1);
        if (delta < 0) {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
          if (lengths) lengths->push_back(tour_length(r, tour));
        }
      }
    }
  }
}

SolveResult tsp_heuristic(const ProblemInstance& instance) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Tsp, "tsp_heuristic");
  auto tour = cheapest_arc_tour(instance.routing());
  two_opt(instance.routing(), tour);
  return finish(instance, Tour{std::move(tour)}, "tsp_heuristic", false, t0);
}

// --------------------------------------------------------------------- VRP

namespace {

// Cheapest feasible insertion; returns false if some customer cannot be placed.
bool insertion_routes(const RoutingInstance& r, std::vector<std::vector<int>>& routes) {
  const std::size_t n = r.size();
  routes.assign(static_cast<std::size_t>(r.vehicle_count), {});
  std::vector<std::int64_t> load(routes.size(), 0);
  std::vector<bool> done(n, false);
  for (std::size_t placed = 1; placed < n; ++placed) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t best_c = 0, best_v = 0, best_pos = 0;
    for (std::size_t c = 1; c < n; ++c) {
      if (done[c]) continue;
      for (std::size_t v = 0; v < routes.size(); ++v) {
        if (load[v] + r.demands[c] > r.capacity) continue;
        const auto& route = routes[v];
        for (std::size_t pos = 0; pos <= route.size(); ++pos) {
          const auto prev = pos == 0 ? std::size_t{0} : static_cast<std::size_t>(route[pos - 1]);
          const auto next = pos == route.size() ? std::size_t{0} : static_cast<std::size_t>(route[pos]);
          const auto delta = r.distance(prev, c) + r.distance(c, next) - r.distance(prev, next);
          if (delta < best) {
            best = delta;
            best_c = c;
            best_v = v;
            best_pos = pos;
          }
        }
      }
    }
    if (best_c == 0) return false;
    routes[best_v].insert(routes[best_v].begin() + static_cast<std::ptrdiff_t>(best_pos), static_cast<int>(best_c));
    load[best_v] += r.demands[best_c];
    done[best_c] = true;
  }
  return true;
}

// Assigns customers to vehicles first-fit by decreasing demand, then orders
// each vehicle's customers by nearest neighbour.
bool first_fit_routes(const RoutingInstance& r, std::vector<std::vector<int>>& routes) {
  std::vector<int> order;
  for (std::size_t c = 1; c < r.size(); ++c) order.push_back(static_cast<int>(c));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return r.demands[static_cast<std::size_t>(a)] > r.demands[static_cast<std::size_t>(b)]; });
  routes.assign(static_cast<std::size_t>(r.vehicle_count), {});
  std::vector<std::int64_t> load(routes.size(), 0);
  for (int c : order) {
    bool placed = false;
    for (std::size_t v = 0; v < routes.size() && !placed; ++v) {
      if (load[v] + r.demands[static_cast<std::size_t>(c)] <= r.capacity) {
        routes[v].push_back(c);
        load[v] += r.demands[static_cast<std::size_t>(c)];
        placed = true;
      }
    }
    if (!placed) return false;
  }
  for (auto& route : routes) {
    std::vector<int> rest = route, ordered;
    std::size_t cur = 0;
    while (!rest.empty()) {
      auto it = std::min_element(rest.begin(), rest.end(), [&](int a, int b) {
        const auto da = r.distance(cur, static_cast<std::size_t>(a));
        const auto db = r.distance(cur, static_cast<std::size_t>(b));
        return da != db ? da < db : a < b;
      });
      cur = static_cast<std::size_t>(*it);
      ordered.push_back(*it);
      rest.erase(it);
    }
    route = std::move(ordered);
  }
  return true;
}

}  // namespace

SolveResult vrp_heuristic(const ProblemInstance& instance) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Vrp, "vrp_heuristic");
  const auto& r = instance.routing();
  std::int64_t total_demand = 0;
  for (std::size_t c = 1; c < r.size(); ++c) {
    if (r.demands[c] > r.capacity) throw Error(ErrorCode::InfeasibleInstance, "a demand exceeds vehicle capacity");
    total_demand += r.demands[c];
  }
  if (total_demand > static_cast<std::int64_t>(r.vehicle_count) * r.capacity)
    throw Error(ErrorCode::InfeasibleInstance, "total demand exceeds fleet capacity");

  std::vector<std::vector<int>> routes;
  if (!insertion_routes(r, routes) && !first_fit_routes(r, routes))
    throw Error(ErrorCode::InfeasibleInstance, "no capacity-feasible assignment found");
  for (auto& route : routes) {
    std::vector<int> closed{0};
    closed.insert(closed.end(), route.begin(), route.end());
    two_opt(r, closed);
    route.assign(closed.begin() + 1, closed.end());
  }
  return finish(instance, Routes{std::move(routes)}, "vrp_heuristic", false, t0);
}

// ------------------------------------------------------------- bin packing

std::vector<std::vector<int>> first_fit_decreasing(const BinPackInstance& b) {
  std::vector<int> order(b.weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return b.weights[static_cast<std::size_t>(x)] > b.weights[static_cast<std::size_t>(y)];
  });
  std::vector<std::vector<int>> bins;
  std::vector<std::int64_t> load;
  for (int i : order) {
    const auto w = b.weights[static_cast<std::size_t>(i)];
    std::size_t k = 0;
    while (k < bins.size() && load[k] + w > b.capacity) ++k;
    if (k == bins.size()) {
      bins.emplace_back();
      load.push_back(0);
    }
    bins[k].push_back(i);
    load[k] += w;
  }
  return bins;
}

namespace {

void normalize_packing(std::vector<std::vector<int>>& bins) {
  bins.erase(std::remove_if(bins.begin(), bins.end(), [](const auto& b) { return b.empty(); }), bins.end());
  for (auto& bin : bins) std::sort(bin.begin(), bin.end());
  std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

struct BinSearch {
  const BinPackInstance& inst;
  std::vector<int> order;
  std::vector<std::int64_t> load;
  std::vector<int> assign;
  std::vector<int> best_assign;
  std::size_t best_bins;
  std::size_t lower_bound;
  Deadline deadline;

  void dfs(std::size_t idx, std::size_t used) {
    deadline.check("binpack_solve");
    if (used >= best_bins || best_bins == lower_bound) return;
    if (idx == order.size()) {
      best_bins = used;
      best_assign = assign;
      return;
    }
    const auto w = inst.weights[static_cast<std::size_t>(order[idx])];
    for (std::size_t k = 0; k < used; ++k) {
      if (load[k] + w > inst.capacity) continue;
      // bins with identical load are interchangeable
      bool dup = false;
      for (std::size_t q = 0; q < k && !dup; ++q) dup = load[q] == load[k];
      if (dup) continue;
      load[k] += w;
      assign[idx] = static_cast<int>(k);
      dfs(idx + 1, used);
      load[k] -= w;
    }
    if (used + 1 < best_bins) {
      load[used] = w;
      assign[idx] = static_cast<int>(used);
      dfs(idx + 1, used + 1);
      load[used] = 0;
    }
  }
};

}  // namespace

SolveResult binpack_solve(const ProblemInstance& instance, const SolveOptions& options) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::BinPacking, "binpack_solve");
  const auto& b = instance.binpack();
  auto bins = first_fit_decreasing(b);
  const std::int64_t total = std::accumulate(b.weights.begin(), b.weights.end(), std::int64_t{0});
  const auto lb = static_cast<std::size_t>((total + b.capacity - 1) / b.capacity);

  bool optimal = bins.size() <= lb;
  std::string method = "ffd";
  if (!optimal && b.weights.size() <= kBinPackExactMaxItems) {
    BinSearch s{b, {}, {}, {}, {}, bins.size(), lb, Deadline(options.time_limit)};
    s.order.resize(b.weights.size());
    std::iota(s.order.begin(), s.order.end(), 0);
    std::stable_sort(s.order.begin(), s.order.end(), [&](int x, int y) {
      return b.weights[static_cast<std::size_t>(x)] > b.weights[static_cast<std::size_t>(y)];
    });
    s.load.assign(b.weights.size(), 0);
    s.assign.assign(b.weights.size(), -1);
    s.dfs(0, 0);
    if (!s.best_assign.empty()) {
      bins.assign(s.best_bins, {});
      for (std::size_t idx = 0; idx < s.order.size(); ++idx)
        bins[static_cast<std::size_t>(s.best_assign[idx])].push_back(s.order[idx]);
    }
    optimal = true;
    method = "binpack_exact";
  }
  normalize_packing(bins);
  return finish(instance, Packing{std::move(bins)}, method, optimal, t0);
}

// -------------------------------------------------------------------- FSSP

SolveResult fssp_neh(const ProblemInstance& instance, std::vector<NehStep>* trace) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Fssp, "fssp_neh");
  const auto& s = instance.shop();
  std::vector<std::int64_t> totals(static_cast<std::size_t>(s.jobs), 0);
  for (int j = 0; j < s.jobs; ++j)
    for (int k = 0; k < s.machines; ++k) totals[static_cast<std::size_t>(j)] += s.duration(j, k);
  std::vector<int> order(static_cast<std::size_t>(s.jobs));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return totals[static_cast<std::size_t>(a)] > totals[static_cast<std::size_t>(b)];
  });

  std::vector<int> seq;
  for (int job : order) {
    NehStep step{job, {}, 0};
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
      auto cand = seq;
      cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(pos), job);
      const auto span = flow_shop_makespan(s, cand);
      step.candidate_spans.push_back(span);
      if (span < best) {
        best = span;
        step.chosen = pos;
      }
    }
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(step.chosen), job);
    if (trace) trace->push_back(std::move(step));
  }
  return finish(instance, Permutation{std::move(seq)}, "neh", false, t0);
}

SolveResult fssp_johnson(const ProblemInstance& instance) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Fssp, "fssp_johnson");
  const auto& s = instance.shop();
  if (s.machines != 2) throw Error(ErrorCode::NotTwoMachines, "Johnson's rule needs exactly 2 machines");
  std::vector<int> first, second;
  for (int j = 0; j < s.jobs; ++j) (s.duration(j, 0) < s.duration(j, 1) ? first : second).push_back(j);
  std::stable_sort(first.begin(), first.end(), [&](int a, int b) { return s.duration(a, 0) < s.duration(b, 0); });
  std::stable_sort(second.begin(), second.end(), [&](int a, int b) { return s.duration(a, 1) > s.duration(b, 1); });
  first.insert(first.end(), second.begin(), second.end());
  return finish(instance, Permutation{std::move(first)}, "johnson", true, t0);
}

// -------------------------------------------------------------------- JSSP

std::string_view rule_name(DispatchRule rule) {
  switch (rule) {
    case DispatchRule::Spt: return "spt";
    case DispatchRule::Mwr: return "mwr";
    case DispatchRule::Mor: return "mor";
  }
  return "spt";
}

DispatchRule parse_rule(std::string_view name) {
  if (name == "spt" || name == "SPT") return DispatchRule::Spt;
  if (name == "mwr" || name == "MWR") return DispatchRule::Mwr;
  if (name == "mor" || name == "MOR") return DispatchRule::Mor;
  throw Error(ErrorCode::InvalidInstance, "unknown dispatch rule '" + std::string(name) + "'");
}

SolveResult jssp_dispatch(const ProblemInstance& instance, DispatchRule rule) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Jssp, "jssp_dispatch");
  const auto& s = instance.shop();
  const auto jobs = static_cast<std::size_t>(s.jobs);
  std::vector<std::size_t> next(jobs, 0);
  std::vector<std::int64_t> job_ready(jobs, 0), remaining(jobs, 0);
  std::vector<std::int64_t> machine_ready(static_cast<std::size_t>(s.machines), 0);
  std::size_t total_ops = 0;
  for (std::size_t j = 0; j < jobs; ++j) {
    for (const auto& op : s.ops[j]) remaining[j] += op.duration;
    total_ops += s.ops[j].size();
  }

  Schedule sched;
  for (std::size_t done = 0; done < total_ops; ++done) {
    std::int64_t earliest = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < jobs; ++j) {
      if (next[j] == s.ops[j].size()) continue;
      const auto& op = s.ops[j][next[j]];
      earliest = std::min(earliest, std::max(job_ready[j], machine_ready[static_cast<std::size_t>(op.machine)]));
    }
    std::size_t pick = jobs;
    std::int64_t pick_key = 0;
    for (std::size_t j = 0; j < jobs; ++j) {
      if (next[j] == s.ops[j].size()) continue;
      const auto& op = s.ops[j][next[j]];
      if (std::max(job_ready[j], machine_ready[static_cast<std::size_t>(op.machine)]) != earliest) continue;
      std::int64_t key = 0;  // larger is better
      switch (rule) {
        case DispatchRule::Spt: key = -op.duration; break;
        case DispatchRule::Mwr: key = remaining[j]; break;
        case DispatchRule::Mor: key = static_cast<std::int64_t>(s.ops[j].size() - next[j]); break;
      }
      if (pick == jobs || key > pick_key) {
        pick = j;
        pick_key = key;
      }
    }
    const auto& op = s.ops[pick][next[pick]];
    sched.ops.push_back({static_cast<int>(pick), op.machine, earliest, op.duration});
    job_ready[pick] = earliest + op.duration;
    machine_ready[static_cast<std::size_t>(op.machine)] = earliest + op.duration;
    remaining[pick] -= op.duration;
    ++next[pick];
  }
  return finish(instance, std::move(sched), std::string(rule_name(rule)), false, t0);
}

namespace {

struct JsspSearch {
  const ShopInstance& s;
  Deadline deadline;
  std::vector<std::size_t> next;
  std::vector<std::int64_t> job_ready, machine_ready, job_left, machine_left;
  std::vector<ScheduledOp> current, best_ops;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  void dfs(std::size_t remaining_ops, std::int64_t span) {
    deadline.check("jssp_exact_tiny");
    if (remaining_ops == 0) {
      if (span < best) {
        best = span;
        best_ops = current;
      }
      return;
    }
    std::int64_t bound = span;
    for (std::size_t j = 0; j < next.size(); ++j) bound = std::max(bound, job_ready[j] + job_left[j]);
    for (std::size_t m = 0; m < machine_ready.size(); ++m)
      bound = std::max(bound, machine_ready[m] + machine_left[m]);
    if (bound >= best) return;
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (next[j] == s.ops[j].size()) continue;
      const auto& op = s.ops[j][next[j]];
      const auto m = static_cast<std::size_t>(op.machine);
      const auto start = std::max(job_ready[j], machine_ready[m]);
      const auto saved_job = job_ready[j];
      const auto saved_machine = machine_ready[m];
      job_ready[j] = machine_ready[m] = start + op.duration;
      job_left[j] -= op.duration;
      machine_left[m] -= op.duration;
      ++next[j];
      current.push_back({static_cast<int>(j), op.machine, start, op.duration});
      dfs(remaining_ops - 1, std::max(span, start + op.duration));
      current.pop_back();
      --next[j];
      job_left[j] += op.duration;
      machine_left[m] += op.duration;
      job_ready[j] = saved_job;
      machine_ready[m] = saved_machine;
    }
  }
};

}  // namespace

SolveResult jssp_exact_tiny(const ProblemInstance& instance, const SolveOptions& options) {
  const auto t0 = Clock::now();
  require_kind(instance, ProblemKind::Jssp, "jssp_exact_tiny");
  const auto& s = instance.shop();
  std::size_t total_ops = 0;
  for (const auto& job : s.ops) total_ops += job.size();
  if (total_ops > kJsspExactMaxOps)
    throw Error(ErrorCode::TooLarge, "jssp_exact_tiny supports at most " + std::to_string(kJsspExactMaxOps) + " operations");

  JsspSearch search{s, Deadline(options.time_limit), {}, {}, {}, {}, {}, {}, {}};
  const auto jobs = static_cast<std::size_t>(s.jobs);
  const auto machines = static_cast<std::size_t>(s.machines);
  search.next.assign(jobs, 0);
  search.job_ready.assign(jobs, 0);
  search.job_left.assign(jobs, 0);
  search.machine_ready.assign(machines, 0);
  search.machine_left.assign(machines, 0);
  for (std::size_t j = 0; j < jobs; ++j)
    for (const auto& op : s.ops[j]) {
      search.job_left[j] += op.duration;
      search.machine_left[static_cast<std::size_t>(op.machine)] += op.duration;
    }
  search.dfs(total_ops, 0);
  return finish(instance, Schedule{std::move(search.best_ops)}, "jssp_exact", true, t0);
}

// ---------------------------------------------------------------- dispatch

SolveResult solve_default(const ProblemInstance& instance, const SolveOptions& options) {
  return solve_with(instance, "auto", options);
}

SolveResult solve_with(const ProblemInstance& instance, std::string_view method, const SolveOptions& options) {
  const ProblemKind kind = instance.kind();
  if (method == "auto") {
    switch (kind) {
      case ProblemKind::Tsp:
        return instance.routing().size() <= kTspExactMaxNodes ? tsp_exact(instance) : tsp_heuristic(instance);
      case ProblemKind::Vrp: return vrp_heuristic(instance);
      case ProblemKind::Knapsack: return knapsack_exact(instance, options);
      case ProblemKind::BinPacking: return binpack_solve(instance, options);
      case ProblemKind::Fssp: return fssp_neh(instance);
      case ProblemKind::Jssp: {
        std::size_t total = 0;
        for (const auto& job : instance.shop().ops) total += job.size();
        if (total <= kJsspExactMaxOps) return jssp_exact_tiny(instance, options);
        SolveResult best = jssp_dispatch(instance, DispatchRule::Spt);
        for (DispatchRule rule : {DispatchRule::Mwr, DispatchRule::Mor}) {
          auto r = jssp_dispatch(instance, rule);
          if (r.solution.objective < best.solution.objective) best = std::move(r);
        }
        return best;
      }
    }
  }
  if (method == "knapsack_exact") return knapsack_exact(instance, options);
  if (method == "tsp_exact") return tsp_exact(instance);
  if (method == "tsp_heuristic") return tsp_heuristic(instance);
  if (method == "vrp_heuristic") return vrp_heuristic(instance);
  if (method == "binpack" || method == "binpack_solve") return binpack_solve(instance, options);
  if (method == "neh") return fssp_neh(instance);
  if (method == "johnson") return fssp_johnson(instance);
  if (method == "jssp_exact") return jssp_exact_tiny(instance, options);
  if (method == "spt" || method == "mwr" || method == "mor") return jssp_dispatch(instance, parse_rule(method));
  throw Error(ErrorCode::InvalidInstance, "unknown solver method '" + std::string(method) + "'");
}

}  // namespace accord
