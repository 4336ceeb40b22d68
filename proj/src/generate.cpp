#include "accord/generate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace accord {

namespace {

constexpr int kRoutingSizes[] = {5, 8, 10, 12, 15, 20, 50, 75, 100};
constexpr int kKnapsackSizes[] = {5, 8, 10, 12, 15, 20, 25, 30, 50, 100};
constexpr int kBinPackSizes[] = {5, 8, 12, 15, 20, 50, 100};
constexpr std::int64_t kBinWeightMaxima[] = {10, 20, 50, 100};

template <class T, std::size_t N>
bool on_grid(const T (&grid)[N], T value) {
  return std::find(std::begin(grid), std::end(grid), value) != std::end(grid);
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

std::size_t ffd_bins(std::vector<std::int64_t> sizes, std::int64_t capacity) {
  std::stable_sort(sizes.begin(), sizes.end(), std::greater<>());
  std::vector<std::int64_t> load;
  for (auto s : sizes) {
    auto it = std::find_if(load.begin(), load.end(), [&](std::int64_t l) { return l + s <= capacity; });
    if (it == load.end()) {
      load.push_back(s);
    } else {
      *it += s;
    }
  }
  return load.size();
}

}  // namespace

std::string_view difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "easy";
}

Difficulty parse_difficulty(std::string_view name) {
  if (name == "easy") return Difficulty::Easy;
  if (name == "medium") return Difficulty::Medium;
  if (name == "hard") return Difficulty::Hard;
  throw Error(ErrorCode::InvalidInstance, "unknown difficulty '" + std::string(name) + "'");
}

RoutingInstance gen_routing(int n, int v, std::uint64_t seed) {
  if (n < 2 || v < 1) throw Error(ErrorCode::InvalidInstance, "routing needs n >= 2 and v >= 1");
  Rng rng(seed);
  RoutingInstance r;
  r.kind = v == 1 ? ProblemKind::Tsp : ProblemKind::Vrp;
  r.vehicle_count = v;
  r.points.resize(static_cast<std::size_t>(n));
  for (auto& p : r.points) {
    p.x = rng.uniform_int(0, kCoordinateMax);
    p.y = rng.uniform_int(0, kCoordinateMax);
  }
  r.demands.assign(static_cast<std::size_t>(n), 0);
  if (r.kind == ProblemKind::Vrp) {
    for (std::size_t i = 1; i < r.demands.size(); ++i) r.demands[i] = rng.uniform_int(kDemandMin, kDemandMax);
    const auto total = std::accumulate(r.demands.begin(), r.demands.end(), std::int64_t{0});
    const auto largest = *std::max_element(r.demands.begin(), r.demands.end());
    r.capacity = std::max<std::int64_t>({largest, ceil_div(12 * total, 10 * v), 1});
    // The slack rule alone can leave no packing into v vehicles (10,10,10,1 with v=2).
    const std::vector<std::int64_t> customer_demands(r.demands.begin() + 1, r.demands.end());
    while (ffd_bins(customer_demands, r.capacity) > static_cast<std::size_t>(v)) ++r.capacity;
  }
  return r;
}

KnapsackInstance gen_knapsack(int n, Difficulty difficulty, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidInstance, "knapsack needs n >= 1");
  Rng rng(seed);
  KnapsackInstance k;
  k.items.resize(static_cast<std::size_t>(n));
  std::int64_t total = 0;
  for (auto& it : k.items) {
    switch (difficulty) {
      case Difficulty::Easy:
        it.value = rng.uniform_int(1, 20);
        it.weight = rng.uniform_int(1, 20);
        break;
      case Difficulty::Medium:
        it.value = rng.uniform_int(1, 100);
        it.weight = rng.uniform_int(1, 100);
        break;
      case Difficulty::Hard:
        it.weight = rng.uniform_int(1, 100);
        it.value = std::max<std::int64_t>(1, it.weight + rng.uniform_int(-5, 5));
        break;
    }
    total += it.weight;
  }
  const std::int64_t tenths = difficulty == Difficulty::Easy ? 8 : difficulty == Difficulty::Medium ? 5 : 3;
  k.capacity = ceil_div(tenths * total, 10);
  return k;
}

BinPackInstance gen_binpack(int n, std::int64_t weight_max, int target_bins, std::uint64_t seed) {
  if (target_bins < 1 || weight_max < 1 || n < 1)
    throw Error(ErrorCode::InvalidInstance, "bin packing needs n, weight_max, target_bins >= 1");
  if (target_bins > n) throw Error(ErrorCode::InfeasibleSpec, "target bins exceed item count");
  Rng rng(seed);
  BinPackInstance b;
  b.weights.resize(static_cast<std::size_t>(n));
  for (auto& w : b.weights) w = rng.uniform_int(1, weight_max);
  const auto total = std::accumulate(b.weights.begin(), b.weights.end(), std::int64_t{0});
  b.capacity = ceil_div(total, target_bins) + weight_max;
  return b;
}

ShopInstance gen_shop(ProblemKind kind, int jobs, int machines, std::uint64_t seed) {
  if (kind != ProblemKind::Jssp && kind != ProblemKind::Fssp) throw Error(ErrorCode::KindMismatch, "not a shop kind");
  if (jobs < 1 || machines < 1) throw Error(ErrorCode::InvalidInstance, "shop needs jobs, machines >= 1");
  Rng rng(seed);
  ShopInstance s;
  s.kind = kind;
  s.jobs = jobs;
  s.machines = machines;
  s.ops.resize(static_cast<std::size_t>(jobs));
  for (auto& job : s.ops) {
    std::vector<int> order(static_cast<std::size_t>(machines));
    std::iota(order.begin(), order.end(), 0);
    if (kind == ProblemKind::Jssp) rng.shuffle(order);
    for (int m : order) {
      const auto d = kind == ProblemKind::Jssp ? rng.uniform_int(kJsspDurationMin, kJsspDurationMax)
                                               : rng.uniform_int(kFsspDurationMin, kFsspDurationMax);
      job.push_back({m, d});
    }
  }
  return s;
}

void check_grid(const GenSpec& spec, std::vector<std::string>* warnings) {
  std::vector<std::string> problems;
  switch (spec.kind) {
    case ProblemKind::Tsp:
    case ProblemKind::Vrp:
      if (!on_grid(kRoutingSizes, spec.n)) problems.push_back("N=" + std::to_string(spec.n) + " is off the routing grid");
      if (spec.v < 1 || spec.v > 10) problems.push_back("V=" + std::to_string(spec.v) + " is outside 1..10");
      break;
    case ProblemKind::Knapsack:
      if (!on_grid(kKnapsackSizes, spec.n)) problems.push_back("N=" + std::to_string(spec.n) + " is off the knapsack grid");
      break;
    case ProblemKind::BinPacking:
      if (!on_grid(kBinPackSizes, spec.n)) problems.push_back("N=" + std::to_string(spec.n) + " is off the bin packing grid");
      if (!on_grid(kBinWeightMaxima, spec.weight_max))
        problems.push_back("weight max " + std::to_string(spec.weight_max) + " is off the grid");
      if (spec.target_bins < 1 || spec.target_bins > 10)
        problems.push_back("B=" + std::to_string(spec.target_bins) + " is outside 1..10");
      break;
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: break;
  }
  if (problems.empty()) return;
  if (spec.strict) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::InvalidInstance, msg + " (use permissive mode to allow)");
  }
  if (warnings) warnings->insert(warnings->end(), problems.begin(), problems.end());
}

ProblemInstance generate(const GenSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case ProblemKind::Tsp: return {gen_routing(spec.n, 1, seed)};
    case ProblemKind::Vrp:
      if (spec.v < 2) throw Error(ErrorCode::InvalidInstance, "VRP needs at least 2 vehicles; V=1 is a TSP");
      return {gen_routing(spec.n, spec.v, seed)};
    case ProblemKind::Knapsack: return {gen_knapsack(spec.n, spec.difficulty, seed)};
    case ProblemKind::BinPacking: return {gen_binpack(spec.n, spec.weight_max, spec.target_bins, seed)};
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: return {gen_shop(spec.kind, spec.jobs, spec.machines, seed)};
  }
  throw Error(ErrorCode::InvalidInstance, "unknown kind");
}

}  // namespace accord
