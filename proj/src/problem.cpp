#include "accord/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace accord {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::int64_t isqrt_floor(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

[[noreturn]] void kind_mismatch(const ProblemInstance& instance, std::string_view what) {
  throw Error(ErrorCode::KindMismatch, std::string(what) + " does not match problem kind " +
                                           std::string(kind_name(instance.kind())));
}

std::int64_t route_length(const RoutingInstance& inst, const std::vector<int>& route) {
  std::int64_t total = 0;
  int prev = 0;
  for (int node : route) {
    total += inst.distance(static_cast<std::size_t>(prev), static_cast<std::size_t>(node));
    prev = node;
  }
  total += inst.distance(static_cast<std::size_t>(prev), 0);
  return total;
}

bool node_ok(const RoutingInstance& inst, int node) {
  return node >= 0 && static_cast<std::size_t>(node) < inst.size();
}

}  // namespace

std::string_view kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Tsp: return "tsp";
    case ProblemKind::Vrp: return "vrp";
    case ProblemKind::Knapsack: return "knapsack";
    case ProblemKind::BinPacking: return "binpacking";
    case ProblemKind::Jssp: return "jssp";
    case ProblemKind::Fssp: return "fssp";
  }
  return "unknown";
}

ProblemKind parse_kind(std::string_view name) {
  for (ProblemKind k : kAllKinds) {
    if (kind_name(k) == name) return k;
  }
  if (name == "binpack" || name == "bin_packing") return ProblemKind::BinPacking;
  throw Error(ErrorCode::InvalidInstance, "unknown problem kind '" + std::string(name) + "'");
}

Sense objective_sense(ProblemKind kind) {
  return kind == ProblemKind::Knapsack ? Sense::Maximize : Sense::Minimize;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::InfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WorkBoundExceeded: return "WorkBoundExceeded";
    case ErrorCode::NotTwoMachines: return "NotTwoMachines";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::SolverTimeout: return "SolverTimeout";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::NonpositiveOracle: return "NonpositiveOracle";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::SequenceTooLong: return "SequenceTooLong";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::int64_t truncated_euclidean(const Point& a, const Point& b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  return isqrt_floor(dx * dx + dy * dy);
}

ProblemKind ProblemInstance::kind() const {
  return std::visit(Overloaded{
                        [](const RoutingInstance& r) { return r.kind; },
                        [](const KnapsackInstance&) { return ProblemKind::Knapsack; },
                        [](const BinPackInstance&) { return ProblemKind::BinPacking; },
                        [](const ShopInstance& s) { return s.kind; },
                    },
                    data);
}

const RoutingInstance& ProblemInstance::routing() const {
  if (auto* p = std::get_if<RoutingInstance>(&data)) return *p;
  kind_mismatch(*this, "routing access");
}
const KnapsackInstance& ProblemInstance::knapsack() const {
  if (auto* p = std::get_if<KnapsackInstance>(&data)) return *p;
  kind_mismatch(*this, "knapsack access");
}
const BinPackInstance& ProblemInstance::binpack() const {
  if (auto* p = std::get_if<BinPackInstance>(&data)) return *p;
  kind_mismatch(*this, "bin packing access");
}
const ShopInstance& ProblemInstance::shop() const {
  if (auto* p = std::get_if<ShopInstance>(&data)) return *p;
  kind_mismatch(*this, "shop access");
}

void validate_instance(const ProblemInstance& instance) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidInstance, msg); };
  std::visit(
      Overloaded{
          [&](const RoutingInstance& r) {
            if (r.kind != ProblemKind::Tsp && r.kind != ProblemKind::Vrp) fail("routing kind");
            if (r.points.size() < 2) fail("routing instance needs at least 2 points");
            if (r.demands.size() != r.points.size()) fail("demands must match points");
            if (r.demands[0] != 0) fail("depot demand must be 0");
            if (r.vehicle_count < 1) fail("vehicle_count must be positive");
            if ((r.kind == ProblemKind::Tsp) != (r.vehicle_count == 1))
              fail("TSP iff vehicle_count == 1");
            for (const auto& p : r.points)
              if (p.x < 0 || p.y < 0) fail("coordinates must be non-negative");
            for (auto d : r.demands)
              if (d < 0) fail("demands must be non-negative");
            if (r.kind == ProblemKind::Vrp) {
              if (r.capacity <= 0) fail("capacity must be positive");
              for (auto d : r.demands)
                if (d > r.capacity) fail("demand exceeds capacity");
            }
          },
          [&](const KnapsackInstance& k) {
            if (k.capacity < 0) fail("capacity must be non-negative");
            for (const auto& it : k.items)
              if (it.value < 0 || it.weight < 0) fail("item values and weights must be non-negative");
          },
          [&](const BinPackInstance& b) {
            if (b.capacity <= 0) fail("bin capacity must be positive");
            for (auto w : b.weights)
              if (w < 0 || w > b.capacity) fail("item weight out of [0, capacity]");
          },
          [&](const ShopInstance& s) {
            if (s.kind != ProblemKind::Jssp && s.kind != ProblemKind::Fssp) fail("shop kind");
            if (s.jobs < 1 || s.machines < 1) fail("jobs and machines must be positive");
            if (s.ops.size() != static_cast<std::size_t>(s.jobs)) fail("ops must list every job");
            for (const auto& job : s.ops) {
              std::vector<bool> seen(static_cast<std::size_t>(s.machines), false);
              if (s.kind == ProblemKind::Fssp && job.size() != static_cast<std::size_t>(s.machines))
                fail("flow shop jobs visit every machine");
              for (std::size_t k = 0; k < job.size(); ++k) {
                const auto& op = job[k];
                if (op.machine < 0 || op.machine >= s.machines) fail("machine index out of range");
                if (seen[static_cast<std::size_t>(op.machine)]) fail("job repeats a machine");
                seen[static_cast<std::size_t>(op.machine)] = true;
                if (op.duration < 1) fail("durations must be >= 1");
                if (s.kind == ProblemKind::Fssp && op.machine != static_cast<int>(k))
                  fail("flow shop machine order is 0..m-1");
              }
            }
          },
      },
      instance.data);
}

std::vector<std::vector<std::int64_t>> flow_shop_completions(const ShopInstance& instance,
                                                             const std::vector<int>& permutation) {
  const auto m = static_cast<std::size_t>(instance.machines);
  std::vector<std::vector<std::int64_t>> c(permutation.size(), std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      std::int64_t ready = 0;
      if (i > 0) ready = c[i - 1][k];
      if (k > 0) ready = std::max(ready, c[i][k - 1]);
      c[i][k] = ready + instance.duration(permutation[i], static_cast<int>(k));
    }
  }
  return c;
}

std::int64_t flow_shop_makespan(const ShopInstance& instance, const std::vector<int>& permutation) {
  if (permutation.empty()) return 0;
  return flow_shop_completions(instance, permutation).back().back();
}

Schedule flow_shop_schedule(const ShopInstance& instance, const std::vector<int>& permutation) {
  const auto c = flow_shop_completions(instance, permutation);
  Schedule s;
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    for (int k = 0; k < instance.machines; ++k) {
      const auto p = instance.duration(permutation[i], k);
      s.ops.push_back({permutation[i], k, c[i][static_cast<std::size_t>(k)] - p, p});
    }
  }
  return s;
}

std::int64_t objective_value(const ProblemInstance& instance, const SolutionData& data) {
  const ProblemKind kind = instance.kind();
  return std::visit(
      Overloaded{
          [&](const Tour& t) -> std::int64_t {
            if (kind != ProblemKind::Tsp) kind_mismatch(instance, "tour");
            const auto& r = instance.routing();
            if (t.nodes.empty()) return 0;
            std::int64_t total = 0;
            for (std::size_t i = 0; i + 1 < t.nodes.size(); ++i)
              total += r.distance(static_cast<std::size_t>(t.nodes[i]),
                                  static_cast<std::size_t>(t.nodes[i + 1]));
            total += r.distance(static_cast<std::size_t>(t.nodes.back()),
                                static_cast<std::size_t>(t.nodes.front()));
            return total;
          },
          [&](const Routes& rs) -> std::int64_t {
            if (kind != ProblemKind::Vrp) kind_mismatch(instance, "routes");
            std::int64_t total = 0;
            for (const auto& route : rs.routes) total += route_length(instance.routing(), route);
            return total;
          },
          [&](const Picks& p) -> std::int64_t {
            if (kind != ProblemKind::Knapsack) kind_mismatch(instance, "picks");
            std::int64_t total = 0;
            for (int i : p.items) total += instance.knapsack().items.at(static_cast<std::size_t>(i)).value;
            return total;
          },
          [&](const Packing& p) -> std::int64_t {
            if (kind != ProblemKind::BinPacking) kind_mismatch(instance, "packing");
            return static_cast<std::int64_t>(
                std::count_if(p.bins.begin(), p.bins.end(), [](const auto& b) { return !b.empty(); }));
          },
          [&](const Schedule& s) -> std::int64_t {
            if (kind != ProblemKind::Jssp) kind_mismatch(instance, "schedule");
            std::int64_t makespan = 0;
            for (const auto& op : s.ops) makespan = std::max(makespan, op.end());
            return makespan;
          },
          [&](const Permutation& p) -> std::int64_t {
            if (kind != ProblemKind::Fssp) kind_mismatch(instance, "permutation");
            return flow_shop_makespan(instance.shop(), p.jobs);
          },
      },
      data);
}

std::int64_t objective_value(const ProblemInstance& instance, const Solution& solution) {
  return objective_value(instance, solution.data);
}

Solution make_solution(const ProblemInstance& instance, SolutionData data) {
  Solution s{std::move(data), 0};
  s.objective = objective_value(instance, s.data);
  return s;
}

FeasibilityVerdict check_feasible(const ProblemInstance& instance, const Solution& solution) {
  FeasibilityVerdict verdict;
  auto violate = [&](std::string constraint, std::string detail) {
    verdict.feasible = false;
    verdict.violations.push_back({std::move(constraint), std::move(detail)});
  };
  const ProblemKind kind = instance.kind();

  std::visit(
      Overloaded{
          [&](const Tour& t) {
            if (kind != ProblemKind::Tsp) kind_mismatch(instance, "tour");
            const auto& r = instance.routing();
            if (t.nodes.size() != r.size()) {
              violate("coverage", "tour visits " + std::to_string(t.nodes.size()) + " of " +
                                      std::to_string(r.size()) + " nodes");
            }
            if (!t.nodes.empty() && t.nodes.front() != 0) violate("depot", "tour must start at the depot");
            std::vector<int> seen(r.size(), 0);
            for (int node : t.nodes) {
              if (!node_ok(r, node)) {
                violate("node", "unknown node " + std::to_string(node));
                continue;
              }
              if (++seen[static_cast<std::size_t>(node)] > 1)
                violate("revisit", "node " + std::to_string(node) + " visited twice");
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
              if (seen[i] == 0 && t.nodes.size() == r.size())
                violate("coverage", "node " + std::to_string(i) + " not visited");
          },
          [&](const Routes& rs) {
            if (kind != ProblemKind::Vrp) kind_mismatch(instance, "routes");
            const auto& r = instance.routing();
            if (rs.routes.size() > static_cast<std::size_t>(r.vehicle_count))
              violate("fleet", std::to_string(rs.routes.size()) + " routes for " +
                                   std::to_string(r.vehicle_count) + " vehicles");
            std::vector<int> seen(r.size(), 0);
            for (std::size_t k = 0; k < rs.routes.size(); ++k) {
              std::int64_t load = 0;
              for (int node : rs.routes[k]) {
                if (!node_ok(r, node) || node == 0) {
                  violate("node", "route " + std::to_string(k) + " contains invalid customer " +
                                      std::to_string(node));
                  continue;
                }
                load += r.demands[static_cast<std::size_t>(node)];
                if (++seen[static_cast<std::size_t>(node)] > 1)
                  violate("revisit", "customer " + std::to_string(node) + " visited twice");
              }
              if (load > r.capacity)
                violate("capacity", "route " + std::to_string(k) + " load " + std::to_string(load) +
                                        " exceeds " + std::to_string(r.capacity));
            }
            for (std::size_t i = 1; i < seen.size(); ++i)
              if (seen[i] == 0) violate("coverage", "customer " + std::to_string(i) + " not served");
          },
          [&](const Picks& p) {
            if (kind != ProblemKind::Knapsack) kind_mismatch(instance, "picks");
            const auto& k = instance.knapsack();
            std::vector<bool> seen(k.items.size(), false);
            std::int64_t weight = 0;
            for (int i : p.items) {
              if (i < 0 || static_cast<std::size_t>(i) >= k.items.size()) {
                violate("item", "unknown item " + std::to_string(i));
                continue;
              }
              if (seen[static_cast<std::size_t>(i)]) violate("duplicate", "item " + std::to_string(i) + " picked twice");
              seen[static_cast<std::size_t>(i)] = true;
              weight += k.items[static_cast<std::size_t>(i)].weight;
            }
            if (weight > k.capacity)
              violate("capacity", "total weight " + std::to_string(weight) + " exceeds " +
                                      std::to_string(k.capacity));
          },
          [&](const Packing& p) {
            if (kind != ProblemKind::BinPacking) kind_mismatch(instance, "packing");
            const auto& b = instance.binpack();
            std::vector<int> seen(b.weights.size(), 0);
            for (std::size_t k = 0; k < p.bins.size(); ++k) {
              std::int64_t load = 0;
              for (int i : p.bins[k]) {
                if (i < 0 || static_cast<std::size_t>(i) >= b.weights.size()) {
                  violate("item", "unknown item " + std::to_string(i));
                  continue;
                }
                load += b.weights[static_cast<std::size_t>(i)];
                if (++seen[static_cast<std::size_t>(i)] > 1)
                  violate("duplicate", "item " + std::to_string(i) + " assigned twice");
              }
              if (load > b.capacity)
                violate("capacity", "bin " + std::to_string(k + 1) + " load " + std::to_string(load) +
                                        " exceeds " + std::to_string(b.capacity));
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
              if (seen[i] == 0) violate("assignment", "item " + std::to_string(i) + " not packed");
          },
          [&](const Schedule& s) {
            if (kind != ProblemKind::Jssp) kind_mismatch(instance, "schedule");
            const auto& shop = instance.shop();
            // position of each (job, machine) in the job's route, -1 if absent
            std::vector<std::vector<int>> pos(static_cast<std::size_t>(shop.jobs),
                                              std::vector<int>(static_cast<std::size_t>(shop.machines), -1));
            for (int j = 0; j < shop.jobs; ++j)
              for (std::size_t k = 0; k < shop.ops[static_cast<std::size_t>(j)].size(); ++k)
                pos[static_cast<std::size_t>(j)][static_cast<std::size_t>(shop.ops[static_cast<std::size_t>(j)][k].machine)] =
                    static_cast<int>(k);

            std::vector<std::vector<const ScheduledOp*>> by_job(static_cast<std::size_t>(shop.jobs));
            std::vector<std::vector<const ScheduledOp*>> by_machine(static_cast<std::size_t>(shop.machines));
            for (std::size_t j = 0; j < by_job.size(); ++j)
              by_job[j].assign(shop.ops[j].size(), nullptr);
            for (const auto& op : s.ops) {
              const std::string tag = "J" + std::to_string(op.job) + "-M" + std::to_string(op.machine);
              if (op.job < 0 || op.job >= shop.jobs || op.machine < 0 || op.machine >= shop.machines) {
                violate("operation", tag + " does not exist");
                continue;
              }
              const int k = pos[static_cast<std::size_t>(op.job)][static_cast<std::size_t>(op.machine)];
              if (k < 0) {
                violate("operation", tag + " is not part of the job");
                continue;
              }
              if (op.start < 0) violate("start", tag + " starts before time 0");
              if (op.duration != shop.duration(op.job, k))
                violate("duration", tag + " duration " + std::to_string(op.duration) + " != " +
                                        std::to_string(shop.duration(op.job, k)));
              auto& slot = by_job[static_cast<std::size_t>(op.job)][static_cast<std::size_t>(k)];
              if (slot != nullptr) {
                violate("operation", tag + " scheduled twice");
                continue;
              }
              slot = &op;
              by_machine[static_cast<std::size_t>(op.machine)].push_back(&op);
            }
            for (std::size_t j = 0; j < by_job.size(); ++j) {
              for (std::size_t k = 0; k < by_job[j].size(); ++k) {
                if (by_job[j][k] == nullptr) {
                  violate("coverage", "J" + std::to_string(j) + "-M" +
                                          std::to_string(shop.ops[j][k].machine) + " not scheduled");
                } else if (k > 0 && by_job[j][k - 1] != nullptr &&
                           by_job[j][k]->start < by_job[j][k - 1]->end()) {
                  violate("precedence", "J" + std::to_string(j) + " operation " + std::to_string(k) +
                                            " starts before its predecessor completes");
                }
              }
            }
            for (std::size_t m = 0; m < by_machine.size(); ++m) {
              auto ops = by_machine[m];
              std::sort(ops.begin(), ops.end(), [](const ScheduledOp* a, const ScheduledOp* b) {
                return a->start < b->start;
              });
              for (std::size_t i = 1; i < ops.size(); ++i)
                if (ops[i]->start < ops[i - 1]->end())
                  violate("machine_conflict", "M" + std::to_string(m) + ": J" + std::to_string(ops[i - 1]->job) +
                                                  " overlaps J" + std::to_string(ops[i]->job));
            }
          },
          [&](const Permutation& p) {
            if (kind != ProblemKind::Fssp) kind_mismatch(instance, "permutation");
            const auto& shop = instance.shop();
            std::vector<int> seen(static_cast<std::size_t>(shop.jobs), 0);
            for (int j : p.jobs) {
              if (j < 0 || j >= shop.jobs) {
                violate("job", "unknown job " + std::to_string(j));
                continue;
              }
              if (++seen[static_cast<std::size_t>(j)] > 1) violate("sequence", "job " + std::to_string(j) + " repeated");
            }
            for (std::size_t j = 0; j < seen.size(); ++j)
              if (seen[j] == 0) violate("sequence", "job " + std::to_string(j) + " missing");
          },
      },
      solution.data);

  if (verdict.feasible) {
    const auto recomputed = objective_value(instance, solution);
    if (recomputed != solution.objective)
      violate("objective", "stored objective " + std::to_string(solution.objective) +
                               " != recomputed " + std::to_string(recomputed));
  }
  return verdict;
}

}  // namespace accord
