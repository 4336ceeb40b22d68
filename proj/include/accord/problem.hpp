#pragma once

// Instance and solution model for the six problem families, plus objective
// recomputation and ground-truth feasibility checking.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace accord {

enum class ProblemKind { Tsp, Vrp, Knapsack, BinPacking, Jssp, Fssp };

inline constexpr ProblemKind kAllKinds[] = {ProblemKind::Tsp,        ProblemKind::Vrp,
                                            ProblemKind::Knapsack,   ProblemKind::BinPacking,
                                            ProblemKind::Jssp,       ProblemKind::Fssp};

enum class Sense { Minimize, Maximize };

// Canonical lowercase name: "tsp", "vrp", "knapsack", "binpacking", "jssp", "fssp".
std::string_view kind_name(ProblemKind kind);
ProblemKind parse_kind(std::string_view name);
Sense objective_sense(ProblemKind kind);

enum class ErrorCode {
  KindMismatch,
  InvalidInstance,
  InfeasibleSpec,
  InfeasibleInstance,
  TooLarge,
  WorkBoundExceeded,
  NotTwoMachines,
  Malformed,
  SolverTimeout,
  ValidationFailure,
  NonpositiveOracle,
  SourceUnavailable,
  Timeout,
  SequenceTooLong,
  MissingClass,
  Io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// floor of the Euclidean distance; exact for all 64-bit inputs below 2^31.
std::int64_t truncated_euclidean(const Point& a, const Point& b);

/// TSP and VRP share this layout. Node 0 is the depot. For TSP vehicle_count
/// is 1 and the capacity is not binding.
struct RoutingInstance {
  ProblemKind kind = ProblemKind::Tsp;
  std::vector<Point> points;
  std::vector<std::int64_t> demands;
  int vehicle_count = 1;
  std::int64_t capacity = 0;

  std::size_t size() const { return points.size(); }
  std::int64_t distance(std::size_t i, std::size_t j) const {
    return truncated_euclidean(points.at(i), points.at(j));
  }
  friend bool operator==(const RoutingInstance&, const RoutingInstance&) = default;
};

struct KnapsackItem {
  std::int64_t value = 0;
  std::int64_t weight = 0;
  friend bool operator==(const KnapsackItem&, const KnapsackItem&) = default;
};

struct KnapsackInstance {
  std::vector<KnapsackItem> items;
  std::int64_t capacity = 0;
  friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;
};

/// Item ids are the indices into `weights`.
struct BinPackInstance {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
  friend bool operator==(const BinPackInstance&, const BinPackInstance&) = default;
};

struct ShopOperation {
  int machine = 0;
  std::int64_t duration = 0;
  friend bool operator==(const ShopOperation&, const ShopOperation&) = default;
};

/// ops[j] is job j's operation sequence. For FSSP every job visits machines
/// 0..m-1 in order, so ops[j][k].machine == k.
struct ShopInstance {
  ProblemKind kind = ProblemKind::Jssp;
  int jobs = 0;
  int machines = 0;
  std::vector<std::vector<ShopOperation>> ops;

  std::int64_t duration(int job, int machine_pos) const { return ops[job][machine_pos].duration; }
  friend bool operator==(const ShopInstance&, const ShopInstance&) = default;
};

using InstanceData = std::variant<RoutingInstance, KnapsackInstance, BinPackInstance, ShopInstance>;

struct ProblemInstance {
  InstanceData data;

  ProblemKind kind() const;
  const RoutingInstance& routing() const;
  const KnapsackInstance& knapsack() const;
  const BinPackInstance& binpack() const;
  const ShopInstance& shop() const;
  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// Throws Error(InvalidInstance) when a structural invariant is broken.
void validate_instance(const ProblemInstance& instance);

/// Closed tour starting at the depot; the return leg is implicit.
struct Tour {
  std::vector<int> nodes;
  friend bool operator==(const Tour&, const Tour&) = default;
};

/// One customer sequence per vehicle, depot excluded at both ends.
struct Routes {
  std::vector<std::vector<int>> routes;
  friend bool operator==(const Routes&, const Routes&) = default;
};

struct Picks {
  std::vector<int> items;
  friend bool operator==(const Picks&, const Picks&) = default;
};

struct Packing {
  std::vector<std::vector<int>> bins;
  friend bool operator==(const Packing&, const Packing&) = default;
};

struct ScheduledOp {
  int job = 0;
  int machine = 0;
  std::int64_t start = 0;
  std::int64_t duration = 0;
  std::int64_t end() const { return start + duration; }
  friend bool operator==(const ScheduledOp&, const ScheduledOp&) = default;
};

struct Schedule {
  std::vector<ScheduledOp> ops;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Permutation {
  std::vector<int> jobs;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

using SolutionData = std::variant<Tour, Routes, Picks, Packing, Schedule, Permutation>;

struct Solution {
  SolutionData data;
  std::int64_t objective = 0;
  friend bool operator==(const Solution&, const Solution&) = default;
};

// Builds a solution whose stored objective is recomputed from its structure.
Solution make_solution(const ProblemInstance& instance, SolutionData data);

struct Violation {
  std::string constraint;
  std::string detail;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<Violation> violations;
};

std::int64_t objective_value(const ProblemInstance& instance, const Solution& solution);
std::int64_t objective_value(const ProblemInstance& instance, const SolutionData& data);
FeasibilityVerdict check_feasible(const ProblemInstance& instance, const Solution& solution);

/// Tight (left-shifted) schedule induced by a job permutation: completion[i][k]
/// is the completion of the i-th job of the permutation on machine k.
std::vector<std::vector<std::int64_t>> flow_shop_completions(const ShopInstance& instance,
                                                             const std::vector<int>& permutation);
std::int64_t flow_shop_makespan(const ShopInstance& instance, const std::vector<int>& permutation);
Schedule flow_shop_schedule(const ShopInstance& instance, const std::vector<int>& permutation);

}  // namespace accord
