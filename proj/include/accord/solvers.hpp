#pragma once

// Reference solvers: exact methods at desk scale and the named construction
// heuristics. All ties are broken toward the lowest index.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "accord/problem.hpp"

namespace accord {

struct SolveResult {
  Solution solution;
  std::string method;
  double elapsed = 0.0;  // seconds
  bool optimal = false;
};

struct SolveOptions {
  // Wall-clock budget in seconds for the search-based exact methods; 0 = none.
  double time_limit = 0.0;
  // Upper bound on knapsack DP table cells (items x (capacity + 1)).
  std::int64_t knapsack_work_bound = 100'000'000;
};

inline constexpr std::size_t kTspExactMaxNodes = 15;
inline constexpr std::size_t kBinPackExactMaxItems = 15;
inline constexpr std::size_t kJsspExactMaxOps = 12;

SolveResult knapsack_exact(const ProblemInstance& instance, const SolveOptions& options = {});

SolveResult tsp_exact(const ProblemInstance& instance);
SolveResult tsp_heuristic(const ProblemInstance& instance);

// Nearest-unvisited construction from the depot.
std::vector<int> cheapest_arc_tour(const RoutingInstance& instance);
// First-improvement 2-opt on a closed tour whose first node stays fixed.
// When `lengths` is given, the tour length after every accepted move is appended.
void two_opt(const RoutingInstance& instance, std::vector<int>& tour,
             std::vector<std::int64_t>* lengths = nullptr);

SolveResult vrp_heuristic(const ProblemInstance& instance);

SolveResult binpack_solve(const ProblemInstance& instance, const SolveOptions& options = {});
std::vector<std::vector<int>> first_fit_decreasing(const BinPackInstance& instance);

struct NehStep {
  int job = 0;                               // job inserted at this step
  std::vector<std::int64_t> candidate_spans;  // makespan for every insertion position
  std::size_t chosen = 0;                    // position selected
};

SolveResult fssp_neh(const ProblemInstance& instance, std::vector<NehStep>* trace = nullptr);
SolveResult fssp_johnson(const ProblemInstance& instance);

enum class DispatchRule { Spt, Mwr, Mor };
std::string_view rule_name(DispatchRule rule);
DispatchRule parse_rule(std::string_view name);

SolveResult jssp_dispatch(const ProblemInstance& instance, DispatchRule rule);
SolveResult jssp_exact_tiny(const ProblemInstance& instance, const SolveOptions& options = {});

// Per-kind default used for dataset labels and CLI `solve`: exact where the
// instance is small enough, otherwise the heuristic.
SolveResult solve_default(const ProblemInstance& instance, const SolveOptions& options = {});

// Solve by method name ("auto", "knapsack_exact", "tsp_exact", "tsp_heuristic",
// "vrp_heuristic", "binpack", "neh", "johnson", "spt", "mwr", "mor", "jssp_exact").
SolveResult solve_with(const ProblemInstance& instance, std::string_view method,
                       const SolveOptions& options = {});

}  // namespace accord
