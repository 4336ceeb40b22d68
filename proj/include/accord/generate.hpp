#pragma once

// Seeded synthetic instances for the six problem families.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "accord/problem.hpp"
#include "accord/rng.hpp"

namespace accord {

enum class Difficulty { Easy, Medium, Hard };
std::string_view difficulty_name(Difficulty d);
Difficulty parse_difficulty(std::string_view name);

inline constexpr std::int64_t kCoordinateMax = 100;
inline constexpr std::int64_t kDemandMin = 1, kDemandMax = 10;
inline constexpr std::int64_t kJsspDurationMin = 5, kJsspDurationMax = 300;
inline constexpr std::int64_t kFsspDurationMin = 1, kFsspDurationMax = 100;

// v == 1 gives a TSP instance (zero demands, capacity 0); v > 1 a VRP with
// capacity max(max demand, ceil(1.2 * total demand / v)), raised until the
// demands first-fit-decreasing pack into v vehicles.
RoutingInstance gen_routing(int n, int v, std::uint64_t seed);
KnapsackInstance gen_knapsack(int n, Difficulty difficulty, std::uint64_t seed);
// Throws InfeasibleSpec when target_bins > n.
BinPackInstance gen_binpack(int n, std::int64_t weight_max, int target_bins, std::uint64_t seed);
ShopInstance gen_shop(ProblemKind kind, int jobs, int machines, std::uint64_t seed);

struct GenSpec {
  ProblemKind kind = ProblemKind::Knapsack;
  int n = 5;  // locations (routing) or items (knapsack, bin packing)
  int v = 1;
  Difficulty difficulty = Difficulty::Easy;
  std::int64_t weight_max = 20;
  int target_bins = 2;
  int jobs = 2;
  int machines = 2;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  bool strict = true;
};

// Off-grid sizes throw InvalidInstance in strict mode; otherwise each problem
// is appended to `warnings`.
void check_grid(const GenSpec& spec, std::vector<std::string>* warnings = nullptr);

ProblemInstance generate(const GenSpec& spec, std::uint64_t seed);

}  // namespace accord
