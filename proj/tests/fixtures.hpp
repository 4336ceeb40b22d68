#pragma once

// The six worked examples: instance, solution, and both canonical texts.

#include <string>
#include <vector>

#include "accord/problem.hpp"

namespace fixtures {

using namespace accord;

struct Example {
  std::string name;
  ProblemInstance instance;
  Solution solution;
  std::string accord_text;
  std::string list_text;
  std::int64_t objective;
};

inline ProblemInstance knapsack_instance() {
  return {KnapsackInstance{{{6, 5}, {10, 8}, {7, 4}, {6, 2}, {1, 1}}, 20}};
}

inline ProblemInstance binpack_instance() { return {BinPackInstance{{17, 24, 19, 11, 27}, 77}}; }

inline ProblemInstance vrp_instance() {
  RoutingInstance r;
  r.kind = ProblemKind::Vrp;
  r.points = {{34, 42}, {39, 58}, {46, 48}, {57, 49}, {45, 16}};
  r.demands = {0, 20, 20, 20, 20};
  r.vehicle_count = 5;
  r.capacity = 85;
  return {r};
}

inline ProblemInstance tsp_instance() {
  RoutingInstance r;
  r.kind = ProblemKind::Tsp;
  r.points = {{17, 22}, {63, 8}, {22, 60}, {3, 29}, {7, 12}};
  r.demands = {0, 0, 0, 0, 0};
  r.vehicle_count = 1;
  r.capacity = 0;
  return {r};
}

inline ProblemInstance jssp_instance() {
  ShopInstance s;
  s.kind = ProblemKind::Jssp;
  s.jobs = 2;
  s.machines = 6;
  s.ops = {{{2, 205}, {1, 157}, {0, 198}, {5, 79}, {3, 110}, {4, 32}},
           {{3, 179}, {4, 108}, {2, 82}, {5, 112}, {1, 136}, {0, 27}}};
  return {s};
}

inline ProblemInstance fssp_instance() {
  ShopInstance s;
  s.kind = ProblemKind::Fssp;
  s.jobs = 4;
  s.machines = 2;
  const std::int64_t p[4][2] = {{12, 7}, {8, 4}, {4, 15}, {5, 9}};
  for (const auto& row : p) s.ops.push_back({{0, row[0]}, {1, row[1]}});
  return {s};
}

inline Schedule jssp_schedule() {
  return Schedule{{{0, 2, 0, 205},
                   {1, 3, 0, 179},
                   {1, 4, 179, 108},
                   {0, 1, 205, 157},
                   {1, 2, 287, 82},
                   {0, 0, 362, 198},
                   {1, 5, 369, 112},
                   {1, 1, 481, 136},
                   {0, 5, 560, 79},
                   {1, 0, 617, 27},
                   {0, 3, 639, 110},
                   {0, 4, 749, 32}}};
}

inline std::vector<Example> examples() {
  std::vector<Example> out;
  out.push_back({"knapsack", knapsack_instance(), {Picks{{0, 1, 2, 3, 4}}, 30},
                 "Solution:\n"
                 "[[6, 5] -> value:0+6=6, weight:0+5=5<=20],\n"
                 "[[10, 8] -> value:6+10=16, weight:5+8=13<=20],\n"
                 "[[7, 4] -> value:16+7=23, weight:13+4=17<=20],\n"
                 "[[6, 2] -> value:23+6=29, weight:17+2=19<=20],\n"
                 "[[1, 1] -> value:29+1=30, weight:19+1=20<=20]\n"
                 "\n"
                 "Total Value: 30\n"
                 "Total Weight: 20<=20",
                 "Solution: [(6, 5), (10, 8), (7, 4), (6, 2), (1, 1)]\n"
                 "  Value: 6+10+7+6+1=30\n"
                 "  Weight: 5+8+4+2+1=20<=20",
                 30});
  out.push_back({"binpacking", binpack_instance(), {Packing{{{0, 1, 2, 3}, {4}}}, 2},
                 "Bin 1:\n"
                 "(0, 17)->17 (1, 24)->41 (2, 19)->60 (3, 11)->71<=77\n"
                 "Bin 2:\n"
                 "(4, 27)->27<=77\n"
                 "Total bins required: 2",
                 "The minimum number of bins required is 2. The bin assignments are: [[0, 1, 2, 3], [4]].", 2});
  const std::string depot_loop = "Vehicle Route: (0): (34, 42) -> (0): (34, 42) + 0\n";
  const std::string depot_pair = "[(0): (34, 42), (0): (34, 42)]\n";
  out.push_back({"vrp", vrp_instance(), {Routes{{{}, {}, {}, {}, {1, 2, 3, 4}}}, 102},
                 depot_loop + depot_loop + depot_loop + depot_loop +
                     "Vehicle Route: (0): (34, 42) -> (1): (39, 58) + 16 -> (2): (46, 48) + 12 -> (3): (57, 49) + 11 "
                     "-> (4): (45, 16) + 35 -> (0): (34, 42) + 28\n"
                     "Overall Total Distance: 102",
                 depot_pair + depot_pair + depot_pair + depot_pair +
                     "[(0): (34, 42), (1): (39, 58), (2): (46, 48), (3): (57, 49), (4): (45, 16), (0): (34, 42)]\n"
                     "Overall Total Distance: 102",
                 102});
  out.push_back({"tsp", tsp_instance(), {Tour{{0, 4, 3, 2, 1}}, 181},
                 "Vehicle Route: (0): (17, 22) -> (4): (7, 12) + 14 -> (3): (3, 29) + 17 -> (2): (22, 60) + 36 "
                 "-> (1): (63, 8) + 66 -> (0): (17, 22) + 48\n"
                 "Overall Total Distance: 181",
                 "[(0): (17, 22), (4): (7, 12), (3): (3, 29), (2): (22, 60), (1): (63, 8), (0): (17, 22)]\n"
                 "Overall Total Distance: 181",
                 181});
  out.push_back({"jssp", jssp_instance(), {jssp_schedule(), 781},
                 "Solution:\n"
                 "J0-M2: 0+205 -> 205,\n"
                 "J1-M3: 0+179 -> 179,\n"
                 "J1-M4: 179+108 -> 287,\n"
                 "J0-M1: 205+157 -> 362,\n"
                 "J1-M2: 287+82 -> 369,\n"
                 "J0-M0: 362+198 -> 560,\n"
                 "J1-M5: 369+112 -> 481,\n"
                 "J1-M1: 481+136 -> 617,\n"
                 "J0-M5: 560+79 -> 639,\n"
                 "J1-M0: 617+27 -> 644,\n"
                 "J0-M3: 639+110 -> 749,\n"
                 "J0-M4: 749+32 -> 781,\n"
                 "Maximum end completion time or Makespan: 781",
                 "[[0, 2, 0, 205], [1, 3, 0, 179], [1, 4, 179, 108], [0, 1, 205, 157], [1, 2, 287, 82], "
                 "[0, 0, 362, 198], [1, 5, 369, 112], [1, 1, 481, 136], [0, 5, 560, 79], [1, 0, 617, 27], "
                 "[0, 3, 639, 110], [0, 4, 749, 32]]\n"
                 "Maximum end completion time or Makespan: 781",
                 781});
  out.push_back({"fssp", fssp_instance(), {Permutation{{2, 1, 3, 0}}, 39},
                 "J3: M1(0+4=4) -> M2(4+15=19)\n"
                 "J2: M1(4+8=12) -> M2(19+4=23)\n"
                 "J4: M1(12+5=17) -> M2(23+9=32)\n"
                 "J1: M1(17+12=29) -> M2(32+7=39)\n"
                 "\n"
                 "Maximum end completion time or Makespan: 39",
                 "[[3, 1, 0, 4], [3, 2, 4, 15], [2, 1, 4, 8], [4, 1, 12, 5], [1, 1, 17, 12], [2, 2, 19, 4], "
                 "[4, 2, 23, 9], [1, 2, 32, 7]]\n"
                 "Maximum end completion time or Makespan: 39",
                 39});
  return out;
}

}  // namespace fixtures
