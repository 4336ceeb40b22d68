#pragma once

// Canonical JSON schema for instances and solutions.
//
//   {"problem": "vrp", "points": [[x, y], ...], "demands": [...],
//    "vehicle_count": V, "capacity": Q}
//   {"problem": "knapsack", "items": [[value, weight], ...], "capacity": W}
//   {"problem": "binpacking", "items": [[id, weight], ...], "capacity": C}
//   {"problem": "jssp", "jobs": n, "machines": m, "ops": [[[machine, duration], ...], ...]}
//   {"problem": "fssp", "jobs": n, "machines": m, "durations": [[p_j0, p_j1, ...], ...]}
//
// A solution document is {"problem": ..., "solution": <payload>, "objective": X}
// where the payload is a node list (tsp), list of customer lists (vrp), item
// index list (knapsack), list of item-id lists (binpacking), list of
// [job, machine, start, duration] (jssp) or a job permutation (fssp).

#include <json.hpp>

#include "accord/problem.hpp"

namespace accord {

nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& j);

nlohmann::json solution_payload_to_json(const SolutionData& data);
SolutionData solution_payload_from_json(ProblemKind kind, const nlohmann::json& j);

nlohmann::json solution_to_json(ProblemKind kind, const Solution& solution);
Solution solution_from_json(const nlohmann::json& j);

}  // namespace accord
