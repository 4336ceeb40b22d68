#include <gtest/gtest.h>

#include <algorithm>
#include <climits>

#include "accord/json_io.hpp"
#include "accord/problem.hpp"
#include "accord/rng.hpp"
#include "fixtures.hpp"

using namespace accord;

namespace {

std::int64_t floor_sqrt_by_search(std::int64_t v) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool has(const FeasibilityVerdict& v, const std::string& constraint) {
  return std::any_of(v.violations.begin(), v.violations.end(),
                     [&](const Violation& x) { return x.constraint == constraint; });
}

FeasibilityVerdict verdict(const ProblemInstance& inst, SolutionData data) {
  return check_feasible(inst, make_solution(inst, std::move(data)));
}

// Out-of-range ids cannot be priced, so these carry a dummy objective.
FeasibilityVerdict raw_verdict(const ProblemInstance& inst, SolutionData data) {
  return check_feasible(inst, Solution{std::move(data), 0});
}

}  // namespace

TEST(Distance, TruncatedEuclidean) {
  EXPECT_EQ(truncated_euclidean({0, 0}, {3, 4}), 5);
  EXPECT_EQ(truncated_euclidean({0, 0}, {1, 1}), 1);
  EXPECT_EQ(truncated_euclidean({17, 22}, {63, 8}), 48);
  EXPECT_EQ(truncated_euclidean({5, 5}, {5, 5}), 0);
  EXPECT_EQ(truncated_euclidean({0, 0}, {0, 2147483647}), 2147483647);
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) {
    const Point a{rng.uniform_int(-300, 300), rng.uniform_int(-300, 300)};
    const Point b{rng.uniform_int(-300, 300), rng.uniform_int(-300, 300)};
    const auto dx = a.x - b.x, dy = a.y - b.y;
    ASSERT_EQ(truncated_euclidean(a, b), floor_sqrt_by_search(dx * dx + dy * dy));
    ASSERT_EQ(truncated_euclidean(a, b), truncated_euclidean(b, a));
  }
  // perfect squares just above and below
  for (std::int64_t k : {46340LL, 1000003LL, 2000000000LL}) {
    EXPECT_EQ(truncated_euclidean({0, 0}, {k, 0}), k);
    EXPECT_EQ(truncated_euclidean({0, 0}, {k, 1}), k);
  }
}

TEST(Kinds, NamesAndSenses) {
  for (auto k : kAllKinds) EXPECT_EQ(parse_kind(kind_name(k)), k);
  EXPECT_EQ(parse_kind("binpack"), ProblemKind::BinPacking);
  EXPECT_THROW(parse_kind("sudoku"), Error);
  EXPECT_EQ(objective_sense(ProblemKind::Knapsack), Sense::Maximize);
  for (auto k : {ProblemKind::Tsp, ProblemKind::Vrp, ProblemKind::BinPacking, ProblemKind::Jssp, ProblemKind::Fssp})
    EXPECT_EQ(objective_sense(k), Sense::Minimize);
}

TEST(Feasibility, ExamplesAreFeasible) {
  for (const auto& ex : fixtures::examples()) {
    const auto v = check_feasible(ex.instance, ex.solution);
    EXPECT_TRUE(v.feasible) << ex.name << ": " << (v.violations.empty() ? "" : v.violations[0].detail);
    EXPECT_EQ(objective_value(ex.instance, ex.solution), ex.objective) << ex.name;
  }
}

TEST(Feasibility, RoutingViolations) {
  const auto tsp = fixtures::tsp_instance();
  EXPECT_TRUE(has(verdict(tsp, Tour{{0, 4, 3, 2}}), "coverage"));
  EXPECT_TRUE(has(verdict(tsp, Tour{{1, 0, 4, 3, 2}}), "depot"));
  EXPECT_TRUE(has(verdict(tsp, Tour{{0, 4, 3, 3, 1}}), "revisit"));
  EXPECT_TRUE(has(raw_verdict(tsp, Tour{{0, 4, 3, 2, 9}}), "node"));

  const auto vrp = fixtures::vrp_instance();
  EXPECT_TRUE(verdict(vrp, Routes{{{1, 2}, {3, 4}, {}, {}, {}}}).feasible);
  EXPECT_TRUE(has(verdict(vrp, Routes{{{1}, {2}, {3}, {4}, {}, {}}}), "fleet"));
  EXPECT_TRUE(verdict(vrp, Routes{{{1, 2, 3, 4}}}).feasible);
  EXPECT_TRUE(has(verdict(vrp, Routes{{{1, 2, 3}, {}, {}, {}, {}}}), "coverage"));
  EXPECT_TRUE(has(verdict(vrp, Routes{{{1, 2, 3, 4, 1}, {}, {}, {}, {}}}), "revisit"));
  EXPECT_TRUE(has(raw_verdict(vrp, Routes{{{0, 1, 2, 3, 4}, {}, {}, {}, {}}}), "node"));
  auto tight = vrp;
  std::get<RoutingInstance>(tight.data).capacity = 60;
  EXPECT_TRUE(has(verdict(tight, Routes{{{1, 2, 3, 4}, {}, {}, {}, {}}}), "capacity"));
  EXPECT_TRUE(verdict(tight, Routes{{{1, 2, 3}, {4}, {}, {}, {}}}).feasible);
}

TEST(Feasibility, KnapsackAndBinPacking) {
  const auto ks = fixtures::knapsack_instance();
  EXPECT_TRUE(verdict(ks, Picks{{}}).feasible);
  EXPECT_EQ(objective_value(ks, Picks{{}}), 0);
  EXPECT_TRUE(has(verdict(ks, Picks{{0, 0}}), "duplicate"));
  EXPECT_TRUE(has(raw_verdict(ks, Picks{{5}}), "item"));
  auto small = ks;
  std::get<KnapsackInstance>(small.data).capacity = 19;
  EXPECT_TRUE(has(verdict(small, Picks{{0, 1, 2, 3, 4}}), "capacity"));

  const auto bp = fixtures::binpack_instance();
  EXPECT_TRUE(verdict(bp, Packing{{{0}, {1}, {2}, {3}, {4}}}).feasible);
  EXPECT_EQ(objective_value(bp, Packing{{{0}, {1}, {2}, {3}, {4}}}), 5);
  EXPECT_TRUE(has(verdict(bp, Packing{{{0, 1, 2, 3, 4}}}), "capacity"));
  EXPECT_TRUE(has(verdict(bp, Packing{{{0, 1, 2}, {4}}}), "assignment"));
  EXPECT_TRUE(has(verdict(bp, Packing{{{0, 1, 2, 3}, {4, 0}}}), "duplicate"));
  EXPECT_TRUE(has(raw_verdict(bp, Packing{{{0, 1, 2, 3}, {4, 7}}}), "item"));
}

TEST(Feasibility, Shops) {
  const auto js = fixtures::jssp_instance();
  auto sched = fixtures::jssp_schedule();
  sched.ops[11].start = 800;  // last operation delayed: slower but feasible
  EXPECT_TRUE(verdict(js, sched).feasible);

  sched = fixtures::jssp_schedule();
  sched.ops[3].start = 100;  // J0-M1 overlaps its predecessor J0-M2
  EXPECT_TRUE(has(verdict(js, sched), "precedence"));

  sched = fixtures::jssp_schedule();
  sched.ops[4].start = 200;  // J1-M2 overlaps J0-M2 and precedes J1-M4's end
  const auto v = verdict(js, sched);
  EXPECT_TRUE(has(v, "machine_conflict") || has(v, "precedence"));

  sched = fixtures::jssp_schedule();
  sched.ops.pop_back();
  EXPECT_TRUE(has(verdict(js, sched), "coverage"));
  sched = fixtures::jssp_schedule();
  sched.ops[0].duration = 200;
  EXPECT_TRUE(has(verdict(js, sched), "duration"));

  const auto fs = fixtures::fssp_instance();
  EXPECT_TRUE(has(verdict(fs, Permutation{{2, 1, 3}}), "sequence"));
  EXPECT_TRUE(has(verdict(fs, Permutation{{2, 1, 3, 3}}), "sequence"));
  EXPECT_TRUE(has(raw_verdict(fs, Permutation{{2, 1, 3, 4}}), "job"));
}

TEST(Feasibility, StoredObjectiveMustMatch) {
  auto ex = fixtures::examples()[3];
  ex.solution.objective = 180;
  EXPECT_TRUE(has(check_feasible(ex.instance, ex.solution), "objective"));
  EXPECT_THROW(check_feasible(ex.instance, Solution{Picks{{0}}, 0}), Error);
}

TEST(FlowShop, CompletionRecurrence) {
  const auto inst = fixtures::fssp_instance();
  const auto& fs = inst.shop();
  const auto c = flow_shop_completions(fs, {2, 1, 3, 0});
  EXPECT_EQ(c[0], (std::vector<std::int64_t>{4, 19}));
  EXPECT_EQ(c[3], (std::vector<std::int64_t>{29, 39}));
  EXPECT_EQ(flow_shop_makespan(fs, {0, 1, 2, 3}), 48);
  std::vector<int> perm = {0, 1, 2, 3};
  std::int64_t best = INT64_MAX;
  do best = std::min(best, flow_shop_makespan(fs, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(best, 39);
  const auto sched = flow_shop_schedule(fs, {2, 1, 3, 0});
  const ProblemInstance as_job_shop{[&] {
    auto j = fs;
    j.kind = ProblemKind::Jssp;
    return j;
  }()};
  EXPECT_TRUE(verdict(as_job_shop, sched).feasible);
}

TEST(InstanceChecks, StructuralErrors) {
  auto r = fixtures::vrp_instance();
  std::get<RoutingInstance>(r.data).demands.pop_back();
  EXPECT_THROW(validate_instance(r), Error);
  auto k = fixtures::knapsack_instance();
  std::get<KnapsackInstance>(k.data).items[0].weight = -1;
  EXPECT_THROW(validate_instance(k), Error);
  auto s = fixtures::fssp_instance();
  std::get<ShopInstance>(s.data).ops[0][1].machine = 0;
  EXPECT_THROW(validate_instance(s), Error);
  for (const auto& ex : fixtures::examples()) EXPECT_NO_THROW(validate_instance(ex.instance)) << ex.name;
}

TEST(Json, RoundTrips) {
  for (const auto& ex : fixtures::examples()) {
    const auto ij = instance_to_json(ex.instance);
    EXPECT_EQ(ij["problem"], std::string(kind_name(ex.instance.kind())));
    EXPECT_EQ(instance_from_json(ij), ex.instance) << ex.name;
    EXPECT_EQ(instance_from_json(nlohmann::json::parse(ij.dump())), ex.instance) << ex.name;
    const auto sj = solution_to_json(ex.instance.kind(), ex.solution);
    EXPECT_EQ(sj["objective"], ex.objective);
    EXPECT_EQ(solution_from_json(sj), ex.solution) << ex.name;
  }
  EXPECT_THROW(instance_from_json(nlohmann::json{{"problem", "tsp"}}), Error);
  EXPECT_THROW(instance_from_json(nlohmann::json{{"problem", "nope"}}), Error);
}
