#include <gtest/gtest.h>

#include "accord/codec.hpp"
#include "accord/solvers.hpp"
#include "fixtures.hpp"

using namespace accord;

namespace {

const fixtures::Example& example(const std::string& name) {
  static const auto all = fixtures::examples();
  for (const auto& e : all)
    if (e.name == name) return e;
  throw std::runtime_error("no example " + name);
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  if (pos == std::string::npos) throw std::runtime_error("pattern not found: " + from);
  return text.replace(pos, from.size(), to);
}

}  // namespace

class ExampleTexts : public ::testing::TestWithParam<std::string> {};

TEST_P(ExampleTexts, RenderIsBitExact) {
  const auto& e = example(GetParam());
  EXPECT_EQ(render_accord(e.instance, e.solution), e.accord_text);
  EXPECT_EQ(render_list(e.instance, e.solution), e.list_text);
}

TEST_P(ExampleTexts, BothFormatsValidate) {
  const auto& e = example(GetParam());
  for (auto format : {TextFormat::Accord, TextFormat::List}) {
    const auto text = format == TextFormat::Accord ? e.accord_text : e.list_text;
    const auto rep = validate_text(text, e.instance, format);
    ASSERT_EQ(rep.status, Status::Feasible) << format_name(format) << ": "
                                            << (rep.errors.empty() ? "" : rep.errors.front().detail);
    EXPECT_EQ(rep.objective, e.objective);
  }
}

TEST_P(ExampleTexts, ObjectiveAndFeasibility) {
  const auto& e = example(GetParam());
  EXPECT_EQ(objective_value(e.instance, e.solution), e.objective);
  EXPECT_TRUE(check_feasible(e.instance, e.solution).feasible);
}

TEST_P(ExampleTexts, WhitespaceTolerant) {
  const auto& e = example(GetParam());
  std::string spaced;
  for (char c : e.accord_text) {
    spaced += c;
    if (c == '\n') spaced += "  \t";
  }
  EXPECT_TRUE(validate_accord(spaced, e.instance).feasible());
}

INSTANTIATE_TEST_SUITE_P(All, ExampleTexts,
                         ::testing::Values("knapsack", "binpacking", "vrp", "tsp", "jssp", "fssp"));

TEST(AccordParse, KnapsackTrace) {
  const auto trace = parse_accord(example("knapsack").accord_text, ProblemKind::Knapsack);
  ASSERT_EQ(trace.steps.size(), 5u);
  const auto& last = std::get<KnapsackStep>(trace.steps.back());
  EXPECT_EQ(last.prev_value, 29);
  EXPECT_EQ(last.new_weight, 20);
  EXPECT_EQ(trace.totals.value, 30);
  EXPECT_EQ(trace.totals.weight_bound, 20);
}

TEST(AccordParse, MalformedReportsLocation) {
  const auto rep = validate_accord("Solution:\n[[6, 5] -> value:0+6=6 weight", example("knapsack").instance);
  EXPECT_EQ(rep.status, Status::Malformed);
  ASSERT_TRUE(rep.malformed_at.has_value());
  EXPECT_EQ(rep.malformed_at->line, 2u);
  EXPECT_GT(rep.malformed_at->column, 1u);
}

TEST(AccordParse, LeadingZerosRejected) {
  const auto& e = example("binpacking");
  const auto rep = validate_accord(replace_once(e.accord_text, "->17", "->017"), e.instance);
  EXPECT_EQ(rep.status, Status::Malformed);
}

TEST(AccordParse, TrailingGarbageRejected) {
  const auto& e = example("tsp");
  EXPECT_EQ(validate_accord(e.accord_text + " x", e.instance).status, Status::Malformed);
}

TEST(AccordValidate, KnapsackArithmeticSlipIsLocated) {
  const auto& e = example("knapsack");
  const auto rep = validate_accord(replace_once(e.accord_text, "value:16+7=23", "value:16+7=24"), e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  const auto* f = rep.first(FindingCode::ArithmeticMismatch);
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->step, 3u);
}

TEST(AccordValidate, KnapsackChainSlipAtSecondStep) {
  const auto& e = example("knapsack");
  const auto rep = validate_accord(replace_once(e.accord_text, "value:6+10=16", "value:6+10=17"), e.instance);
  ASSERT_TRUE(rep.has(FindingCode::ArithmeticMismatch));
  EXPECT_EQ(rep.first(FindingCode::ArithmeticMismatch)->step, 2u);
}

TEST(AccordValidate, BinWeightPushedOverCapacity) {
  const auto& e = example("binpacking");
  auto inst = e.instance;
  std::get<BinPackInstance>(inst.data).weights[3] = 25;
  const auto text = replace_once(e.accord_text, "(3, 11)->71", "(3, 25)->85");
  const auto rep = validate_accord(text, inst);
  ASSERT_TRUE(rep.has(FindingCode::CapacityViolation));
  EXPECT_EQ(rep.first(FindingCode::CapacityViolation)->step, 4u);
}

TEST(ListValidate, DeclaredDistanceOffByOne) {
  const auto& e = example("tsp");
  const auto rep = validate_list(replace_once(e.list_text, "Distance: 181", "Distance: 182"), ProblemKind::Tsp, e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  EXPECT_TRUE(rep.has(FindingCode::DeclaredTotalMismatch));
}

TEST(ListValidate, EmptyListIsIncomplete) {
  const auto& e = example("jssp");
  const auto rep = validate_list("[]\nMaximum end completion time or Makespan: 0", ProblemKind::Jssp, e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  EXPECT_TRUE(rep.has(FindingCode::Incomplete));
}

TEST(AccordParse, EmptyInputMalformedAtStart) {
  const auto rep = validate_accord("", example("fssp").instance);
  EXPECT_EQ(rep.status, Status::Malformed);
  EXPECT_EQ(rep.malformed_at->line, 1u);
  EXPECT_EQ(rep.malformed_at->column, 1u);
}

TEST(AccordParse, StepCounts) {
  EXPECT_EQ(parse_accord(example("fssp").accord_text, ProblemKind::Fssp).steps.size(), 4u);
  const auto j = parse_accord(example("jssp").accord_text, ProblemKind::Jssp);
  EXPECT_EQ(j.steps.size(), 12u);
  EXPECT_EQ(j.totals.makespan, 781);
}

TEST(AccordValidate, KnapsackOverCapacity) {
  KnapsackInstance k{{{6, 5}, {10, 8}, {7, 4}, {6, 2}, {1, 1}}, 19};
  const ProblemInstance inst{k};
  std::string t = example("knapsack").accord_text;
  for (std::size_t p; (p = t.find("<=20")) != std::string::npos;) t.replace(p, 4, "<=19");
  const auto rep = validate_accord(t, inst);
  EXPECT_EQ(rep.status, Status::Infeasible);
  ASSERT_TRUE(rep.has(FindingCode::CapacityViolation));
  EXPECT_EQ(rep.first(FindingCode::CapacityViolation)->step, 5u);
}

TEST(AccordValidate, KnapsackDuplicateItem) {
  const auto& e = example("knapsack");
  const auto text = replace_once(e.accord_text, "[[10, 8] -> value:6+10=16, weight:5+8=13<=20]",
                                 "[[6, 5] -> value:6+6=12, weight:5+5=10<=20]");
  const auto rep = validate_accord(text, e.instance);
  ASSERT_TRUE(rep.has(FindingCode::DuplicateItem));
  EXPECT_EQ(rep.first(FindingCode::DuplicateItem)->step, 2u);
}

TEST(AccordValidate, RoutingWrongLeg) {
  const auto& e = example("tsp");
  const auto rep = validate_accord(replace_once(e.accord_text, "+ 36", "+ 35"), e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  ASSERT_TRUE(rep.has(FindingCode::DistanceMismatch));
  EXPECT_EQ(rep.first(FindingCode::DistanceMismatch)->step, 4u);
}

TEST(AccordValidate, RoutingWrongCoordinate) {
  const auto& e = example("tsp");
  const auto rep = validate_accord(replace_once(e.accord_text, "(3): (3, 29)", "(3): (3, 28)"), e.instance);
  ASSERT_TRUE(rep.has(FindingCode::CoordinateMismatch));
  EXPECT_EQ(rep.first(FindingCode::CoordinateMismatch)->step, 3u);
}

TEST(AccordValidate, VrpOverload) {
  auto inst = example("vrp").instance;
  std::get<RoutingInstance>(inst.data).capacity = 79;
  const auto rep = validate_accord(example("vrp").accord_text, inst);
  EXPECT_EQ(rep.status, Status::Infeasible);
  EXPECT_TRUE(rep.has(FindingCode::CapacityViolation));
}

TEST(AccordValidate, TspMissingCustomer) {
  const auto& e = example("tsp");
  const auto text = replace_once(e.accord_text, " -> (1): (63, 8) + 66 -> (0): (17, 22) + 48", " -> (0): (17, 22) + 26");
  const auto rep = validate_accord(replace_once(text, "Distance: 181", "Distance: 93"), e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  EXPECT_TRUE(rep.has(FindingCode::Incomplete));
}

TEST(AccordValidate, BinOverflowAndCount) {
  const auto& e = example("binpacking");
  auto inst = e.instance;
  std::get<BinPackInstance>(inst.data).capacity = 70;
  std::string t = e.accord_text;
  for (std::size_t p; (p = t.find("<=77")) != std::string::npos;) t.replace(p, 4, "<=70");
  const auto rep = validate_accord(t, inst);
  ASSERT_TRUE(rep.has(FindingCode::CapacityViolation));
  EXPECT_EQ(rep.first(FindingCode::CapacityViolation)->step, 4u);

  const auto count = validate_accord(replace_once(e.accord_text, "required: 2", "required: 3"), e.instance);
  EXPECT_TRUE(count.has(FindingCode::DeclaredTotalMismatch));
}

TEST(AccordValidate, JsspMachineConflict) {
  const auto& e = example("jssp");
  ShopInstance s = e.instance.shop();
  s.ops[1][0].machine = 2;  // J1 now starts on M2, clashing with J0
  s.ops[1][2].machine = 3;
  const ProblemInstance inst{s};
  std::string t = replace_once(e.accord_text, "J1-M3: 0+179", "J1-M2: 0+179");
  t = replace_once(t, "J1-M2: 287+82", "J1-M3: 287+82");
  const auto rep = validate_accord(t, inst);
  ASSERT_TRUE(rep.has(FindingCode::MachineConflict));
  EXPECT_EQ(rep.first(FindingCode::MachineConflict)->step, 2u);
}

TEST(AccordValidate, JsspPrecedence) {
  const auto& e = example("jssp");
  const auto rep = validate_accord(replace_once(e.accord_text, "J1-M4: 179+108 -> 287", "J1-M4: 170+108 -> 278"),
                                   e.instance);
  EXPECT_TRUE(rep.has(FindingCode::PrecedenceViolation));
}

TEST(AccordValidate, FsspRecurrence) {
  const auto& e = example("fssp");
  const auto rep = validate_accord(replace_once(e.accord_text, "M2(19+4=23)", "M2(18+4=22)"), e.instance);
  EXPECT_EQ(rep.status, Status::Infeasible);
  EXPECT_TRUE(rep.has(FindingCode::MachineConflict) || rep.has(FindingCode::PrecedenceViolation));
}

TEST(AccordValidate, KindMismatch) {
  const auto trace = parse_accord(example("tsp").accord_text, ProblemKind::Tsp);
  const auto rep = validate_trace(trace, example("vrp").instance);
  EXPECT_TRUE(rep.has(FindingCode::KindMismatch));
}

TEST(ListValidate, Mutations) {
  const auto& k = example("knapsack");
  EXPECT_EQ(validate_list(replace_once(k.list_text, "=30", "=31"), ProblemKind::Knapsack, k.instance).status,
            Status::Infeasible);
  EXPECT_EQ(validate_list(replace_once(k.list_text, "(7, 4)", "(7, 5)"), ProblemKind::Knapsack, k.instance).status,
            Status::Infeasible);
  const auto& b = example("binpacking");
  EXPECT_TRUE(validate_list(replace_once(b.list_text, "[4]", "[3]"), ProblemKind::BinPacking, b.instance)
                  .has(FindingCode::DuplicateItem));
  const auto& f = example("fssp");
  EXPECT_EQ(validate_list(replace_once(f.list_text, "[2, 2, 19, 4]", "[2, 2, 18, 4]"), ProblemKind::Fssp,
                          f.instance)
                .status,
            Status::Infeasible);
  const auto& j = example("jssp");
  EXPECT_TRUE(validate_list(replace_once(j.list_text, "[1, 4, 179, 108]", "[1, 4, 100, 108]"), ProblemKind::Jssp,
                            j.instance)
                  .has(FindingCode::PrecedenceViolation));
  EXPECT_EQ(validate_list("[[0, 2, 0, 205]", ProblemKind::Jssp, j.instance).status, Status::Malformed);
}

TEST(ListValidate, EmptyKnapsack) {
  const auto& k = example("knapsack");
  const ProblemInstance inst = k.instance;
  const Solution empty{Picks{}, 0};
  const auto text = render_list(inst, empty);
  EXPECT_EQ(text, "Solution: []\n  Value: 0=0\n  Weight: 0=0<=20");
  const auto rep = validate_list(text, ProblemKind::Knapsack, inst);
  EXPECT_TRUE(rep.feasible());
  EXPECT_EQ(rep.objective, 0);
  const auto accord = render_accord(inst, empty);
  EXPECT_TRUE(validate_accord(accord, inst).feasible());
}

TEST(OrderedSchedule, FlowShopMatchesExample) {
  const auto& e = example("fssp");
  const auto ops = ordered_schedule(e.instance, e.solution);
  ASSERT_EQ(ops.size(), 8u);
  EXPECT_EQ(ops[2].job, 1);
  EXPECT_EQ(ops[2].machine, 0);
  EXPECT_EQ(ops[3].job, 3);
}
