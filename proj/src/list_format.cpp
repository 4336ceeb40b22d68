#include <algorithm>
#include <limits>

#include "accord/codec.hpp"
#include "scanner.hpp"

namespace accord {

namespace {

using detail::Scanner;

constexpr std::string_view kMakespanLabel = "Maximum end completion time or Makespan:";

std::string num(std::int64_t v) { return std::to_string(v); }

struct NodeRef {
  std::int64_t node = 0;
  Point at;
};

struct Quad {
  std::int64_t job = 0, machine = 0, start = 0, duration = 0;
};

std::vector<std::int64_t> parse_sum(Scanner& in, std::int64_t& declared) {
  std::vector<std::int64_t> terms{in.number()};
  while (in.accept("+")) terms.push_back(in.number());
  in.expect("=");
  declared = in.number();
  return terms;
}

NodeRef parse_node(Scanner& in) {
  NodeRef n;
  in.expect("(");
  n.node = in.number();
  in.expect(")");
  in.expect(":");
  in.expect("(");
  n.at.x = in.number();
  in.expect(",");
  n.at.y = in.number();
  in.expect(")");
  return n;
}

std::vector<Quad> parse_quads(Scanner& in) {
  std::vector<Quad> quads;
  in.expect("[");
  if (in.accept("]")) return quads;
  do {
    Quad q;
    in.expect("[");
    q.job = in.number();
    in.expect(",");
    q.machine = in.number();
    in.expect(",");
    q.start = in.number();
    in.expect(",");
    q.duration = in.number();
    in.expect("]");
    quads.push_back(q);
  } while (in.accept(","));
  in.expect("]");
  return quads;
}

FindingCode code_for(const std::string& constraint) {
  if (constraint == "capacity") return FindingCode::CapacityViolation;
  if (constraint == "coverage" || constraint == "assignment" || constraint == "sequence") return FindingCode::Incomplete;
  if (constraint == "precedence") return FindingCode::PrecedenceViolation;
  if (constraint == "machine_conflict") return FindingCode::MachineConflict;
  if (constraint == "duration") return FindingCode::DurationMismatch;
  if (constraint == "duplicate") return FindingCode::DuplicateItem;
  if (constraint == "item") return FindingCode::UnknownItem;
  if (constraint == "node") return FindingCode::UnknownNode;
  if (constraint == "revisit") return FindingCode::RevisitedNode;
  if (constraint == "operation") return FindingCode::UnknownOperation;
  if (constraint == "fleet") return FindingCode::TooManyRoutes;
  return FindingCode::ConstraintViolation;
}

class ListCheck {
 public:
  void error(FindingCode code, std::string detail) { report_.errors.push_back({0, code, std::move(detail)}); }

  void delegate(const ProblemInstance& instance, SolutionData data) {
    Solution sol{std::move(data), 0};
    auto verdict = check_feasible(instance, sol);
    for (const auto& v : verdict.violations) {
      if (v.constraint == "objective") continue;  // stored objective was a placeholder
      error(code_for(v.constraint), v.constraint + ": " + v.detail);
    }
    if (report_.errors.empty()) objective_ = objective_value(instance, sol);
  }

  void declared_total(std::int64_t declared, const char* label) {
    if (objective_ && *objective_ != declared)
      error(FindingCode::DeclaredTotalMismatch, std::string(label) + " " + num(declared) + " != " + num(*objective_));
  }

  void set_objective(std::int64_t v) { objective_ = v; }

  ValidationReport finish() {
    report_.status = report_.errors.empty() ? Status::Feasible : Status::Infeasible;
    report_.objective = objective_;
    return std::move(report_);
  }

 private:
  ValidationReport report_;
  std::optional<std::int64_t> objective_;
};

ValidationReport check_knapsack(Scanner& in, const KnapsackInstance& k, const ProblemInstance& instance) {
  in.expect("Solution:");
  in.expect("[");
  std::vector<KnapsackItem> pairs;
  if (!in.accept("]")) {
    do {
      KnapsackItem it;
      in.expect("(");
      it.value = in.number();
      in.expect(",");
      it.weight = in.number();
      in.expect(")");
      pairs.push_back(it);
    } while (in.accept(","));
    in.expect("]");
  }
  std::int64_t declared_value = 0, declared_weight = 0;
  in.expect("Value:");
  const auto value_terms = parse_sum(in, declared_value);
  in.expect("Weight:");
  const auto weight_terms = parse_sum(in, declared_weight);
  in.expect("<=");
  const auto bound = in.number();
  in.expect_end();

  ListCheck c;
  Picks picks;
  std::vector<bool> used(k.items.size(), false);
  for (const auto& p : pairs) {
    std::size_t match = k.items.size();
    bool exists = false;
    for (std::size_t j = 0; j < k.items.size(); ++j) {
      if (k.items[j] == p) {
        exists = true;
        if (!used[j]) {
          match = j;
          break;
        }
      }
    }
    if (match == k.items.size()) {
      c.error(exists ? FindingCode::DuplicateItem : FindingCode::UnknownItem,
              "(" + num(p.value) + ", " + num(p.weight) + ")");
      continue;
    }
    used[match] = true;
    picks.items.push_back(static_cast<int>(match));
  }
  auto check_terms = [&](const std::vector<std::int64_t>& terms, std::int64_t declared, bool values) {
    std::int64_t sum = 0;
    for (auto t : terms) sum += t;
    if (sum != declared) c.error(FindingCode::ArithmeticMismatch, "terms sum to " + num(sum) + ", declared " + num(declared));
    std::vector<std::int64_t> expected;
    for (const auto& p : pairs) expected.push_back(values ? p.value : p.weight);
    if (expected.empty()) expected.push_back(0);
    if (terms != expected) c.error(FindingCode::OperandMismatch, std::string(values ? "value" : "weight") + " terms differ from the listed items");
  };
  check_terms(value_terms, declared_value, true);
  check_terms(weight_terms, declared_weight, false);
  if (bound != k.capacity) c.error(FindingCode::BoundMismatch, "bound " + num(bound) + " but capacity is " + num(k.capacity));
  c.delegate(instance, std::move(picks));
  c.declared_total(declared_value, "Value");
  std::int64_t weight = 0;
  for (const auto& p : pairs) weight += p.weight;
  if (weight != declared_weight) c.error(FindingCode::DeclaredTotalMismatch, "Weight " + num(declared_weight) + " != " + num(weight));
  return c.finish();
}

ValidationReport check_binpack(Scanner& in, const ProblemInstance& instance) {
  in.expect("The minimum number of bins required is");
  const auto declared = in.number();
  in.expect(".");
  in.expect("The bin assignments are:");
  in.expect("[");
  Packing packing;
  if (!in.accept("]")) {
    do {
      std::vector<int> bin;
      in.expect("[");
      if (!in.accept("]")) {
        do {
          const auto id = in.number();
          if (id > std::numeric_limits<int>::max()) in.fail("item id");
          bin.push_back(static_cast<int>(id));
        } while (in.accept(","));
        in.expect("]");
      }
      packing.bins.push_back(std::move(bin));
    } while (in.accept(","));
    in.expect("]");
  }
  in.accept(".");
  in.expect_end();

  ListCheck c;
  for (std::size_t k = 0; k < packing.bins.size(); ++k)
    if (packing.bins[k].empty()) c.error(FindingCode::EmptyBin, "bin " + num(static_cast<std::int64_t>(k + 1)) + " is empty");
  c.delegate(instance, std::move(packing));
  c.declared_total(declared, "bin count");
  return c.finish();
}

ValidationReport check_routing(Scanner& in, const RoutingInstance& r, const ProblemInstance& instance) {
  std::vector<std::vector<NodeRef>> routes;
  if (!in.peek("[")) in.fail("'['");
  while (in.accept("[")) {
    std::vector<NodeRef> route;
    do {
      route.push_back(parse_node(in));
    } while (in.accept(","));
    in.expect("]");
    routes.push_back(std::move(route));
  }
  in.expect("Overall Total Distance:");
  const auto declared = in.number();
  in.expect_end();

  ListCheck c;
  std::vector<std::vector<int>> customers;
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const auto& route = routes[k];
    const std::string label = "route " + num(static_cast<std::int64_t>(k + 1));
    if (route.size() < 2 || route.front().node != 0 || route.back().node != 0)
      c.error(FindingCode::DepotMissing, label + " must start and end at the depot");
    std::vector<int> inner;
    for (std::size_t i = 0; i < route.size(); ++i) {
      const auto& n = route[i];
      if (n.node < 0 || static_cast<std::size_t>(n.node) >= r.size()) {
        c.error(FindingCode::UnknownNode, label + ": node " + num(n.node));
        continue;
      }
      if (r.points[static_cast<std::size_t>(n.node)] != n.at)
        c.error(FindingCode::CoordinateMismatch, label + ": node " + num(n.node) + " coordinates");
      const bool endpoint = i == 0 || i + 1 == route.size();
      if (!endpoint) {
        if (n.node == 0) {
          c.error(FindingCode::DepotMissing, label + " passes through the depot");
        } else {
          inner.push_back(static_cast<int>(n.node));
        }
      }
    }
    customers.push_back(std::move(inner));
  }
  if (r.kind == ProblemKind::Tsp) {
    if (customers.size() != 1) {
      c.error(FindingCode::TooManyRoutes, "TSP needs exactly one route");
      if (customers.empty()) customers.emplace_back();
    }
    std::vector<int> nodes{0};
    nodes.insert(nodes.end(), customers.front().begin(), customers.front().end());
    c.delegate(instance, Tour{std::move(nodes)});
  } else {
    c.delegate(instance, Routes{std::move(customers)});
  }
  c.declared_total(declared, "Overall Total Distance");
  return c.finish();
}

ValidationReport check_jssp(Scanner& in, const ProblemInstance& instance) {
  const auto quads = parse_quads(in);
  in.expect(kMakespanLabel);
  const auto declared = in.number();
  in.expect_end();
  ListCheck c;
  Schedule s;
  for (const auto& q : quads) {
    if (q.job > std::numeric_limits<int>::max() || q.machine > std::numeric_limits<int>::max()) {
      c.error(FindingCode::UnknownOperation, "index out of range");
      continue;
    }
    s.ops.push_back({static_cast<int>(q.job), static_cast<int>(q.machine), q.start, q.duration});
  }
  c.delegate(instance, std::move(s));
  c.declared_total(declared, "makespan");
  return c.finish();
}

// The list format spells out the schedule, so the permutation is read off the
// first machine and every start is checked against both flow-shop recurrences.
ValidationReport check_fssp(Scanner& in, const ShopInstance& shop) {
  const auto quads = parse_quads(in);
  in.expect(kMakespanLabel);
  const auto declared = in.number();
  in.expect_end();

  ListCheck c;
  const auto jobs = static_cast<std::size_t>(shop.jobs);
  const auto machines = static_cast<std::size_t>(shop.machines);
  std::vector<std::vector<std::optional<std::int64_t>>> start(jobs, std::vector<std::optional<std::int64_t>>(machines));
  for (const auto& q : quads) {
    if (q.job < 1 || q.job > shop.jobs || q.machine < 1 || q.machine > shop.machines) {
      c.error(FindingCode::UnknownOperation, "[" + num(q.job) + ", " + num(q.machine) + "] does not exist");
      continue;
    }
    const auto j = static_cast<std::size_t>(q.job - 1), k = static_cast<std::size_t>(q.machine - 1);
    if (start[j][k]) {
      c.error(FindingCode::DuplicateOperation, "J" + num(q.job) + "-M" + num(q.machine) + " listed twice");
      continue;
    }
    start[j][k] = q.start;
    if (q.duration != shop.duration(static_cast<int>(j), static_cast<int>(k)))
      c.error(FindingCode::DurationMismatch, "J" + num(q.job) + "-M" + num(q.machine) + " duration " + num(q.duration));
  }
  for (std::size_t j = 0; j < jobs; ++j)
    for (std::size_t k = 0; k < machines; ++k)
      if (!start[j][k]) c.error(FindingCode::Incomplete, "J" + num(static_cast<std::int64_t>(j + 1)) + "-M" + num(static_cast<std::int64_t>(k + 1)) + " missing");
  ValidationReport early = c.finish();
  if (!early.feasible()) return early;

  std::vector<int> perm(jobs);
  for (std::size_t j = 0; j < jobs; ++j) perm[j] = static_cast<int>(j);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return *start[static_cast<std::size_t>(a)][0] < *start[static_cast<std::size_t>(b)][0];
  });
  ListCheck d;
  std::int64_t makespan = 0;
  std::vector<std::int64_t> prev_end(machines, 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    std::int64_t job_ready = 0;
    for (std::size_t k = 0; k < machines; ++k) {
      const auto s = *start[j][k];
      const auto p = shop.duration(perm[i], static_cast<int>(k));
      const std::string tag = "J" + num(static_cast<std::int64_t>(j + 1)) + "-M" + num(static_cast<std::int64_t>(k + 1));
      if (s < job_ready) d.error(FindingCode::PrecedenceViolation, tag + " starts before the job leaves the previous machine");
      if (s < prev_end[k]) d.error(FindingCode::MachineConflict, tag + " starts before the previous job leaves the machine");
      job_ready = s + p;
      prev_end[k] = s + p;
      makespan = std::max(makespan, s + p);
    }
  }
  d.set_objective(makespan);
  d.declared_total(declared, "makespan");
  return d.finish();
}

}  // namespace

ValidationReport validate_list(std::string_view text, ProblemKind kind, const ProblemInstance& instance) {
  if (kind != instance.kind()) {
    ValidationReport rep;
    rep.status = Status::Infeasible;
    rep.errors.push_back({0, FindingCode::KindMismatch, "list text kind differs from instance kind"});
    return rep;
  }
  Scanner in(text);
  try {
    switch (kind) {
      case ProblemKind::Knapsack: return check_knapsack(in, instance.knapsack(), instance);
      case ProblemKind::BinPacking: return check_binpack(in, instance);
      case ProblemKind::Tsp:
      case ProblemKind::Vrp: return check_routing(in, instance.routing(), instance);
      case ProblemKind::Jssp: return check_jssp(in, instance);
      case ProblemKind::Fssp: return check_fssp(in, instance.shop());
    }
  } catch (const ParseError& e) {
    ValidationReport rep;
    rep.status = Status::Malformed;
    rep.malformed_at = SourceLocation{e.line(), e.column(), e.expected()};
    rep.errors.push_back({0, FindingCode::Malformed, e.what()});
    return rep;
  }
  return {};
}

}  // namespace accord
