#include <algorithm>
#include <map>

#include "accord/codec.hpp"

namespace accord {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string num(std::int64_t v) { return std::to_string(v); }

class Replay {
 public:
  explicit Replay(std::size_t steps) : end_step_(steps) {}

  // `step` is the 0-based step index, or the step count for end-of-trace checks.
  void error(std::size_t step, FindingCode code, std::string detail) {
    report_.errors.push_back({step >= end_step_ ? 0 : step + 1, code, std::move(detail)});
  }
  void end_error(FindingCode code, std::string detail) { error(end_step_, code, std::move(detail)); }

  ValidationReport finish(std::int64_t objective) {
    report_.status = report_.errors.empty() ? Status::Feasible : Status::Infeasible;
    report_.objective = objective;
    return std::move(report_);
  }

 private:
  std::size_t end_step_;
  ValidationReport report_;
};

ValidationReport replay_knapsack(const AccordTrace& trace, const KnapsackInstance& k) {
  Replay r(trace.steps.size());
  std::vector<bool> used(k.items.size(), false);
  std::int64_t value = 0, weight = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = std::get<KnapsackStep>(trace.steps[i]);
    // first unused item with the declared (value, weight) pair
    std::size_t match = k.items.size();
    bool exists = false;
    for (std::size_t j = 0; j < k.items.size(); ++j) {
      if (k.items[j].value == s.item_value && k.items[j].weight == s.item_weight) {
        exists = true;
        if (!used[j]) {
          match = j;
          break;
        }
      }
    }
    if (match == k.items.size()) {
      r.error(i, exists ? FindingCode::DuplicateItem : FindingCode::UnknownItem,
              "[" + num(s.item_value) + ", " + num(s.item_weight) + "]" +
                  (exists ? " already packed" : " is not an item of the instance"));
    } else {
      used[match] = true;
    }
    if (s.prev_value != value)
      r.error(i, FindingCode::ChainMismatch, "value starts at " + num(s.prev_value) + ", running value is " + num(value));
    if (s.prev_weight != weight)
      r.error(i, FindingCode::ChainMismatch,
              "weight starts at " + num(s.prev_weight) + ", running weight is " + num(weight));
    if (s.add_value != s.item_value)
      r.error(i, FindingCode::OperandMismatch, "adds value " + num(s.add_value) + " for item value " + num(s.item_value));
    if (s.add_weight != s.item_weight)
      r.error(i, FindingCode::OperandMismatch,
              "adds weight " + num(s.add_weight) + " for item weight " + num(s.item_weight));
    if (s.prev_value + s.add_value != s.new_value)
      r.error(i, FindingCode::ArithmeticMismatch,
              num(s.prev_value) + "+" + num(s.add_value) + "=" + num(s.new_value));
    if (s.prev_weight + s.add_weight != s.new_weight)
      r.error(i, FindingCode::ArithmeticMismatch,
              num(s.prev_weight) + "+" + num(s.add_weight) + "=" + num(s.new_weight));
    if (s.bound != k.capacity)
      r.error(i, FindingCode::BoundMismatch, "bound " + num(s.bound) + " but capacity is " + num(k.capacity));
    value += s.item_value;
    weight += s.item_weight;
    if (weight > k.capacity || s.new_weight > k.capacity)
      r.error(i, FindingCode::CapacityViolation,
              "weight " + num(std::max(weight, s.new_weight)) + " exceeds " + num(k.capacity));
  }
  const auto& t = trace.totals;
  if (t.value != value)
    r.end_error(FindingCode::DeclaredTotalMismatch, "Total Value " + num(t.value.value_or(-1)) + " != " + num(value));
  if (t.weight != weight)
    r.end_error(FindingCode::DeclaredTotalMismatch, "Total Weight " + num(t.weight.value_or(-1)) + " != " + num(weight));
  if (t.weight_bound != k.capacity)
    r.end_error(FindingCode::BoundMismatch, "Total Weight bound differs from capacity " + num(k.capacity));
  return r.finish(value);
}

ValidationReport replay_binpack(const AccordTrace& trace, const BinPackInstance& b) {
  Replay r(trace.steps.size());
  std::vector<bool> packed(b.weights.size(), false);
  std::size_t next_header = 0;  // headers before this one have been opened
  std::int64_t load = 0;

  auto open_bins_through = [&](std::size_t header, std::size_t step, bool at_end) {
    for (; next_header <= header && next_header < trace.bin_headers.size(); ++next_header) {
      const auto declared = trace.bin_headers[next_header];
      if (declared != static_cast<std::int64_t>(next_header + 1))
        r.error(step, FindingCode::BinNumbering,
                "bin header " + num(declared) + " at position " + num(static_cast<std::int64_t>(next_header + 1)));
      if (next_header < header || at_end)
        r.error(step, FindingCode::EmptyBin, "bin " + num(declared) + " is empty");
    }
  };

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = std::get<BinStep>(trace.steps[i]);
    if (s.header + 1 > next_header) {
      open_bins_through(s.header, i, false);
      load = 0;
    }
    std::int64_t weight = s.weight;
    if (s.item < 0 || static_cast<std::size_t>(s.item) >= b.weights.size()) {
      r.error(i, FindingCode::UnknownItem, "item " + num(s.item) + " does not exist");
    } else {
      const auto id = static_cast<std::size_t>(s.item);
      if (packed[id]) r.error(i, FindingCode::DuplicateItem, "item " + num(s.item) + " already packed");
      packed[id] = true;
      if (b.weights[id] != s.weight)
        r.error(i, FindingCode::WeightMismatch,
                "item " + num(s.item) + " weighs " + num(b.weights[id]) + ", declared " + num(s.weight));
      weight = b.weights[id];
    }
    if (load + s.weight != s.cumulative)
      r.error(i, FindingCode::ArithmeticMismatch,
              "bin load " + num(load) + " + " + num(s.weight) + " declared as " + num(s.cumulative));
    load += weight;
    if (load > b.capacity || s.cumulative > b.capacity)
      r.error(i, FindingCode::CapacityViolation,
              "bin " + num(s.bin) + " load " + num(std::max(load, s.cumulative)) + " exceeds " + num(b.capacity));
    if (s.bound && *s.bound != b.capacity)
      r.error(i, FindingCode::BoundMismatch, "bound " + num(*s.bound) + " but capacity is " + num(b.capacity));
  }
  if (next_header < trace.bin_headers.size()) open_bins_through(trace.bin_headers.size() - 1, trace.steps.size(), true);
  for (std::size_t id = 0; id < packed.size(); ++id)
    if (!packed[id]) r.end_error(FindingCode::Incomplete, "item " + num(static_cast<std::int64_t>(id)) + " not packed");
  const auto bins = static_cast<std::int64_t>(trace.bin_headers.size());
  if (trace.totals.bins != bins)
    r.end_error(FindingCode::DeclaredTotalMismatch,
                "Total bins required " + num(trace.totals.bins.value_or(-1)) + " != " + num(bins));
  return r.finish(bins);
}

ValidationReport replay_routing(const AccordTrace& trace, const RoutingInstance& inst) {
  Replay r(trace.steps.size());
  const bool capacitated = inst.kind == ProblemKind::Vrp;
  std::vector<bool> visited(inst.size(), false);
  std::int64_t total = 0;
  std::int64_t load = 0;
  std::size_t route = static_cast<std::size_t>(-1);
  Point prev;
  bool closed = true;

  auto close_route = [&](std::size_t step) {
    if (!closed) r.error(step, FindingCode::RouteNotClosed, "route " + num(static_cast<std::int64_t>(route + 1)) + " does not return to the depot");
  };

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = std::get<RouteStep>(trace.steps[i]);
    const bool known = s.node >= 0 && static_cast<std::size_t>(s.node) < inst.size();
    if (!known) r.error(i, FindingCode::UnknownNode, "node " + num(s.node) + " does not exist");
    if (known && inst.points[static_cast<std::size_t>(s.node)] != s.at)
      r.error(i, FindingCode::CoordinateMismatch, "node " + num(s.node) + " is not at (" + num(s.at.x) + ", " + num(s.at.y) + ")");

    if (s.route != route) {  // route head
      if (route != static_cast<std::size_t>(-1)) close_route(i - 1);
      route = s.route;
      load = 0;
      closed = false;
      if (s.route >= static_cast<std::size_t>(inst.vehicle_count))
        r.error(i, FindingCode::TooManyRoutes,
                "route " + num(static_cast<std::int64_t>(s.route + 1)) + " exceeds " + num(inst.vehicle_count) + " vehicles");
      if (s.node != 0) r.error(i, FindingCode::DepotMissing, "route must start at the depot");
      if (s.leg) r.error(i, FindingCode::Malformed, "route head carries a leg distance");
      prev = s.at;
      continue;
    }
    const auto leg = truncated_euclidean(prev, s.at);
    if (!s.leg || *s.leg != leg)
      r.error(i, FindingCode::DistanceMismatch, "leg declared " + num(s.leg.value_or(-1)) + ", distance is " + num(leg));
    total += leg;
    prev = s.at;
    if (s.node == 0) {
      if (closed) r.error(i, FindingCode::DepotMissing, "route continues after returning to the depot");
      closed = true;
      continue;
    }
    if (closed) r.error(i, FindingCode::DepotMissing, "route continues after returning to the depot");
    if (!known) continue;
    const auto node = static_cast<std::size_t>(s.node);
    if (visited[node]) r.error(i, FindingCode::RevisitedNode, "node " + num(s.node) + " visited again");
    visited[node] = true;
    if (capacitated) {
      load += inst.demands[node];
      if (load > inst.capacity)
        r.error(i, FindingCode::CapacityViolation, "route load " + num(load) + " exceeds " + num(inst.capacity));
    }
  }
  if (route != static_cast<std::size_t>(-1)) close_route(trace.steps.size() - 1);
  if (trace.route_count == 0) r.end_error(FindingCode::Incomplete, "no routes");
  for (std::size_t node = 1; node < visited.size(); ++node)
    if (!visited[node]) r.end_error(FindingCode::Incomplete, "node " + num(static_cast<std::int64_t>(node)) + " not visited");
  if (trace.totals.distance != total)
    r.end_error(FindingCode::DeclaredTotalMismatch,
                "Overall Total Distance " + num(trace.totals.distance.value_or(-1)) + " != " + num(total));
  return r.finish(total);
}

ValidationReport replay_jssp(const AccordTrace& trace, const ShopInstance& shop) {
  Replay r(trace.steps.size());
  const auto jobs = static_cast<std::size_t>(shop.jobs);
  std::vector<std::size_t> next(jobs, 0);
  std::vector<std::int64_t> job_ready(jobs, 0);
  std::vector<std::int64_t> machine_ready(static_cast<std::size_t>(shop.machines), 0);
  std::int64_t makespan = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = std::get<JobShopStep>(trace.steps[i]);
    const std::string tag = "J" + num(s.job) + "-M" + num(s.machine);
    if (s.start + s.duration != s.end)
      r.error(i, FindingCode::ArithmeticMismatch, tag + ": " + num(s.start) + "+" + num(s.duration) + " -> " + num(s.end));
    makespan = std::max(makespan, s.start + s.duration);
    if (s.job < 0 || s.job >= shop.jobs || s.machine < 0 || s.machine >= shop.machines) {
      r.error(i, FindingCode::UnknownOperation, tag + " does not exist");
      continue;
    }
    const auto j = static_cast<std::size_t>(s.job);
    const auto& route = shop.ops[j];
    std::size_t k = route.size();
    for (std::size_t q = 0; q < route.size(); ++q)
      if (route[q].machine == s.machine) k = q;
    if (k == route.size()) {
      r.error(i, FindingCode::UnknownOperation, tag + " is not an operation of the job");
      continue;
    }
    if (k < next[j]) {
      r.error(i, FindingCode::DuplicateOperation, tag + " already scheduled");
      continue;
    }
    if (k > next[j])
      r.error(i, FindingCode::PrecedenceViolation,
              tag + " listed before J" + num(s.job) + "-M" + num(route[next[j]].machine));
    if (s.duration != route[k].duration)
      r.error(i, FindingCode::DurationMismatch, tag + " takes " + num(route[k].duration) + ", declared " + num(s.duration));
    const auto m = static_cast<std::size_t>(s.machine);
    if (s.start < job_ready[j])
      r.error(i, FindingCode::PrecedenceViolation, tag + " starts at " + num(s.start) + " before job ready at " + num(job_ready[j]));
    if (s.start < machine_ready[m])
      r.error(i, FindingCode::MachineConflict, tag + " starts at " + num(s.start) + " before machine free at " + num(machine_ready[m]));
    const auto end = s.start + route[k].duration;
    job_ready[j] = std::max(job_ready[j], end);
    machine_ready[m] = std::max(machine_ready[m], end);
    next[j] = k + 1;
  }
  for (std::size_t j = 0; j < jobs; ++j)
    for (std::size_t k = next[j]; k < shop.ops[j].size(); ++k)
      r.end_error(FindingCode::Incomplete, "J" + num(static_cast<std::int64_t>(j)) + "-M" + num(shop.ops[j][k].machine) + " not scheduled");
  if (trace.totals.makespan != makespan)
    r.end_error(FindingCode::DeclaredTotalMismatch,
                "makespan " + num(trace.totals.makespan.value_or(-1)) + " != " + num(makespan));
  return r.finish(makespan);
}

ValidationReport replay_fssp(const AccordTrace& trace, const ShopInstance& shop) {
  Replay r(trace.steps.size());
  std::vector<bool> seen(static_cast<std::size_t>(shop.jobs), false);
  std::vector<std::int64_t> machine_ready(static_cast<std::size_t>(shop.machines), 0);
  std::int64_t makespan = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = std::get<FlowShopStep>(trace.steps[i]);
    const bool known = s.job >= 1 && s.job <= shop.jobs;
    if (!known) r.error(i, FindingCode::UnknownOperation, "job J" + num(s.job) + " does not exist");
    if (known) {
      const auto j = static_cast<std::size_t>(s.job - 1);
      if (seen[j]) r.error(i, FindingCode::DuplicateOperation, "job J" + num(s.job) + " sequenced twice");
      seen[j] = true;
    }
    if (s.machines.size() != static_cast<std::size_t>(shop.machines))
      r.error(i, FindingCode::Incomplete,
              "J" + num(s.job) + " lists " + num(static_cast<std::int64_t>(s.machines.size())) + " of " + num(shop.machines) + " machines");
    std::int64_t job_ready = 0;
    for (std::size_t k = 0; k < s.machines.size(); ++k) {
      const auto& m = s.machines[k];
      const std::string tag = "J" + num(s.job) + "-M" + num(m.machine);
      if (m.start + m.duration != m.end)
        r.error(i, FindingCode::ArithmeticMismatch, tag + ": " + num(m.start) + "+" + num(m.duration) + "=" + num(m.end));
      if (m.machine != static_cast<std::int64_t>(k + 1)) {
        r.error(i, FindingCode::MachineOrder, tag + " at position " + num(static_cast<std::int64_t>(k + 1)));
        continue;
      }
      if (k >= machine_ready.size()) continue;
      std::int64_t p = m.duration;
      if (known) {
        p = shop.duration(static_cast<int>(s.job - 1), static_cast<int>(k));
        if (p != m.duration) r.error(i, FindingCode::DurationMismatch, tag + " takes " + num(p) + ", declared " + num(m.duration));
      }
      if (m.start < job_ready)
        r.error(i, FindingCode::PrecedenceViolation, tag + " starts before the job leaves M" + num(static_cast<std::int64_t>(k)));
      if (m.start < machine_ready[k])
        r.error(i, FindingCode::MachineConflict, tag + " starts before the previous job leaves the machine");
      const auto end = m.start + p;
      job_ready = end;
      machine_ready[k] = std::max(machine_ready[k], end);
      makespan = std::max(makespan, end);
    }
  }
  for (std::size_t j = 0; j < seen.size(); ++j)
    if (!seen[j]) r.end_error(FindingCode::Incomplete, "job J" + num(static_cast<std::int64_t>(j + 1)) + " not sequenced");
  if (trace.totals.makespan != makespan)
    r.end_error(FindingCode::DeclaredTotalMismatch,
                "makespan " + num(trace.totals.makespan.value_or(-1)) + " != " + num(makespan));
  return r.finish(makespan);
}

ValidationReport malformed_report(const ParseError& e) {
  ValidationReport rep;
  rep.status = Status::Malformed;
  rep.malformed_at = SourceLocation{e.line(), e.column(), e.expected()};
  rep.errors.push_back({0, FindingCode::Malformed, e.what()});
  return rep;
}

}  // namespace

std::string_view status_name(Status status) {
  switch (status) {
    case Status::Feasible: return "Feasible";
    case Status::Infeasible: return "Infeasible";
    case Status::Malformed: return "Malformed";
  }
  return "Malformed";
}

std::string_view finding_name(FindingCode code) {
  switch (code) {
    case FindingCode::Malformed: return "Malformed";
    case FindingCode::KindMismatch: return "KindMismatch";
    case FindingCode::ArithmeticMismatch: return "ArithmeticMismatch";
    case FindingCode::ChainMismatch: return "ChainMismatch";
    case FindingCode::OperandMismatch: return "OperandMismatch";
    case FindingCode::BoundMismatch: return "BoundMismatch";
    case FindingCode::CapacityViolation: return "CapacityViolation";
    case FindingCode::UnknownItem: return "UnknownItem";
    case FindingCode::DuplicateItem: return "DuplicateItem";
    case FindingCode::WeightMismatch: return "WeightMismatch";
    case FindingCode::BinNumbering: return "BinNumbering";
    case FindingCode::EmptyBin: return "EmptyBin";
    case FindingCode::UnknownNode: return "UnknownNode";
    case FindingCode::CoordinateMismatch: return "CoordinateMismatch";
    case FindingCode::DistanceMismatch: return "DistanceMismatch";
    case FindingCode::RevisitedNode: return "RevisitedNode";
    case FindingCode::DepotMissing: return "DepotMissing";
    case FindingCode::RouteNotClosed: return "RouteNotClosed";
    case FindingCode::TooManyRoutes: return "TooManyRoutes";
    case FindingCode::UnknownOperation: return "UnknownOperation";
    case FindingCode::DuplicateOperation: return "DuplicateOperation";
    case FindingCode::DurationMismatch: return "DurationMismatch";
    case FindingCode::PrecedenceViolation: return "PrecedenceViolation";
    case FindingCode::MachineConflict: return "MachineConflict";
    case FindingCode::MachineOrder: return "MachineOrder";
    case FindingCode::Incomplete: return "Incomplete";
    case FindingCode::DeclaredTotalMismatch: return "DeclaredTotalMismatch";
    case FindingCode::ConstraintViolation: return "ConstraintViolation";
  }
  return "Unknown";
}

bool ValidationReport::has(FindingCode code) const { return first(code) != nullptr; }

const Finding* ValidationReport::first(FindingCode code) const {
  for (const auto& e : errors)
    if (e.code == code) return &e;
  return nullptr;
}

ValidationReport validate_trace(const AccordTrace& trace, const ProblemInstance& instance) {
  if (trace.kind != instance.kind()) {
    ValidationReport rep;
    rep.status = Status::Infeasible;
    rep.errors.push_back({0, FindingCode::KindMismatch,
                          std::string(kind_name(trace.kind)) + " trace for " + std::string(kind_name(instance.kind())) + " instance"});
    return rep;
  }
  switch (trace.kind) {
    case ProblemKind::Knapsack: return replay_knapsack(trace, instance.knapsack());
    case ProblemKind::BinPacking: return replay_binpack(trace, instance.binpack());
    case ProblemKind::Tsp:
    case ProblemKind::Vrp: return replay_routing(trace, instance.routing());
    case ProblemKind::Jssp: return replay_jssp(trace, instance.shop());
    case ProblemKind::Fssp: return replay_fssp(trace, instance.shop());
  }
  return {};
}

ValidationReport validate_accord(std::string_view text, const ProblemInstance& instance) {
  try {
    return validate_trace(parse_accord(text, instance.kind()), instance);
  } catch (const ParseError& e) {
    return malformed_report(e);
  }
}

ValidationReport validate_text(std::string_view text, const ProblemInstance& instance, TextFormat format) {
  return format == TextFormat::Accord ? validate_accord(text, instance)
                                      : validate_list(text, instance.kind(), instance);
}

}  // namespace accord
