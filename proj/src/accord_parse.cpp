#include "accord/codec.hpp"
#include "scanner.hpp"

namespace accord {

namespace {

using detail::Scanner;

constexpr std::string_view kMakespanLabel = "Maximum end completion time or Makespan:";

void parse_knapsack(Scanner& in, AccordTrace& trace) {
  in.expect("Solution:");
  while (in.peek("[")) {
    KnapsackStep s;
    in.expect("[");
    in.expect("[");
    s.item_value = in.number();
    in.expect(",");
    s.item_weight = in.number();
    in.expect("]");
    in.expect("->");
    in.expect("value:");
    s.prev_value = in.number();
    in.expect("+");
    s.add_value = in.number();
    in.expect("=");
    s.new_value = in.number();
    in.expect(",");
    in.expect("weight:");
    s.prev_weight = in.number();
    in.expect("+");
    s.add_weight = in.number();
    in.expect("=");
    s.new_weight = in.number();
    in.expect("<=");
    s.bound = in.number();
    in.expect("]");
    trace.steps.emplace_back(s);
    if (!in.accept(",")) break;
  }
  in.expect("Total Value:");
  trace.totals.value = in.number();
  in.expect("Total Weight:");
  trace.totals.weight = in.number();
  in.expect("<=");
  trace.totals.weight_bound = in.number();
}

void parse_binpack(Scanner& in, AccordTrace& trace) {
  while (in.accept("Bin")) {
    const auto bin = in.number();
    in.expect(":");
    trace.bin_headers.push_back(bin);
    while (in.peek("(")) {
      BinStep s;
      s.header = trace.bin_headers.size() - 1;
      s.bin = bin;
      in.expect("(");
      s.item = in.number();
      in.expect(",");
      s.weight = in.number();
      in.expect(")");
      in.expect("->");
      s.cumulative = in.number();
      if (in.accept("<=")) s.bound = in.number();
      trace.steps.emplace_back(s);
    }
  }
  in.expect("Total bins required:");
  trace.totals.bins = in.number();
}

void parse_node(Scanner& in, RouteStep& s) {
  in.expect("(");
  s.node = in.number();
  in.expect(")");
  in.expect(":");
  in.expect("(");
  s.at.x = in.number();
  in.expect(",");
  s.at.y = in.number();
  in.expect(")");
}

void parse_routing(Scanner& in, AccordTrace& trace) {
  if (!in.peek("Vehicle Route:")) in.fail("'Vehicle Route:'");
  while (in.accept("Vehicle Route:")) {
    RouteStep head;
    head.route = trace.route_count;
    parse_node(in, head);
    trace.steps.emplace_back(head);
    while (in.accept("->")) {
      RouteStep s;
      s.route = trace.route_count;
      parse_node(in, s);
      in.expect("+");
      s.leg = in.number();
      trace.steps.emplace_back(s);
    }
    ++trace.route_count;
  }
  in.expect("Overall Total Distance:");
  trace.totals.distance = in.number();
}

void parse_jssp(Scanner& in, AccordTrace& trace) {
  in.expect("Solution:");
  while (in.accept("J")) {
    JobShopStep s;
    s.job = in.number(false);
    in.expect("-", false);
    in.expect("M", false);
    s.machine = in.number(false);
    in.expect(":");
    s.start = in.number();
    in.expect("+");
    s.duration = in.number();
    in.expect("->");
    s.end = in.number();
    trace.steps.emplace_back(s);
    if (!in.accept(",")) break;
  }
  in.expect(kMakespanLabel);
  trace.totals.makespan = in.number();
}

void parse_fssp(Scanner& in, AccordTrace& trace) {
  while (in.accept("J")) {
    FlowShopStep s;
    s.job = in.number(false);
    in.expect(":");
    do {
      MachineStep m;
      in.expect("M");
      m.machine = in.number(false);
      in.expect("(");
      m.start = in.number();
      in.expect("+");
      m.duration = in.number();
      in.expect("=");
      m.end = in.number();
      in.expect(")");
      s.machines.push_back(m);
    } while (in.accept("->"));
    trace.steps.emplace_back(std::move(s));
    in.accept(",");
  }
  in.expect(kMakespanLabel);
  trace.totals.makespan = in.number();
}

}  // namespace

AccordTrace parse_accord(std::string_view text, ProblemKind kind) {
  Scanner in(text);
  AccordTrace trace;
  trace.kind = kind;
  switch (kind) {
    case ProblemKind::Knapsack: parse_knapsack(in, trace); break;
    case ProblemKind::BinPacking: parse_binpack(in, trace); break;
    case ProblemKind::Tsp:
    case ProblemKind::Vrp: parse_routing(in, trace); break;
    case ProblemKind::Jssp: parse_jssp(in, trace); break;
    case ProblemKind::Fssp: parse_fssp(in, trace); break;
  }
  in.expect_end();
  return trace;
}

}  // namespace accord
