#include <algorithm>
#include <sstream>

#include "accord/codec.hpp"

namespace accord {

namespace {

constexpr std::string_view kMakespanLabel = "Maximum end completion time or Makespan: ";

std::string node_text(const RoutingInstance& r, int node) {
  const auto& p = r.points.at(static_cast<std::size_t>(node));
  return "(" + std::to_string(node) + "): (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

// Routes as closed node sequences: depot, customers..., depot.
std::vector<std::vector<int>> closed_routes(const ProblemInstance& instance, const Solution& solution) {
  std::vector<std::vector<int>> out;
  if (const auto* t = std::get_if<Tour>(&solution.data)) {
    if (instance.kind() != ProblemKind::Tsp) throw Error(ErrorCode::KindMismatch, "tour for non-TSP instance");
    std::vector<int> route = t->nodes;
    route.push_back(t->nodes.empty() ? 0 : t->nodes.front());
    out.push_back(std::move(route));
  } else if (const auto* rs = std::get_if<Routes>(&solution.data)) {
    if (instance.kind() != ProblemKind::Vrp) throw Error(ErrorCode::KindMismatch, "routes for non-VRP instance");
    for (const auto& r : rs->routes) {
      std::vector<int> route{0};
      route.insert(route.end(), r.begin(), r.end());
      route.push_back(0);
      out.push_back(std::move(route));
    }
  } else {
    throw Error(ErrorCode::KindMismatch, "solution is not a routing solution");
  }
  return out;
}

template <class T>
const T& expect_variant(const Solution& solution, ProblemKind kind, ProblemKind wanted) {
  const auto* p = std::get_if<T>(&solution.data);
  if (p == nullptr || kind != wanted)
    throw Error(ErrorCode::KindMismatch, "solution variant does not match problem kind " + std::string(kind_name(kind)));
  return *p;
}

}  // namespace

std::string_view format_name(TextFormat format) { return format == TextFormat::Accord ? "accord" : "list"; }

TextFormat parse_format(std::string_view name) {
  if (name == "accord") return TextFormat::Accord;
  if (name == "list") return TextFormat::List;
  throw Error(ErrorCode::InvalidInstance, "unknown text format '" + std::string(name) + "'");
}

std::vector<ScheduledOp> ordered_schedule(const ProblemInstance& instance, const Solution& solution) {
  const ProblemKind kind = instance.kind();
  if (kind == ProblemKind::Jssp) {
    auto ops = expect_variant<Schedule>(solution, kind, ProblemKind::Jssp).ops;
    std::stable_sort(ops.begin(), ops.end(), [](const ScheduledOp& a, const ScheduledOp& b) {
      if (a.start != b.start) return a.start < b.start;
      if (a.job != b.job) return a.job < b.job;
      return a.machine < b.machine;
    });
    return ops;
  }
  const auto& perm = expect_variant<Permutation>(solution, kind, ProblemKind::Fssp).jobs;
  auto ops = flow_shop_schedule(instance.shop(), perm);
  std::vector<std::size_t> position(static_cast<std::size_t>(instance.shop().jobs), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) position[static_cast<std::size_t>(perm[i])] = i;
  std::stable_sort(ops.ops.begin(), ops.ops.end(), [&](const ScheduledOp& a, const ScheduledOp& b) {
    if (a.start != b.start) return a.start < b.start;
    const auto pa = position[static_cast<std::size_t>(a.job)], pb = position[static_cast<std::size_t>(b.job)];
    if (pa != pb) return pa < pb;
    return a.machine < b.machine;
  });
  return ops.ops;
}

std::string render_accord(const ProblemInstance& instance, const Solution& solution) {
  const ProblemKind kind = instance.kind();
  std::ostringstream out;
  switch (kind) {
    case ProblemKind::Knapsack: {
      const auto& picks = expect_variant<Picks>(solution, kind, ProblemKind::Knapsack);
      const auto& k = instance.knapsack();
      const std::string cap = std::to_string(k.capacity);
      std::int64_t value = 0, weight = 0;
      out << "Solution:\n";
      for (std::size_t i = 0; i < picks.items.size(); ++i) {
        const auto& it = k.items.at(static_cast<std::size_t>(picks.items[i]));
        out << "[[" << it.value << ", " << it.weight << "] -> value:" << value << "+" << it.value << "="
            << value + it.value << ", weight:" << weight << "+" << it.weight << "=" << weight + it.weight
            << "<=" << cap << "]";
        value += it.value;
        weight += it.weight;
        out << (i + 1 < picks.items.size() ? ",\n" : "\n");
      }
      out << "\nTotal Value: " << value << "\nTotal Weight: " << weight << "<=" << cap;
      break;
    }
    case ProblemKind::BinPacking: {
      const auto& packing = expect_variant<Packing>(solution, kind, ProblemKind::BinPacking);
      const auto& b = instance.binpack();
      std::size_t number = 0;
      for (const auto& bin : packing.bins) {
        if (bin.empty()) continue;
        out << "Bin " << ++number << ":\n";
        std::int64_t load = 0;
        for (std::size_t i = 0; i < bin.size(); ++i) {
          const auto w = b.weights.at(static_cast<std::size_t>(bin[i]));
          load += w;
          out << "(" << bin[i] << ", " << w << ")->" << load;
          if (i + 1 < bin.size()) {
            out << " ";
          } else {
            out << "<=" << b.capacity << "\n";
          }
        }
      }
      out << "Total bins required: " << number;
      break;
    }
    case ProblemKind::Tsp:
    case ProblemKind::Vrp: {
      const auto& r = instance.routing();
      std::int64_t total = 0;
      for (const auto& route : closed_routes(instance, solution)) {
        out << "Vehicle Route: " << node_text(r, route.front());
        for (std::size_t i = 1; i < route.size(); ++i) {
          const auto d = r.distance(static_cast<std::size_t>(route[i - 1]), static_cast<std::size_t>(route[i]));
          total += d;
          out << " -> " << node_text(r, route[i]) << " + " << d;
        }
        out << "\n";
      }
      out << "Overall Total Distance: " << total;
      break;
    }
    case ProblemKind::Jssp: {
      out << "Solution:\n";
      std::int64_t makespan = 0;
      for (const auto& op : ordered_schedule(instance, solution)) {
        out << "J" << op.job << "-M" << op.machine << ": " << op.start << "+" << op.duration << " -> " << op.end()
            << ",\n";
        makespan = std::max(makespan, op.end());
      }
      out << kMakespanLabel << makespan;
      break;
    }
    case ProblemKind::Fssp: {
      const auto& perm = expect_variant<Permutation>(solution, kind, ProblemKind::Fssp).jobs;
      const auto& s = instance.shop();
      const auto completions = flow_shop_completions(s, perm);
      for (std::size_t i = 0; i < perm.size(); ++i) {
        out << "J" << perm[i] + 1 << ":";
        for (int k = 0; k < s.machines; ++k) {
          const auto p = s.duration(perm[i], k);
          const auto end = completions[i][static_cast<std::size_t>(k)];
          out << (k == 0 ? " " : " -> ") << "M" << k + 1 << "(" << end - p << "+" << p << "=" << end << ")";
        }
        out << "\n";
      }
      out << "\n" << kMakespanLabel << (perm.empty() ? 0 : completions.back().back());
      break;
    }
  }
  return out.str();
}

std::string render_list(const ProblemInstance& instance, const Solution& solution) {
  const ProblemKind kind = instance.kind();
  std::ostringstream out;
  switch (kind) {
    case ProblemKind::Knapsack: {
      const auto& picks = expect_variant<Picks>(solution, kind, ProblemKind::Knapsack);
      const auto& k = instance.knapsack();
      std::string values, weights;
      std::int64_t value = 0, weight = 0;
      out << "Solution: [";
      for (std::size_t i = 0; i < picks.items.size(); ++i) {
        const auto& it = k.items.at(static_cast<std::size_t>(picks.items[i]));
        if (i > 0) {
          out << ", ";
          values += "+";
          weights += "+";
        }
        out << "(" << it.value << ", " << it.weight << ")";
        values += std::to_string(it.value);
        weights += std::to_string(it.weight);
        value += it.value;
        weight += it.weight;
      }
      if (picks.items.empty()) values = weights = "0";
      out << "]\n  Value: " << values << "=" << value << "\n  Weight: " << weights << "=" << weight
          << "<=" << k.capacity;
      break;
    }
    case ProblemKind::BinPacking: {
      const auto& packing = expect_variant<Packing>(solution, kind, ProblemKind::BinPacking);
      std::size_t count = 0;
      std::ostringstream bins;
      for (const auto& bin : packing.bins) {
        if (bin.empty()) continue;
        bins << (count++ > 0 ? ", [" : "[");
        for (std::size_t i = 0; i < bin.size(); ++i) bins << (i > 0 ? ", " : "") << bin[i];
        bins << "]";
      }
      out << "The minimum number of bins required is " << count << ". The bin assignments are: [" << bins.str()
          << "].";
      break;
    }
    case ProblemKind::Tsp:
    case ProblemKind::Vrp: {
      const auto& r = instance.routing();
      std::int64_t total = 0;
      for (const auto& route : closed_routes(instance, solution)) {
        out << "[";
        for (std::size_t i = 0; i < route.size(); ++i) {
          if (i > 0) {
            out << ", ";
            total += r.distance(static_cast<std::size_t>(route[i - 1]), static_cast<std::size_t>(route[i]));
          }
          out << node_text(r, route[i]);
        }
        out << "]\n";
      }
      out << "Overall Total Distance: " << total;
      break;
    }
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: {
      const int base = kind == ProblemKind::Fssp ? 1 : 0;
      std::int64_t makespan = 0;
      out << "[";
      const auto ops = ordered_schedule(instance, solution);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto& op = ops[i];
        out << (i > 0 ? ", [" : "[") << op.job + base << ", " << op.machine + base << ", " << op.start << ", "
            << op.duration << "]";
        makespan = std::max(makespan, op.end());
      }
      out << "]\n" << kMakespanLabel << makespan;
      break;
    }
  }
  return out.str();
}

std::string render(const ProblemInstance& instance, const Solution& solution, TextFormat format) {
  return format == TextFormat::Accord ? render_accord(instance, solution) : render_list(instance, solution);
}

}  // namespace accord
