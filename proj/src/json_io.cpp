#include "accord/json_io.hpp"

#include <string>

namespace accord {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::Malformed, "instance JSON: " + msg); }

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) bad(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

json instance_to_json(const ProblemInstance& instance) {
  json j;
  j["problem"] = std::string(kind_name(instance.kind()));
  std::visit(Overloaded{
                 [&](const RoutingInstance& r) {
                   json pts = json::array();
                   for (const auto& p : r.points) pts.push_back({p.x, p.y});
                   j["points"] = pts;
                   j["demands"] = r.demands;
                   j["vehicle_count"] = r.vehicle_count;
                   j["capacity"] = r.capacity;
                 },
                 [&](const KnapsackInstance& k) {
                   json items = json::array();
                   for (const auto& it : k.items) items.push_back({it.value, it.weight});
                   j["items"] = items;
                   j["capacity"] = k.capacity;
                 },
                 [&](const BinPackInstance& b) {
                   json items = json::array();
                   for (std::size_t i = 0; i < b.weights.size(); ++i) items.push_back({i, b.weights[i]});
                   j["items"] = items;
                   j["capacity"] = b.capacity;
                 },
                 [&](const ShopInstance& s) {
                   j["jobs"] = s.jobs;
                   j["machines"] = s.machines;
                   if (s.kind == ProblemKind::Fssp) {
                     json rows = json::array();
                     for (const auto& job : s.ops) {
                       json row = json::array();
                       for (const auto& op : job) row.push_back(op.duration);
                       rows.push_back(row);
                     }
                     j["durations"] = rows;
                   } else {
                     json jobs = json::array();
                     for (const auto& job : s.ops) {
                       json seq = json::array();
                       for (const auto& op : job) seq.push_back({op.machine, op.duration});
                       jobs.push_back(seq);
                     }
                     j["ops"] = jobs;
                   }
                 },
             },
             instance.data);
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  try {
    const ProblemKind kind = parse_kind(field(j, "problem").get<std::string>());
    ProblemInstance out;
    switch (kind) {
      case ProblemKind::Tsp:
      case ProblemKind::Vrp: {
        RoutingInstance r;
        r.kind = kind;
        for (const auto& p : field(j, "points")) r.points.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
        if (j.contains("demands")) {
          r.demands = j.at("demands").get<std::vector<std::int64_t>>();
        } else {
          r.demands.assign(r.points.size(), 0);
        }
        r.vehicle_count = j.value("vehicle_count", 1);
        r.capacity = j.value("capacity", std::int64_t{0});
        out.data = std::move(r);
        break;
      }
      case ProblemKind::Knapsack: {
        KnapsackInstance k;
        for (const auto& it : field(j, "items")) k.items.push_back({it.at(0).get<std::int64_t>(), it.at(1).get<std::int64_t>()});
        k.capacity = field(j, "capacity").get<std::int64_t>();
        out.data = std::move(k);
        break;
      }
      case ProblemKind::BinPacking: {
        BinPackInstance b;
        const auto& items = field(j, "items");
        b.weights.assign(items.size(), 0);
        std::vector<bool> seen(items.size(), false);
        for (const auto& it : items) {
          const auto id = it.at(0).get<std::int64_t>();
          if (id < 0 || static_cast<std::size_t>(id) >= items.size() || seen[static_cast<std::size_t>(id)])
            bad("bin packing ids must be a permutation of 0..n-1");
          seen[static_cast<std::size_t>(id)] = true;
          b.weights[static_cast<std::size_t>(id)] = it.at(1).get<std::int64_t>();
        }
        b.capacity = field(j, "capacity").get<std::int64_t>();
        out.data = std::move(b);
        break;
      }
      case ProblemKind::Jssp:
      case ProblemKind::Fssp: {
        ShopInstance s;
        s.kind = kind;
        if (kind == ProblemKind::Fssp) {
          for (const auto& row : field(j, "durations")) {
            std::vector<ShopOperation> job;
            int k = 0;
            for (const auto& d : row) job.push_back({k++, d.get<std::int64_t>()});
            s.ops.push_back(std::move(job));
          }
          s.machines = s.ops.empty() ? 0 : static_cast<int>(s.ops.front().size());
        } else {
          int max_machine = -1;
          for (const auto& seq : field(j, "ops")) {
            std::vector<ShopOperation> job;
            for (const auto& op : seq) {
              job.push_back({op.at(0).get<int>(), op.at(1).get<std::int64_t>()});
              max_machine = std::max(max_machine, job.back().machine);
            }
            s.ops.push_back(std::move(job));
          }
          s.machines = max_machine + 1;
        }
        s.jobs = static_cast<int>(s.ops.size());
        s.jobs = j.value("jobs", s.jobs);
        s.machines = j.value("machines", s.machines);
        out.data = std::move(s);
        break;
      }
    }
    validate_instance(out);
    return out;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json solution_payload_to_json(const SolutionData& data) {
  return std::visit(Overloaded{
                        [](const Tour& t) { return json(t.nodes); },
                        [](const Routes& r) { return json(r.routes); },
                        [](const Picks& p) { return json(p.items); },
                        [](const Packing& p) { return json(p.bins); },
                        [](const Schedule& s) {
                          json ops = json::array();
                          for (const auto& op : s.ops) ops.push_back({op.job, op.machine, op.start, op.duration});
                          return ops;
                        },
                        [](const Permutation& p) { return json(p.jobs); },
                    },
                    data);
}

SolutionData solution_payload_from_json(ProblemKind kind, const json& j) {
  try {
    switch (kind) {
      case ProblemKind::Tsp: return Tour{j.get<std::vector<int>>()};
      case ProblemKind::Vrp: return Routes{j.get<std::vector<std::vector<int>>>()};
      case ProblemKind::Knapsack: return Picks{j.get<std::vector<int>>()};
      case ProblemKind::BinPacking: return Packing{j.get<std::vector<std::vector<int>>>()};
      case ProblemKind::Jssp: {
        Schedule s;
        for (const auto& op : j)
          s.ops.push_back({op.at(0).get<int>(), op.at(1).get<int>(), op.at(2).get<std::int64_t>(),
                           op.at(3).get<std::int64_t>()});
        return s;
      }
      case ProblemKind::Fssp: return Permutation{j.get<std::vector<int>>()};
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("solution JSON: ") + e.what());
  }
  throw Error(ErrorCode::Malformed, "solution JSON: unknown kind");
}

json solution_to_json(ProblemKind kind, const Solution& solution) {
  return json{{"problem", std::string(kind_name(kind))},
              {"solution", solution_payload_to_json(solution.data)},
              {"objective", solution.objective}};
}

Solution solution_from_json(const json& j) {
  if (!j.contains("problem") || !j.contains("solution"))
    throw Error(ErrorCode::Malformed, "solution JSON needs 'problem' and 'solution'");
  const ProblemKind kind = parse_kind(j.at("problem").get<std::string>());
  Solution s;
  s.data = solution_payload_from_json(kind, j.at("solution"));
  s.objective = j.value("objective", std::int64_t{0});
  return s;
}

}  // namespace accord
