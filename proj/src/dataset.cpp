#include "accord/dataset.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "accord/codec.hpp"
#include "accord/json_io.hpp"

namespace accord {

namespace {

std::string fill(std::string text, const std::vector<std::pair<std::string, std::string>>& vars) {
  for (const auto& [key, value] : vars) {
    const std::string slot = "{" + key + "}";
    for (std::size_t p; (p = text.find(slot)) != std::string::npos;) text.replace(p, slot.size(), value);
  }
  return text;
}

const char* const kTspPhrasings[kInstructionVariants] = {
    "Given customers with coordinates and a depot, and 1 vehicle, find the minimum-length route serving all "
    "customers.",
    "A single vehicle starts at the depot and must visit each of the {c} customers exactly once before returning. "
    "Find the shortest such tour.",
    "Solve the traveling salesman problem over {n} locations: find the shortest closed tour that visits every "
    "location once, starting and ending at node 0.",
    "Find the shortest round trip for one salesman that leaves the depot, visits all {c} cities exactly once and "
    "comes back.",
};

const char* const kVrpPhrasings[kInstructionVariants] = {
    "Given customers with coordinates and a depot, and multiple vehicles of capacity {Q}, find the minimum-length "
    "routes serving all customers.",
    "A fleet of {V} vehicles, each with capacity {Q}, must serve every customer's demand from the depot. Find routes "
    "of minimum total distance.",
    "Solve the capacitated vehicle routing problem with {V} vehicles (capacity {Q}): assign customers to routes that "
    "start and end at the depot, minimizing total distance without exceeding any vehicle load.",
    "Plan delivery routes for {V} trucks of capacity {Q} that together visit all {c} customers once and return to "
    "the depot, keeping the overall distance as small as possible.",
};

const char* const kKnapsackPhrasings[kInstructionVariants] = {
    "You are given a paired representation (value, weight): Find a set of items to pack into a container with a "
    "maximum weight capacity = {W} that maximizes total value of packed items.",
    "Select a subset of the {n} items (value, weight) whose total weight does not exceed {W} and whose total value "
    "is as large as possible.",
    "Solve the 0/1 knapsack problem with capacity {W}: choose items, each at most once, to maximize total value.",
    "A bag can hold at most {W} units of weight. Pick items from the list of (value, weight) pairs to maximize the "
    "value carried.",
};

const char* const kBinPackPhrasings[kInstructionVariants] = {
    "Given a list of items (id, weight), determine the minimum number of bins (capacity={C}) needed to pack all "
    "items without exceeding the capacity.",
    "Pack all {n} items into as few bins as possible; each bin holds at most {C} units of weight.",
    "Solve the bin packing problem: assign every item (id, weight) to a bin of capacity {C} so that the number of "
    "bins used is minimized.",
    "Containers have capacity {C}. Distribute the {n} weighted items among containers, using the smallest number of "
    "containers.",
};

const char* const kJsspPhrasings[kInstructionVariants] = {
    "Optimize schedule for {n} Jobs (J) across {m} Machines (M) to minimize makespan. Each M can process only one J "
    "at a time, and once started, J cannot be interrupted.",
    "Solve the job shop scheduling problem with {n} jobs and {m} machines: each job follows its own machine order; "
    "minimize the makespan.",
    "Schedule the operations of {n} jobs on {m} machines, respecting each job's own operation sequence and allowing "
    "one operation per machine at a time, so that all jobs finish as early as possible.",
    "Each of the {n} jobs must visit the machines in its listed route with the given processing times. Find a "
    "non-overlapping schedule with the smallest maximum completion time.",
};

const char* const kFsspPhrasings[kInstructionVariants] = {
    "Find a job permutation for {n} Jobs (J) processed on {m} Machines (M) in the same machine order that minimizes "
    "makespan. Each M can process only one J at a time.",
    "Solve the permutation flow shop problem with {n} jobs and {m} machines: every job passes through M1 to M{m} in "
    "order, and all machines process the jobs in one common sequence; minimize the makespan.",
    "Sequence {n} jobs through a flow line of {m} machines so that the last job completes as early as possible. The "
    "same job order is used on every machine.",
    "All jobs visit machines M1 to M{m} in the same fixed order. Choose the processing order of the {n} jobs to "
    "minimize the maximum completion time.",
};

std::string record_id(ProblemKind kind, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-%06zu", index);
  return std::string(kind_name(kind)) + buf;
}

}  // namespace

std::string instruction_text(const ProblemInstance& instance, std::size_t variant) {
  variant %= kInstructionVariants;
  const auto s = [](auto v) { return std::to_string(v); };
  switch (instance.kind()) {
    case ProblemKind::Tsp: {
      const auto& r = instance.routing();
      return fill(kTspPhrasings[variant], {{"n", s(r.size())}, {"c", s(r.size() - 1)}});
    }
    case ProblemKind::Vrp: {
      const auto& r = instance.routing();
      return fill(kVrpPhrasings[variant],
                  {{"c", s(r.size() - 1)}, {"V", s(r.vehicle_count)}, {"Q", s(r.capacity)}});
    }
    case ProblemKind::Knapsack: {
      const auto& k = instance.knapsack();
      return fill(kKnapsackPhrasings[variant], {{"n", s(k.items.size())}, {"W", s(k.capacity)}});
    }
    case ProblemKind::BinPacking: {
      const auto& b = instance.binpack();
      return fill(kBinPackPhrasings[variant], {{"n", s(b.weights.size())}, {"C", s(b.capacity)}});
    }
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: {
      const auto& sh = instance.shop();
      const auto* table = sh.kind == ProblemKind::Jssp ? kJsspPhrasings : kFsspPhrasings;
      return fill(table[variant], {{"n", s(sh.jobs)}, {"m", s(sh.machines)}});
    }
  }
  return {};
}

std::string instruction_text(const ProblemInstance& instance, Rng& rng) {
  return instruction_text(instance, static_cast<std::size_t>(rng.uniform_int(0, kInstructionVariants - 1)));
}

std::string input_text(const ProblemInstance& instance) {
  std::ostringstream out;
  switch (instance.kind()) {
    case ProblemKind::Tsp:
    case ProblemKind::Vrp: {
      const auto& r = instance.routing();
      for (std::size_t i = 0; i < r.size(); ++i)
        out << (i ? ", " : "") << i << ":(" << r.points[i].x << ", " << r.points[i].y << ")";
      if (r.kind == ProblemKind::Vrp) {
        out << "\nDemands: ";
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? ", " : "") << i << ":" << r.demands[i];
        out << "\nVehicles: " << r.vehicle_count;
      }
      break;
    }
    case ProblemKind::Knapsack: {
      out << "[";
      const auto& items = instance.knapsack().items;
      for (std::size_t i = 0; i < items.size(); ++i)
        out << (i ? ", " : "") << "[" << items[i].value << ", " << items[i].weight << "]";
      out << "]";
      break;
    }
    case ProblemKind::BinPacking: {
      out << "[";
      const auto& w = instance.binpack().weights;
      for (std::size_t i = 0; i < w.size(); ++i) out << (i ? ", " : "") << "(" << i << "," << w[i] << ")";
      out << "]";
      break;
    }
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: {
      const auto& s = instance.shop();
      const int base = s.kind == ProblemKind::Fssp ? 1 : 0;
      for (int j = 0; j < s.jobs; ++j) {
        out << (j ? "\n" : "") << "J" << j + base << ":\n";
        const auto& ops = s.ops[static_cast<std::size_t>(j)];
        for (std::size_t k = 0; k < ops.size(); ++k)
          out << (k ? " " : "") << "M" << ops[k].machine + base << ":" << ops[k].duration;
      }
      break;
    }
  }
  return out.str();
}

nlohmann::json size_params(const GenSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Tsp: return {{"n", spec.n}, {"v", 1}};
    case ProblemKind::Vrp: return {{"n", spec.n}, {"v", spec.v}};
    case ProblemKind::Knapsack: return {{"n", spec.n}, {"difficulty", difficulty_name(spec.difficulty)}};
    case ProblemKind::BinPacking:
      return {{"n", spec.n}, {"weight_max", spec.weight_max}, {"target_bins", spec.target_bins}};
    case ProblemKind::Jssp:
    case ProblemKind::Fssp: return {{"jobs", spec.jobs}, {"machines", spec.machines}};
  }
  return nlohmann::json::object();
}

nlohmann::json record_to_json(const DatasetRecord& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["problem"] = kind_name(r.kind);
  j["seed"] = r.seed;
  j["instruction"] = r.instruction;
  j["input"] = r.input;
  j["output_accord"] = r.output_accord;
  j["output_list"] = r.output_list;
  j["objective"] = r.objective;
  j["size"] = r.size;
  j["method"] = r.method;
  j["optimal"] = r.optimal;
  j["instance"] = instance_to_json(r.instance);
  return j;
}

DatasetRecord record_from_json(const nlohmann::json& j) {
  try {
    DatasetRecord r;
    r.id = j.at("id").get<std::string>();
    r.kind = parse_kind(j.at("problem").get<std::string>());
    r.seed = j.value("seed", std::uint64_t{0});
    r.instruction = j.value("instruction", std::string{});
    r.input = j.value("input", std::string{});
    r.output_accord = j.value("output_accord", std::string{});
    r.output_list = j.value("output_list", std::string{});
    r.objective = j.at("objective").get<std::int64_t>();
    r.size = j.value("size", nlohmann::json::object());
    r.method = j.value("method", std::string{});
    r.optimal = j.value("optimal", false);
    r.instance = instance_from_json(j.at("instance"));
    if (r.instance.kind() != r.kind) throw Error(ErrorCode::KindMismatch, "record problem differs from instance");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("dataset record: ") + e.what());
  }
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Malformed, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<DatasetRecord> read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_dataset(in);
}

DatasetRecord make_record(const GenSpec& spec, std::size_t index, const EmitOptions& options) {
  DatasetRecord r;
  r.seed = derive_seed(spec.seed, index);
  r.kind = spec.kind;
  r.id = record_id(spec.kind, index);
  r.instance = generate(spec, r.seed);
  r.size = size_params(spec);
  Rng phrasing(derive_seed(r.seed, 0));
  r.instruction = instruction_text(r.instance, phrasing);
  r.input = input_text(r.instance);

  const auto solved = solve_with(r.instance, options.method, options.solve);
  r.method = solved.method;
  r.optimal = solved.optimal;
  r.objective = solved.solution.objective;
  r.output_accord = render_accord(r.instance, solved.solution);
  r.output_list = render_list(r.instance, solved.solution);

  for (auto format : {TextFormat::Accord, TextFormat::List}) {
    const auto rep = validate_text(format == TextFormat::Accord ? r.output_accord : r.output_list, r.instance, format);
    if (!rep.feasible() || rep.objective != r.objective) {
      std::string why = rep.errors.empty() ? "objective mismatch" : std::string(finding_name(rep.errors.front().code)) +
                                                                        ": " + rep.errors.front().detail;
      throw Error(ErrorCode::ValidationFailure,
                  r.id + " " + std::string(format_name(format)) + " output failed self-validation (" + why + ")");
    }
  }
  return r;
}

std::size_t emit_dataset(const GenSpec& spec, const EmitOptions& options,
                         const std::function<void(const DatasetRecord&)>& sink) {
  const auto log = options.log ? options.log : [](const std::string& m) { std::cerr << m << "\n"; };
  const unsigned workers = std::max(1u, options.parallelism);
  const std::size_t chunk = 64 * static_cast<std::size_t>(workers);
  std::size_t emitted = 0;

  for (std::size_t base = 0; base < spec.count; base += chunk) {
    const std::size_t end = std::min(spec.count, base + chunk);
    std::vector<std::optional<DatasetRecord>> slots(end - base);
    std::vector<std::exception_ptr> failures(end - base);
    std::atomic<std::size_t> next{base};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < end;) {
        try {
          slots[i - base] = make_record(spec, i, options);
        } catch (...) {
          failures[i - base] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (failures[i]) {
        try {
          std::rethrow_exception(failures[i]);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::SolverTimeout) throw;
          log("skipping " + record_id(spec.kind, base + i) + ": " + e.what());
          continue;
        }
      }
      sink(*slots[i]);
      ++emitted;
    }
  }
  return emitted;
}

std::size_t emit_dataset(const GenSpec& spec, const EmitOptions& options, std::ostream& jsonl) {
  return emit_dataset(spec, options, [&](const DatasetRecord& r) { jsonl << record_to_json(r).dump() << "\n"; });
}

}  // namespace accord
