// accord-kit: generate, solve, render, validate, evaluate and route
// combinatorial-optimization instances from the command line.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "accord/codec.hpp"
#include "accord/dataset.hpp"
#include "accord/eval.hpp"
#include "accord/generate.hpp"
#include "accord/json_io.hpp"
#include "accord/router.hpp"
#include "accord/solvers.hpp"
#include "accord/taillard.hpp"

using namespace accord;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitMalformed = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kProblemNames = {"tsp", "vrp", "knapsack", "binpacking", "jssp", "fssp"};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream out;
    out << std::cin.rdbuf();
    return out.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_input(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Malformed, path + ": " + e.what());
  }
}

// An instance file, or a dataset record carrying one under "instance".
ProblemInstance read_instance(const std::string& path) {
  const auto j = read_json(path);
  return instance_from_json(j.contains("instance") ? j.at("instance") : j);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ACCORD_KIT_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return value;
    } catch (const std::exception&) {
      throw UsageError(std::string("ACCORD_KIT_SEED must be a non-negative integer, got '") + env + "'");
    }
  }
  return 0;
}

json report_to_json(const ValidationReport& rep) {
  json errors = json::array();
  for (const auto& f : rep.errors)
    errors.push_back({{"step", f.step}, {"code", std::string(finding_name(f.code))}, {"detail", f.detail}});
  json out{{"status", std::string(status_name(rep.status))},
           {"objective", rep.objective ? json(*rep.objective) : json()},
           {"errors", errors}};
  if (rep.malformed_at) out["malformed_at"] = {{"line", rep.malformed_at->line}, {"column", rep.malformed_at->column}};
  return out;
}

struct Flags {
  std::string problem;
  GenSpec spec;
  std::string difficulty = "easy";
  std::optional<std::uint64_t> seed;
  bool permissive = false;
  std::string method = "auto";
  std::string format = "accord";
  std::string candidate_format = "auto";
  std::size_t samples = 60;
  std::string source;
  std::string endpoint;
  std::string model_name = "accord";
  double temperature = 0.7;
  std::string replay_log;
  unsigned parallelism = 1;
  std::string out;
  std::string report;
  std::string input;
  std::string instance;
  std::string solution;
  std::string checkpoint;
  std::string text;
  std::string dataset;
  std::size_t per_class = 1000;
  int epochs = 3;
  double time_limit = 0.0;
  bool quiet = false;
};

std::function<void(const std::string&)> logger(const Flags& f) {
  if (f.quiet) return [](const std::string&) {};
  return [](const std::string& m) { std::cerr << m << "\n"; };
}

int cmd_gen(Flags& f) {
  f.spec.kind = parse_kind(f.problem);
  if (f.spec.kind == ProblemKind::Tsp) f.spec.v = 1;
  f.spec.difficulty = parse_difficulty(f.difficulty);
  f.spec.seed = resolve_seed(f.seed);
  f.spec.strict = !f.permissive;
  std::vector<std::string> warnings;
  try {
    check_grid(f.spec, &warnings);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto log = logger(f);
  for (const auto& w : warnings) log("warning: " + w);
  EmitOptions opts;
  opts.method = f.method;
  opts.parallelism = f.parallelism;
  opts.solve.time_limit = f.time_limit;
  opts.log = log;
  Output out(f.out);
  const auto n = emit_dataset(f.spec, opts, out.stream());
  log("wrote " + std::to_string(n) + " records");
  return kExitOk;
}

int cmd_solve(Flags& f) {
  const auto inst = read_instance(f.input);
  SolveOptions opts;
  opts.time_limit = f.time_limit;
  const auto r = solve_with(inst, f.method, opts);
  auto j = solution_to_json(inst.kind(), r.solution);
  j["method"] = r.method;
  j["optimal"] = r.optimal;
  Output out(f.out);
  out.stream() << j.dump() << "\n";
  return kExitOk;
}

int cmd_render(Flags& f) {
  const auto inst = read_instance(f.input);
  Solution sol;
  if (f.solution.empty()) {
    sol = solve_with(inst, f.method).solution;
  } else {
    sol = solution_from_json(read_json(f.solution));
    const auto check = check_feasible(inst, sol);
    if (!check.feasible)
      throw Error(ErrorCode::ValidationFailure,
                  "solution is infeasible: " + (check.violations.empty() ? "" : check.violations.front().detail));
    sol.objective = objective_value(inst, sol);
  }
  Output out(f.out);
  out.stream() << render(inst, sol, parse_format(f.format));
  return kExitOk;
}

int cmd_validate(Flags& f) {
  const auto inst = read_instance(f.instance);
  const auto text = read_input(f.input);
  const auto rep = validate_candidate(text, inst, parse_candidate_format(f.candidate_format));
  Output out(f.out);
  out.stream() << report_to_json(rep).dump() << "\n";
  switch (rep.status) {
    case Status::Feasible: return kExitOk;
    case Status::Infeasible: return kExitInfeasible;
    case Status::Malformed: return kExitMalformed;
  }
  return kExitFailure;
}

int cmd_eval(Flags& f) {
  if (f.source.empty() == f.endpoint.empty()) throw UsageError("eval needs exactly one of --source or --endpoint");
  const auto dataset = read_dataset_file(f.input);
  std::unique_ptr<CandidateSource> source;
  if (!f.endpoint.empty()) {
    HttpSourceConfig cfg;
    cfg.endpoint = f.endpoint;
    cfg.model = f.model_name;
    cfg.temperature = f.temperature;
    cfg.replay_log = f.replay_log;
    source = std::make_unique<HttpSource>(cfg);
  } else if (f.source == "oracle-echo") {
    source = std::make_unique<OracleEchoSource>(TextFormat::Accord);
  } else if (f.source == "oracle-echo-list") {
    source = std::make_unique<OracleEchoSource>(TextFormat::List);
  } else {
    source = std::make_unique<FileSource>(f.source);
  }
  EvalConfig cfg;
  cfg.samples = f.samples;
  cfg.format = parse_candidate_format(f.candidate_format);
  cfg.parallelism = f.parallelism;
  cfg.log = logger(f);
  const auto report = run_benchmark(dataset, *source, cfg);
  if (!f.report.empty()) {
    std::ofstream csv(f.report);
    if (!csv) throw Error(ErrorCode::Io, "cannot write " + f.report);
    csv << report_csv(report);
  }
  Output out(f.out);
  out.stream() << report_json(report).dump(2) << "\n";
  return kExitOk;
}

int cmd_route_train(Flags& f) {
  if (f.out.empty() || f.out == "-") throw UsageError("route-train needs --out for the checkpoint");
  std::vector<LabeledText> corpus;
  if (!f.dataset.empty()) {
    for (const auto& r : read_dataset_file(f.dataset)) corpus.push_back({r.instruction, r.kind});
  } else {
    corpus = instruction_corpus(f.per_class, resolve_seed(f.seed));
  }
  RouterConfig cfg;
  cfg.seed = resolve_seed(f.seed);
  cfg.epochs = f.epochs;
  const auto result = train_router(cfg, corpus, logger(f));
  result.router.save(f.out);
  std::cout << json{{"checkpoint", f.out},
                    {"examples", corpus.size()},
                    {"final_loss", result.curve.empty() ? json() : json(result.curve.back())},
                    {"curve", result.curve}}
                   .dump()
            << "\n";
  return kExitOk;
}

int cmd_route(Flags& f) {
  const auto router = Router::load(f.checkpoint);
  std::string text = f.text;
  if (text.empty()) {
    if (f.input.empty()) throw UsageError("route needs --text or an input file");
    text = read_input(f.input);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  }
  const auto c = router.classify(text);
  Output out(f.out);
  out.stream() << json{{"problem", std::string(kind_name(c.kind))}, {"confidence", c.confidence}}.dump() << "\n";
  return kExitOk;
}

int cmd_taillard(Flags& f) {
  const auto kind = parse_kind(f.problem);
  if (kind != ProblemKind::Jssp && kind != ProblemKind::Fssp) throw UsageError("taillard-import needs --problem jssp or fssp");
  const auto s = read_taillard(f.input, kind);
  Output out(f.out);
  out.stream() << instance_to_json(ProblemInstance{s}).dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accord-kit: combinatorial-optimization instances, solvers, solution texts and evaluation"};
  app.name("accord-kit");
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_flag("-q,--quiet", f.quiet, "Suppress progress messages on stderr");

  const auto problem_check = CLI::IsMember(kProblemNames);
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", f.seed, "Random seed (falls back to $ACCORD_KIT_SEED, then 0)");
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", f.out, "Output file (default: stdout)"); };

  auto* gen = app.add_subcommand("gen", "Generate a JSONL dataset of solved instances");
  gen->add_option("--problem", f.problem, "Problem kind")->required()->check(problem_check);
  gen->add_option("--n", f.spec.n, "Locations (routing) or items (knapsack, bin packing)")
      ->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--v", f.spec.v, "Vehicles (vrp)")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--difficulty", f.difficulty, "Knapsack tier")
      ->capture_default_str()->check(CLI::IsMember({"easy", "medium", "hard"}));
  gen->add_option("--weight-max", f.spec.weight_max, "Bin packing maximum item weight")
      ->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--target-bins", f.spec.target_bins, "Bin packing target bin count")
      ->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--jobs", f.spec.jobs, "Jobs (jssp, fssp)")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--machines", f.spec.machines, "Machines (jssp, fssp)")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--count", f.spec.count, "Number of records")->capture_default_str();
  add_seed(gen);
  gen->add_option("--method", f.method, "Labelling solver")->capture_default_str();
  gen->add_option("--time-limit", f.time_limit, "Per-instance solver budget in seconds (0 = none)")->capture_default_str();
  gen->add_option("--parallelism", f.parallelism, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_flag("--permissive", f.permissive, "Allow sizes outside the reference grid with a warning");
  add_out(gen);

  auto* solve = app.add_subcommand("solve", "Solve an instance JSON and print the solution JSON");
  solve->add_option("instance", f.input, "Instance or dataset-record JSON ('-' for stdin)")->required();
  solve->add_option("--method", f.method, "Solver name")->capture_default_str();
  solve->add_option("--time-limit", f.time_limit, "Solver budget in seconds (0 = none)")->capture_default_str();
  add_out(solve);

  auto* rend = app.add_subcommand("render", "Render a solution as ACCORD or list text");
  rend->add_option("instance", f.input, "Instance or dataset-record JSON ('-' for stdin)")->required();
  rend->add_option("--solution", f.solution, "Solution JSON (default: solve with --method)");
  rend->add_option("--method", f.method, "Solver used when --solution is absent")->capture_default_str();
  rend->add_option("--format", f.format, "Text format")->capture_default_str()->check(CLI::IsMember({"accord", "list"}));
  add_out(rend);

  auto* val = app.add_subcommand("validate", "Validate a solution text; exit 0 feasible, 3 infeasible, 4 malformed");
  val->add_option("text", f.input, "Solution text file ('-' for stdin)")->required();
  val->add_option("--instance", f.instance, "Instance or dataset-record JSON")->required();
  val->add_option("--format", f.candidate_format, "Text format")
      ->capture_default_str()->check(CLI::IsMember({"auto", "accord", "list"}));
  add_out(val);

  auto* ev = app.add_subcommand("eval", "Best-of-N evaluation of candidate texts over a dataset");
  ev->add_option("dataset", f.input, "Dataset JSONL")->required();
  ev->add_option("--source", f.source, "Candidate JSONL file or directory, or oracle-echo / oracle-echo-list");
  ev->add_option("--endpoint", f.endpoint, "HTTP chat-completion endpoint (http://host:port/path)");
  ev->add_option("--model", f.model_name, "Model name sent to --endpoint")->capture_default_str();
  ev->add_option("--temperature", f.temperature, "Sampling temperature sent to --endpoint")->capture_default_str();
  ev->add_option("--replay-log", f.replay_log, "JSONL log of every HTTP request and response");
  ev->add_option("--samples", f.samples, "Candidates per instance")->capture_default_str()->check(CLI::PositiveNumber);
  ev->add_option("--format", f.candidate_format, "Candidate text format")
      ->capture_default_str()->check(CLI::IsMember({"auto", "accord", "list"}));
  ev->add_option("--parallelism", f.parallelism, "Instances evaluated concurrently")
      ->capture_default_str()->check(CLI::PositiveNumber);
  ev->add_option("--report", f.report, "CSV summary path");
  add_out(ev);

  auto* rtrain = app.add_subcommand("route-train", "Train the instruction router and write a checkpoint");
  rtrain->add_option("--dataset", f.dataset, "Train on the instructions of a dataset JSONL instead of generated ones");
  rtrain->add_option("--count", f.per_class, "Generated instructions per problem kind")->capture_default_str();
  rtrain->add_option("--epochs", f.epochs, "Training epochs")->capture_default_str();
  add_seed(rtrain);
  rtrain->add_option("--out", f.out, "Checkpoint path")->required();

  auto* route = app.add_subcommand("route", "Classify an instruction text into a problem kind");
  route->add_option("--model", f.checkpoint, "Router checkpoint")->required();
  route->add_option("--text", f.text, "Instruction text");
  route->add_option("input", f.input, "File holding the instruction text ('-' for stdin)");
  add_out(route);

  auto* tai = app.add_subcommand("taillard-import", "Convert a Taillard benchmark file to instance JSON");
  tai->add_option("file", f.input, "Taillard file")->required();
  tai->add_option("--problem", f.problem, "jssp or fssp")->required()->check(CLI::IsMember({"jssp", "fssp"}));
  add_out(tai);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(f);
    if (*solve) return cmd_solve(f);
    if (*rend) return cmd_render(f);
    if (*val) return cmd_validate(f);
    if (*ev) return cmd_eval(f);
    if (*rtrain) return cmd_route_train(f);
    if (*route) return cmd_route(f);
    if (*tai) return cmd_taillard(f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
