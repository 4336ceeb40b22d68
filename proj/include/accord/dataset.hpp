#pragma once

// Instruction/input texts and JSONL dataset emission.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "accord/generate.hpp"
#include "accord/solvers.hpp"

namespace accord {

// Number of instruction phrasings available per problem kind.
inline constexpr std::size_t kInstructionVariants = 4;

// variant is taken modulo kInstructionVariants; variant 0 is the reference phrasing.
std::string instruction_text(const ProblemInstance& instance, std::size_t variant = 0);
std::string instruction_text(const ProblemInstance& instance, Rng& rng);
std::string input_text(const ProblemInstance& instance);

struct DatasetRecord {
  std::string id;
  ProblemKind kind = ProblemKind::Knapsack;
  std::uint64_t seed = 0;
  std::string instruction;
  std::string input;
  std::string output_accord;
  std::string output_list;
  std::int64_t objective = 0;
  nlohmann::json size;
  ProblemInstance instance;
  std::string method;
  bool optimal = false;
};

nlohmann::json record_to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const nlohmann::json& j);
std::vector<DatasetRecord> read_dataset(std::istream& in);
std::vector<DatasetRecord> read_dataset_file(const std::string& path);

nlohmann::json size_params(const GenSpec& spec);

struct EmitOptions {
  std::string method = "auto";
  SolveOptions solve;
  unsigned parallelism = 1;
  std::function<void(const std::string&)> log;  // defaults to stderr
};

// Builds, solves, renders and self-validates one record. Throws SolverTimeout
// or ValidationFailure.
DatasetRecord make_record(const GenSpec& spec, std::size_t index, const EmitOptions& options = {});

// Emits spec.count records in index order through `sink`. Timed-out instances
// are skipped with a log line; a record that fails its own validation aborts
// the run with ValidationFailure. Returns the number of records emitted.
std::size_t emit_dataset(const GenSpec& spec, const EmitOptions& options,
                         const std::function<void(const DatasetRecord&)>& sink);
std::size_t emit_dataset(const GenSpec& spec, const EmitOptions& options, std::ostream& jsonl);

}  // namespace accord
