#pragma once

// Best-of-N evaluation of candidate solution texts against oracle values.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accord/codec.hpp"
#include "accord/dataset.hpp"

namespace accord {

// min: (model - oracle) / oracle; max: (oracle - model) / oracle.
// Throws NonpositiveOracle when oracle <= 0.
double optimality_gap(double model_value, double oracle_value, Sense sense);

// 100 * feasible / total, 0 for an empty population.
double feasibility_rate(std::size_t feasible, std::size_t total);

struct EvalRecord {
  std::string id;
  ProblemKind kind = ProblemKind::Knapsack;
  std::string size;  // group label, e.g. "n=10" or "15x15"
  std::int64_t oracle = 0;
  std::size_t n_candidates = 0;
  std::size_t n_feasible = 0;
  std::optional<std::int64_t> best;
  std::optional<double> gap;
  double seconds = 0.0;
  std::string error;  // source failure, if any
};

double feasibility_rate(const std::vector<EvalRecord>& records);

// Text format of candidates; Auto tries ACCORD first, then the list format.
enum class CandidateFormat { Auto, Accord, List };
CandidateFormat parse_candidate_format(std::string_view name);

ValidationReport validate_candidate(std::string_view text, const ProblemInstance& instance, CandidateFormat format);

EvalRecord best_of_n(const ProblemInstance& instance, const std::vector<std::string>& candidates,
                     std::int64_t oracle_value, CandidateFormat format = CandidateFormat::Auto);

class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  // Throws SourceUnavailable or Timeout.
  virtual std::vector<std::string> fetch(const DatasetRecord& record, std::size_t n) = 0;
};

// JSONL lines {"id": ..., "text": ...} or {"id": ..., "candidates": [...]}, or a
// directory holding <id>.txt and <id>.<k>.txt files.
class FileSource : public CandidateSource {
 public:
  explicit FileSource(const std::string& path);
  std::vector<std::string> fetch(const DatasetRecord& record, std::size_t n) override;
  std::size_t size() const { return texts_.size(); }

 private:
  std::map<std::string, std::vector<std::string>> texts_;
};

// Candidates are the record's own rendered oracle solution.
class OracleEchoSource : public CandidateSource {
 public:
  explicit OracleEchoSource(TextFormat format = TextFormat::Accord) : format_(format) {}
  std::vector<std::string> fetch(const DatasetRecord& record, std::size_t n) override;

 private:
  TextFormat format_;
};

struct HttpSourceConfig {
  std::string endpoint;  // http://host:port/path
  std::string model = "accord";
  double temperature = 0.7;
  // {instruction} and {input} are substituted.
  std::string prompt_template = "{instruction}\n{input}";
  // Request body template; {model}, {temperature} and {prompt} are substituted
  // with JSON-encoded values.
  std::string request_template =
      R"({"model": {model}, "temperature": {temperature}, "messages": [{"role": "user", "content": {prompt}}]})";
  std::string response_pointer = "/choices/0/message/content";
  int max_retries = 3;
  double backoff_seconds = 0.2;
  double timeout_seconds = 60.0;
  std::string replay_log;  // JSONL of request/response/timestamp; empty = off
};

class HttpSource : public CandidateSource {
 public:
  explicit HttpSource(HttpSourceConfig config);
  std::vector<std::string> fetch(const DatasetRecord& record, std::size_t n) override;

 private:
  HttpSourceConfig config_;
  std::string host_;
  int port_ = 80;
  std::string path_;
  std::mutex log_mutex_;
};

std::vector<std::string> fetch_candidates(CandidateSource& source, const DatasetRecord& record, std::size_t n);

struct EvalConfig {
  std::size_t samples = 60;
  CandidateFormat format = CandidateFormat::Auto;
  unsigned parallelism = 1;
  std::function<void(const std::string&)> log;  // source shortfalls and failures
};

struct GroupSummary {
  ProblemKind kind = ProblemKind::Knapsack;
  std::string size;
  std::size_t n_instances = 0;
  std::optional<double> mean_gap_pct;  // over instances with a feasible candidate
  double feasibility_pct = 0.0;
  std::size_t n_na = 0;
  double mean_seconds = 0.0;
};

struct BenchmarkReport {
  std::vector<EvalRecord> records;
  std::vector<GroupSummary> groups;  // ordered by problem kind, then first appearance of size
};

std::string size_label(const DatasetRecord& record);

BenchmarkReport run_benchmark(const std::vector<DatasetRecord>& dataset, CandidateSource& source,
                              const EvalConfig& config = {});
std::vector<GroupSummary> summarize(const std::vector<EvalRecord>& records);

std::string report_csv(const BenchmarkReport& report);
nlohmann::json report_json(const BenchmarkReport& report);

}  // namespace accord
