#include "accord/eval.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace accord {

namespace {

using Clock = std::chrono::steady_clock;

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  const std::string slot = "{" + key + "}";
  for (std::size_t p = 0; (p = text.find(slot, p)) != std::string::npos; p += value.size())
    text.replace(p, slot.size(), value);
  return text;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot read " + p.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

}  // namespace

double optimality_gap(double model_value, double oracle_value, Sense sense) {
  if (!(oracle_value > 0)) throw Error(ErrorCode::NonpositiveOracle, "oracle value must be positive for a relative gap");
  return sense == Sense::Minimize ? (model_value - oracle_value) / oracle_value
                                  : (oracle_value - model_value) / oracle_value;
}

double feasibility_rate(std::size_t feasible, std::size_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(feasible) / static_cast<double>(total);
}

double feasibility_rate(const std::vector<EvalRecord>& records) {
  std::size_t feasible = 0, total = 0;
  for (const auto& r : records) {
    feasible += r.n_feasible;
    total += r.n_candidates;
  }
  return feasibility_rate(feasible, total);
}

CandidateFormat parse_candidate_format(std::string_view name) {
  if (name == "auto") return CandidateFormat::Auto;
  if (name == "accord") return CandidateFormat::Accord;
  if (name == "list") return CandidateFormat::List;
  throw Error(ErrorCode::InvalidInstance, "unknown candidate format '" + std::string(name) + "'");
}

ValidationReport validate_candidate(std::string_view text, const ProblemInstance& instance, CandidateFormat format) {
  switch (format) {
    case CandidateFormat::Accord: return validate_accord(text, instance);
    case CandidateFormat::List: return validate_list(text, instance.kind(), instance);
    case CandidateFormat::Auto: {
      auto rep = validate_accord(text, instance);
      if (rep.status != Status::Malformed) return rep;
      auto alt = validate_list(text, instance.kind(), instance);
      return alt.status == Status::Malformed ? rep : alt;
    }
  }
  return {};
}

EvalRecord best_of_n(const ProblemInstance& instance, const std::vector<std::string>& candidates,
                     std::int64_t oracle_value, CandidateFormat format) {
  const auto t0 = Clock::now();
  EvalRecord rec;
  rec.kind = instance.kind();
  rec.oracle = oracle_value;
  rec.n_candidates = candidates.size();
  const Sense sense = objective_sense(instance.kind());
  for (const auto& text : candidates) {
    const auto rep = validate_candidate(text, instance, format);
    if (!rep.feasible() || !rep.objective) continue;
    ++rec.n_feasible;
    const auto v = *rep.objective;
    const bool better = !rec.best || (sense == Sense::Minimize ? v < *rec.best : v > *rec.best);
    if (better) rec.best = v;
  }
  if (rec.best) {
    if (oracle_value > 0) {
      rec.gap = optimality_gap(static_cast<double>(*rec.best), static_cast<double>(oracle_value), sense);
    } else if (*rec.best == oracle_value) {
      rec.gap = 0.0;  // a zero oracle (e.g. an empty knapsack) is matched exactly
    }
  }
  rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rec;
}

FileSource::FileSource(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::map<std::string, std::vector<std::pair<long long, std::string>>> staged;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
      std::string stem = entry.path().stem().string();
      long long order = -1;
      const auto dot = stem.rfind('.');
      if (dot != std::string::npos && all_digits(std::string_view(stem).substr(dot + 1))) {
        order = std::stoll(stem.substr(dot + 1));
        stem.resize(dot);
      }
      staged[stem].emplace_back(order, read_file(entry.path()));
    }
    for (auto& [id, list] : staged) {
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& item : list) texts_[id].push_back(std::move(item.second));
    }
    return;
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot open candidate file " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      auto& bucket = texts_[j.at("id").get<std::string>()];
      if (j.contains("text")) bucket.push_back(j["text"].get<std::string>());
      if (j.contains("candidates"))
        for (const auto& t : j["candidates"]) bucket.push_back(t.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Malformed, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<std::string> FileSource::fetch(const DatasetRecord& record, std::size_t n) {
  const auto it = texts_.find(record.id);
  if (it == texts_.end()) return {};
  const auto take = std::min(n, it->second.size());
  return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(take)};
}

std::vector<std::string> OracleEchoSource::fetch(const DatasetRecord& record, std::size_t n) {
  return std::vector<std::string>(n, format_ == TextFormat::Accord ? record.output_accord : record.output_list);
}

HttpSource::HttpSource(HttpSourceConfig config) : config_(std::move(config)) {
  std::string rest = config_.endpoint;
  const std::string scheme = "http://";
  if (rest.rfind(scheme, 0) != 0)
    throw Error(ErrorCode::SourceUnavailable, "endpoint must start with http:// (got '" + config_.endpoint + "')");
  rest = rest.substr(scheme.size());
  const auto slash = rest.find('/');
  const std::string authority = rest.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : rest.substr(slash);
  const auto colon = authority.rfind(':');
  host_ = authority.substr(0, colon);
  if (colon != std::string::npos) {
    const auto port = authority.substr(colon + 1);
    if (!all_digits(port)) throw Error(ErrorCode::SourceUnavailable, "bad port in endpoint " + config_.endpoint);
    port_ = std::stoi(port);
  }
  if (host_.empty()) throw Error(ErrorCode::SourceUnavailable, "missing host in endpoint " + config_.endpoint);
}

std::vector<std::string> HttpSource::fetch(const DatasetRecord& record, std::size_t n) {
  std::string prompt = substitute(config_.prompt_template, "instruction", record.instruction);
  prompt = substitute(prompt, "input", record.input);
  std::string body = substitute(config_.request_template, "model", nlohmann::json(config_.model).dump());
  body = substitute(body, "temperature", nlohmann::json(config_.temperature).dump());
  body = substitute(body, "prompt", nlohmann::json(prompt).dump());

  httplib::Client client(host_, port_);
  const auto whole = static_cast<time_t>(config_.timeout_seconds);
  const auto micros = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(whole)) * 1e6);
  client.set_connection_timeout(whole, micros);
  client.set_read_timeout(whole, micros);
  client.set_write_timeout(whole, micros);

  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string failure;
    bool timed_out = false;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::duration<double>(config_.backoff_seconds * std::pow(2.0, attempt - 1)));
      auto res = client.Post(path_, body, "application/json");
      if (!config_.replay_log.empty()) {
        nlohmann::json entry{{"timestamp", utc_timestamp()},
                             {"id", record.id},
                             {"request", body},
                             {"status", res ? res->status : -1},
                             {"response", res ? res->body : httplib::to_string(res.error())}};
        std::lock_guard lock(log_mutex_);
        std::ofstream(config_.replay_log, std::ios::app) << entry.dump() << "\n";
      }
      if (!res) {
        timed_out = res.error() == httplib::Error::Read || res.error() == httplib::Error::ConnectionTimeout;
        failure = httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        failure = "HTTP " + std::to_string(res->status);
        continue;
      }
      try {
        out.push_back(nlohmann::json::parse(res->body).at(nlohmann::json::json_pointer(config_.response_pointer))
                          .get<std::string>());
        failure.clear();
        break;
      } catch (const nlohmann::json::exception& e) {
        failure = std::string("unexpected response shape: ") + e.what();
      }
    }
    if (!failure.empty())
      throw Error(timed_out ? ErrorCode::Timeout : ErrorCode::SourceUnavailable,
                  config_.endpoint + ": " + failure);
  }
  return out;
}

std::vector<std::string> fetch_candidates(CandidateSource& source, const DatasetRecord& record, std::size_t n) {
  return source.fetch(record, n);
}

std::string size_label(const DatasetRecord& record) {
  const auto& s = record.size;
  if (s.contains("jobs") && s.contains("machines"))
    return std::to_string(s["jobs"].get<int>()) + "x" + std::to_string(s["machines"].get<int>());
  std::string label;
  for (const auto& [key, value] : s.items()) {
    if (!label.empty()) label += ",";
    label += key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return label.empty() ? "-" : label;
}

std::vector<GroupSummary> summarize(const std::vector<EvalRecord>& records) {
  struct Acc {
    GroupSummary g;
    double gap_sum = 0.0;
    std::size_t gap_count = 0, feasible = 0, candidates = 0;
    double seconds = 0.0;
  };
  std::vector<Acc> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Acc& a) { return a.g.kind == r.kind && a.g.size == r.size; });
    if (it == groups.end()) {
      groups.push_back({});
      it = groups.end() - 1;
      it->g.kind = r.kind;
      it->g.size = r.size;
    }
    ++it->g.n_instances;
    if (r.gap) {
      it->gap_sum += *r.gap;
      ++it->gap_count;
    } else {
      ++it->g.n_na;
    }
    it->feasible += r.n_feasible;
    it->candidates += r.n_candidates;
    it->seconds += r.seconds;
  }
  std::stable_sort(groups.begin(), groups.end(), [](const Acc& a, const Acc& b) { return a.g.kind < b.g.kind; });
  std::vector<GroupSummary> out;
  for (auto& a : groups) {
    if (a.gap_count) a.g.mean_gap_pct = 100.0 * a.gap_sum / static_cast<double>(a.gap_count);
    a.g.feasibility_pct = feasibility_rate(a.feasible, a.candidates);
    a.g.mean_seconds = a.seconds / static_cast<double>(a.g.n_instances);
    out.push_back(a.g);
  }
  return out;
}

BenchmarkReport run_benchmark(const std::vector<DatasetRecord>& dataset, CandidateSource& source,
                              const EvalConfig& config) {
  if (config.samples < 1) throw Error(ErrorCode::InvalidInstance, "samples must be at least 1");
  BenchmarkReport report;
  report.records.resize(dataset.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto note = [&](const std::string& message) {
    if (!config.log) return;
    std::lock_guard lock(log_mutex);
    config.log(message);
  };
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < dataset.size();) {
      const auto& rec = dataset[i];
      const auto t0 = Clock::now();
      EvalRecord out;
      try {
        const auto texts = fetch_candidates(source, rec, config.samples);
        if (texts.size() < config.samples)
          note(rec.id + ": " + std::to_string(texts.size()) + " of " + std::to_string(config.samples) +
                     " candidates available");
        out = best_of_n(rec.instance, texts, rec.objective, config.format);
      } catch (const Error& e) {
        out.kind = rec.kind;
        out.oracle = rec.objective;
        out.error = e.what();
        note(rec.id + ": " + e.what());
      }
      out.id = rec.id;
      out.size = size_label(rec);
      out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      report.records[i] = std::move(out);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < std::max(1u, config.parallelism); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  report.groups = summarize(report.records);
  return report;
}

std::string report_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "problem,size,n_instances,mean_gap_pct,feasibility_pct,n_na,mean_seconds\n";
  for (const auto& g : report.groups) {
    out << kind_name(g.kind) << ",\"" << g.size << "\"," << g.n_instances << ","
        << (g.mean_gap_pct ? fixed(*g.mean_gap_pct, 4) : "N/A") << "," << fixed(g.feasibility_pct, 2) << ","
        << g.n_na << "," << fixed(g.mean_seconds, 6) << "\n";
  }
  return out.str();
}

nlohmann::json report_json(const BenchmarkReport& report) {
  nlohmann::json series = nlohmann::json::object();
  for (const auto& g : report.groups) {
    auto& s = series[std::string(kind_name(g.kind))];
    s["size"].push_back(g.size);
    s["gap_pct"].push_back(g.mean_gap_pct ? nlohmann::json(*g.mean_gap_pct) : nlohmann::json());
    s["feasibility_pct"].push_back(g.feasibility_pct);
    s["n_na"].push_back(g.n_na);
    s["seconds"].push_back(g.mean_seconds);
    s["n_instances"].push_back(g.n_instances);
  }
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"id", r.id},
                       {"problem", kind_name(r.kind)},
                       {"size", r.size},
                       {"oracle", r.oracle},
                       {"n_candidates", r.n_candidates},
                       {"n_feasible", r.n_feasible},
                       {"best", r.best ? nlohmann::json(*r.best) : nlohmann::json()},
                       {"gap", r.gap ? nlohmann::json(*r.gap) : nlohmann::json()},
                       {"seconds", r.seconds},
                       {"error", r.error}});
  }
  return {{"series", series}, {"records", records}, {"feasibility_pct", feasibility_rate(report.records)}};
}

}  // namespace accord
