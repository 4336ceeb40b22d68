#include "accord/taillard.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "accord/codec.hpp"

namespace accord {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line with visible content; throws at end of input.
  std::string next(const std::string& wanted) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    fail(wanted + " (file ends early)", line_no_ + 1);
  }

  std::vector<std::int64_t> numbers(const std::string& wanted, std::size_t count) {
    const auto line = next(wanted);
    std::istringstream is(line);
    std::vector<std::int64_t> out;
    std::string token;
    while (is >> token) {
      if (!std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
        fail(wanted + ", found '" + token + "'");
      out.push_back(std::stoll(token));
    }
    if (count && out.size() != count)
      fail(wanted + ": " + std::to_string(count) + " numbers, found " + std::to_string(out.size()));
    return out;
  }

  void keyword(const std::string& word) {
    auto line = next("'" + word + "'");
    std::transform(line.begin(), line.end(), line.begin(), [](unsigned char c) { return std::tolower(c); });
    if (line.find(word) == std::string::npos) fail("'" + word + "'");
  }

  [[noreturn]] void fail(const std::string& wanted) const { fail(wanted, line_no_); }
  [[noreturn]] static void fail(const std::string& wanted, std::size_t line) { throw ParseError(line, 1, wanted); }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

bool has_letters(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c); });
}

}  // namespace

ShopInstance read_taillard(std::istream& in, ProblemKind kind) {
  if (kind != ProblemKind::Jssp && kind != ProblemKind::Fssp)
    throw Error(ErrorCode::KindMismatch, "Taillard files hold job-shop or flow-shop instances only");
  LineReader reader(in);
  if (!has_letters(reader.next("header line"))) reader.fail("header line");
  const auto counts = reader.numbers("job and machine counts", 0);
  if (counts.size() < 2) reader.fail("job and machine counts");
  if (counts[0] < 1 || counts[1] < 1 || counts[0] > 100000 || counts[1] > 100000) reader.fail("positive counts");
  ShopInstance s;
  s.kind = kind;
  s.jobs = static_cast<int>(counts[0]);
  s.machines = static_cast<int>(counts[1]);
  const auto n = static_cast<std::size_t>(s.jobs), m = static_cast<std::size_t>(s.machines);
  s.ops.assign(n, std::vector<ShopOperation>(m));

  if (kind == ProblemKind::Fssp) {
    reader.keyword("processing times");
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = reader.numbers("processing times of machine " + std::to_string(i + 1), n);
      for (std::size_t j = 0; j < n; ++j) s.ops[j][i] = {static_cast<int>(i), row[j]};
    }
  } else {
    reader.keyword("times");
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = reader.numbers("times of job " + std::to_string(j + 1), m);
      for (std::size_t k = 0; k < m; ++k) s.ops[j][k].duration = row[k];
    }
    reader.keyword("machines");
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = reader.numbers("machine order of job " + std::to_string(j + 1), m);
      std::vector<bool> seen(m, false);
      for (std::size_t k = 0; k < m; ++k) {
        if (row[k] < 1 || static_cast<std::size_t>(row[k]) > m || seen[row[k] - 1])
          reader.fail("a permutation of machines 1.." + std::to_string(m));
        seen[row[k] - 1] = true;
        s.ops[j][k].machine = static_cast<int>(row[k] - 1);
      }
    }
  }
  validate_instance(ProblemInstance{s});
  return s;
}

ShopInstance read_taillard(const std::string& path, ProblemKind kind) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_taillard(in, kind);
}

void write_taillard(std::ostream& out, const ShopInstance& s) {
  const auto cell = [&](std::int64_t v) { out << ' ' << std::setw(3) << v; };
  if (s.kind == ProblemKind::Fssp) {
    out << "number of jobs, number of machines\n";
    out << std::setw(12) << s.jobs << std::setw(12) << s.machines << "\n";
    out << "processing times :\n";
    for (int i = 0; i < s.machines; ++i) {
      for (int j = 0; j < s.jobs; ++j) cell(s.ops[j][i].duration);
      out << "\n";
    }
    return;
  }
  out << "Nb of jobs, Nb of Machines\n";
  out << std::setw(12) << s.jobs << std::setw(12) << s.machines << "\n";
  out << "Times\n";
  for (const auto& job : s.ops) {
    for (const auto& op : job) cell(op.duration);
    out << "\n";
  }
  out << "Machines\n";
  for (const auto& job : s.ops) {
    for (const auto& op : job) cell(op.machine + 1);
    out << "\n";
  }
}

}  // namespace accord
