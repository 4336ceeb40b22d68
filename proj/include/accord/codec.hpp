#pragma once

// Rendering, parsing and stepwise validation of solution texts.
//
// Two wire formats exist for every problem kind: the annotated ACCORD format,
// where each step carries its running totals and bound checks, and the plain
// list-of-lists format with totals declared once at the end. The grammars are
// documented in docs/grammar.md. Renderers emit the canonical spacing; the
// parsers accept any whitespace between tokens.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "accord/problem.hpp"

namespace accord {

enum class TextFormat { Accord, List };
std::string_view format_name(TextFormat format);
TextFormat parse_format(std::string_view name);

/// Thrown by the parsers; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected)
      : Error(ErrorCode::Malformed, "malformed at " + std::to_string(line) + ":" + std::to_string(column) +
                                        ": expected " + expected),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

// [[value, weight] -> value:prev+add=next, weight:prev+add=next<=bound]
struct KnapsackStep {
  std::int64_t item_value = 0;
  std::int64_t item_weight = 0;
  std::int64_t prev_value = 0;
  std::int64_t add_value = 0;
  std::int64_t new_value = 0;
  std::int64_t prev_weight = 0;
  std::int64_t add_weight = 0;
  std::int64_t new_weight = 0;
  std::int64_t bound = 0;
};

// (item, weight)->cumulative[<=bound], inside "Bin k:"
struct BinStep {
  std::size_t header = 0;  // 0-based ordinal of the enclosing "Bin k:" header
  std::int64_t bin = 0;    // declared 1-based bin number
  std::int64_t item = 0;
  std::int64_t weight = 0;
  std::int64_t cumulative = 0;
  std::optional<std::int64_t> bound;
};

// (node): (x, y) [+ leg]; the first node of a route has no leg.
struct RouteStep {
  std::size_t route = 0;  // 0-based route ordinal
  std::int64_t node = 0;
  Point at;
  std::optional<std::int64_t> leg;
};

// Jj-Mm: start+duration -> end
struct JobShopStep {
  std::int64_t job = 0;
  std::int64_t machine = 0;
  std::int64_t start = 0;
  std::int64_t duration = 0;
  std::int64_t end = 0;
};

struct MachineStep {
  std::int64_t machine = 0;  // as written (1-based)
  std::int64_t start = 0;
  std::int64_t duration = 0;
  std::int64_t end = 0;
};

// Jj: M1(s+p=e) -> M2(s+p=e) ...; job numbers are 1-based as written.
struct FlowShopStep {
  std::int64_t job = 0;
  std::vector<MachineStep> machines;
};

using AccordStep = std::variant<KnapsackStep, BinStep, RouteStep, JobShopStep, FlowShopStep>;

struct DeclaredTotals {
  std::optional<std::int64_t> value;          // knapsack "Total Value"
  std::optional<std::int64_t> weight;         // knapsack "Total Weight"
  std::optional<std::int64_t> weight_bound;   // knapsack "Total Weight: w<=W"
  std::optional<std::int64_t> distance;       // routing
  std::optional<std::int64_t> bins;           // bin packing
  std::optional<std::int64_t> makespan;       // shop problems
};

struct AccordTrace {
  ProblemKind kind = ProblemKind::Knapsack;
  std::vector<AccordStep> steps;
  std::vector<std::int64_t> bin_headers;  // bin packing: declared "Bin k:" numbers in order
  std::size_t route_count = 0;            // routing: number of "Vehicle Route:" lines
  DeclaredTotals totals;
};

enum class Status { Feasible, Infeasible, Malformed };
std::string_view status_name(Status status);

enum class FindingCode {
  Malformed,
  KindMismatch,
  ArithmeticMismatch,   // a declared a+b=c or s+p -> e does not hold
  ChainMismatch,        // declared previous total differs from the replayed state
  OperandMismatch,      // declared addend differs from the item it refers to
  BoundMismatch,        // declared bound differs from the instance capacity
  CapacityViolation,
  UnknownItem,
  DuplicateItem,
  WeightMismatch,
  BinNumbering,
  EmptyBin,
  UnknownNode,
  CoordinateMismatch,
  DistanceMismatch,
  RevisitedNode,
  DepotMissing,
  RouteNotClosed,
  TooManyRoutes,
  UnknownOperation,
  DuplicateOperation,
  DurationMismatch,
  PrecedenceViolation,
  MachineConflict,
  MachineOrder,
  Incomplete,
  DeclaredTotalMismatch,
  ConstraintViolation,
};
std::string_view finding_name(FindingCode code);

struct Finding {
  std::size_t step = 0;  // 1-based step; 0 for whole-trace checks (totals, completeness)
  FindingCode code = FindingCode::Malformed;
  std::string detail;
};

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string expected;
};

struct ValidationReport {
  Status status = Status::Malformed;
  std::vector<Finding> errors;
  std::optional<std::int64_t> objective;
  std::optional<SourceLocation> malformed_at;

  bool feasible() const { return status == Status::Feasible; }
  bool has(FindingCode code) const;
  const Finding* first(FindingCode code) const;
};

std::string render_accord(const ProblemInstance& instance, const Solution& solution);
std::string render_list(const ProblemInstance& instance, const Solution& solution);
std::string render(const ProblemInstance& instance, const Solution& solution, TextFormat format);

AccordTrace parse_accord(std::string_view text, ProblemKind kind);
ValidationReport validate_trace(const AccordTrace& trace, const ProblemInstance& instance);

// parse_accord + validate_trace, with parse failures folded into a Malformed report.
ValidationReport validate_accord(std::string_view text, const ProblemInstance& instance);
ValidationReport validate_list(std::string_view text, ProblemKind kind, const ProblemInstance& instance);
ValidationReport validate_text(std::string_view text, const ProblemInstance& instance, TextFormat format);

// Order in which scheduled operations are written in both shop formats.
std::vector<ScheduledOp> ordered_schedule(const ProblemInstance& instance, const Solution& solution);

}  // namespace accord
