#pragma once

// Taillard benchmark files: job shop (Times/Machines blocks) and permutation
// flow shop (machine-major processing-time matrix). Only the first instance of
// a multi-instance file is read.

#include <iosfwd>
#include <string>

#include "accord/problem.hpp"

namespace accord {

// Throws ParseError (line, detail) on malformed or truncated input.
ShopInstance read_taillard(std::istream& in, ProblemKind kind);
ShopInstance read_taillard(const std::string& path, ProblemKind kind);

void write_taillard(std::ostream& out, const ShopInstance& instance);

}  // namespace accord
