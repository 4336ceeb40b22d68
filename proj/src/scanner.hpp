#pragma once

// Whitespace-tolerant token scanner shared by the text parsers.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "accord/codec.hpp"

namespace accord::detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  // True if `lit` follows (after optional whitespace). A space inside `lit`
  // matches one or more whitespace characters. Consumes input only on success.
  bool accept(std::string_view lit, bool skip = true) {
    const std::size_t saved = pos_;
    if (skip) skip_ws();
    if (match_here(lit)) return true;
    pos_ = saved;
    return false;
  }

  bool peek(std::string_view lit) {
    const std::size_t saved = pos_;
    const bool ok = accept(lit);
    pos_ = saved;
    return ok;
  }

  void expect(std::string_view lit, bool skip = true) {
    if (!accept(lit, skip)) fail("'" + std::string(lit) + "'");
  }

  // Unsigned decimal integer without leading zeros.
  std::int64_t number(bool skip = true) {
    if (skip) skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("number");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int d = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
        pos_ = start;
        fail("number within 64-bit range");
      }
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ - start > 1 && text_[start] == '0') {
      pos_ = start;
      fail("number without leading zeros");
    }
    return v;
  }

  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, expected);
  }

 private:
  bool match_here(std::string_view lit) {
    std::size_t p = pos_;
    for (std::size_t i = 0; i < lit.size(); ++i) {
      if (lit[i] == ' ') {
        if (p >= text_.size() || !std::isspace(static_cast<unsigned char>(text_[p]))) return false;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        continue;
      }
      if (p >= text_.size() || text_[p] != lit[i]) return false;
      ++p;
    }
    pos_ = p;
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace accord::detail
