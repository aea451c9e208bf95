#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "yates/design.hpp"
#include "yates/errors.hpp"

namespace yates::app {

/// Malformed CSV input or a missing/unparseable column; the message names the line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Source line on which each row starts (1-based; the header is line 1).
  std::vector<std::size_t> row_lines;
};

/** Reads comma-separated text whose first record is a header.
 *
 * Fields may be double-quoted; inside quotes, "" is a literal quote and commas and
 * newlines are data. Unquoted surrounding whitespace is trimmed. Blank lines are skipped.
 */
CsvTable parse_csv(std::istream& in);

/// Builds a dataset from the named response column and two factor columns.
Dataset load_dataset(const CsvTable& table, const std::string& response,
                     const std::string& factor_a, const std::string& factor_b);

}  // namespace yates::app
