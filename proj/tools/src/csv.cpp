#include "yates/app/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace yates::app {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw ParseError(1, "no column named '" + name + "' in header");
  }
  return static_cast<std::size_t>(it - table.header.begin());
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted_field = false;
  bool in_quotes = false;
  bool record_has_content = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  const auto end_field = [&] {
    record.push_back(quoted_field ? field : trim(field));
    field.clear();
    quoted_field = false;
  };
  const auto end_record = [&] {
    end_field();
    const bool blank = !record_has_content && record.size() == 1 && record[0].empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        if (record.size() != table.header.size()) {
          throw ParseError(record_line, "expected " + std::to_string(table.header.size()) +
                                            " fields, found " + std::to_string(record.size()));
        }
        table.rows.push_back(std::move(record));
        table.row_lines.push_back(record_line);
      }
    }
    record.clear();
    record_has_content = false;
  };

  char ch = 0;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!trim(field).empty()) {
          throw ParseError(line, "quote inside an unquoted field");
        }
        field.clear();
        in_quotes = true;
        quoted_field = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        if (quoted_field) {
          if (ch != ' ' && ch != '\t' && ch != '\r') {
            throw ParseError(line, "characters after a closing quote");
          }
          break;
        }
        field.push_back(ch);
    }
  }
  if (in_quotes) throw ParseError(record_line, "unterminated quoted field");
  if (!field.empty() || !record.empty() || record_has_content) end_record();
  if (table.header.empty()) throw ParseError(1, "input is empty");
  return table;
}

Dataset load_dataset(const CsvTable& table, const std::string& response,
                     const std::string& factor_a, const std::string& factor_b) {
  const std::size_t yi = column_index(table, response);
  const std::size_t ai = column_index(table, factor_a);
  const std::size_t bi = column_index(table, factor_b);
  if (table.rows.empty()) throw ParseError(2, "no data rows");

  std::vector<Observation> obs;
  obs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    const std::string& text = row[yi];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
      throw ParseError(line, "column '" + response + "': cannot read '" + text +
                                 "' as a finite number");
    }
    if (row[ai].empty() || row[bi].empty()) {
      throw ParseError(line, "missing factor label");
    }
    obs.push_back(Observation{row[ai], row[bi], value});
  }
  return Dataset(std::move(obs));
}

}  // namespace yates::app
