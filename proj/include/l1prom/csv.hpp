#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace l1prom {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes; surrounding whitespace of unquoted fields is trimmed.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

/// Line-oriented reader with a mandatory header row. Blank lines are
/// skipped; all failures throw MalformedRow tagged with "source:line".
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::optional<std::size_t> column(std::string_view name) const;
  std::size_t require_column(std::string_view name) const;

  /// Reads the next record into fields; false at end of input.
  bool next(std::vector<std::string>& fields);

  std::size_t line() const noexcept { return line_; }
  [[noreturn]] void fail(const std::string& message) const;

  double number(const std::string& field) const;

 private:
  std::istream& in_;
  std::string source_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

}  // namespace l1prom
