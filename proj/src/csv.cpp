#include "l1prom/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <istream>

#include "l1prom/error.hpp"

namespace l1prom {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<std::vector<std::string>> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (true) {
    std::string field;
    std::size_t start = i;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(line[i++]);
      }
      if (!closed) return std::nullopt;
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') return std::nullopt;
    } else {
      i = start;
      const auto comma = line.find(',', i);
      const auto end = comma == std::string_view::npos ? line.size() : comma;
      field = std::string(trim(line.substr(i, end - i)));
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // skip comma
    if (i == line.size()) {
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

CsvReader::CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {
  std::vector<std::string> fields;
  if (!next(fields)) throw Error(Errc::MalformedRow, source_ + ": missing header row");
  if (!fields.empty() && fields.front().starts_with("\xEF\xBB\xBF")) fields.front().erase(0, 3);
  header_ = std::move(fields);
}

std::optional<std::size_t> CsvReader::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  return std::nullopt;
}

std::size_t CsvReader::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  throw Error(Errc::MalformedRow, source_ + ":1: missing column '" + std::string(name) + "'");
}

bool CsvReader::next(std::vector<std::string>& fields) {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    auto parsed = split_csv_line(raw);
    if (!parsed) fail("unterminated or misplaced quote");
    if (!header_.empty() && parsed->size() != header_.size()) {
      fail("expected " + std::to_string(header_.size()) + " fields, found " + std::to_string(parsed->size()));
    }
    fields = std::move(*parsed);
    return true;
  }
  if (in_.bad()) throw Error(Errc::Io, source_ + ": read error");
  return false;
}

void CsvReader::fail(const std::string& message) const {
  throw Error(Errc::MalformedRow, source_ + ":" + std::to_string(line_) + ": " + message);
}

double CsvReader::number(const std::string& field) const {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail("'" + field + "' is not a number");
  }
  return value;
}

}  // namespace l1prom
