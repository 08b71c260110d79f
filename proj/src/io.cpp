#include "moddenoise/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "moddenoise/errors.hpp"

namespace moddenoise {

std::string format_double(double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorKind::validation, "CSV is missing column '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') continue;
    auto fields = split_fields(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::validation, "CSV row has " + std::to_string(fields.size()) +
                                             " fields, header has " +
                                             std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorKind::validation, "CSV input is empty");
  return table;
}

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::validation, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::validation, "cannot write '" + path + "'");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!file) throw Error(ErrorKind::validation, "write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text_file(path)); }

double parse_double(std::string_view field) {
  // from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto result = std::from_chars(field.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw Error(ErrorKind::validation, "not a number: '" + std::string(field) + "'");
  }
  return value;
}

long long parse_integer(std::string_view field) {
  long long value = 0;
  const auto* end = field.data() + field.size();
  const auto result = std::from_chars(field.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw Error(ErrorKind::validation, "not an integer: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace moddenoise
