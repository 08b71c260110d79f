#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moddenoise {

/// Shortest round-trip decimal is not what we want here: every numeric CSV
/// field is written with 17 significant digits so files diff stably.
std::string format_double(double value);

/// Minimal CSV table: header row plus string cells. No quoting support; none
/// of our formats need it.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ErrorKind::validation if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

}  // namespace moddenoise
