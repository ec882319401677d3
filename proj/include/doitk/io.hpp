#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace doitk::io {

/// One parsed CSV record with the 1-based physical line it started on.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
/// Throws DataError with the line number on an unterminated quote.
std::vector<CsvRecord> parse_csv(std::string_view text);
std::vector<CsvRecord> read_csv(const std::filesystem::path& path);

/// Quote a field only when it needs it.
std::string csv_escape(std::string_view field);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// Shortest decimal text that parses back to the identical double.
std::string format_double(double v);

}  // namespace doitk::io
