#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tzvar::csv {

using Row = std::vector<std::string>;

// Minimal RFC-4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Blank lines are skipped. Field whitespace is trimmed when unquoted.
std::vector<Row> parse(std::string_view text);
std::vector<Row> read_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string escape(std::string_view field);
std::string join(const Row& fields);

// Shortest-roundtrip-safe float formatting (17 significant digits).
std::string format_double(double v);
bool parse_double(std::string_view text, double& out);

}  // namespace tzvar::csv
