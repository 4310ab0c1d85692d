#pragma once

#include <string>
#include <vector>

namespace chainsent {

// Small RFC-4180-ish CSV layer: quoted fields with embedded commas/quotes
// and newlines are supported on read; the writer quotes only when needed and
// always terminates rows with '\n' so artifacts are byte-stable.

std::vector<std::vector<std::string>> csv_parse(const std::string &content);
std::vector<std::vector<std::string>> csv_read_file(const std::string &path);

std::string csv_escape(const std::string &field);
std::string csv_row(const std::vector<std::string> &fields);

} // namespace chainsent
