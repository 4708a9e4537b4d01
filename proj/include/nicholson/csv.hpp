#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nicholson/profile.hpp"

namespace nicholson {

/// Header row, `,` separator, `\n` line endings, doubles with 17 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Throws ConfigError on unreadable files or malformed rows.
CsvTable read_csv(const std::filesystem::path& path);

/// Rebuilds a profile from a (t, value) table on a uniform grid.
Profile profile_from_csv(const CsvTable& table, LeftTail tail, double right_limit);

}  // namespace nicholson
