#include "nicholson/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nicholson/errors.hpp"

namespace nicholson {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        os << (c ? "," : "") << table.header[c];
    }
    os << '\n';
    const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c ? "," : "") << format_double(table.columns[c][r]);
        }
        os << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + path.string());
    write_csv(os, table);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    t.columns.resize(t.header.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::size_t col = 0;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const auto comma = line.find(',', pos);
            const auto end = comma == std::string::npos ? line.size() : comma;
            if (col >= t.columns.size()) {
                throw ConfigError(path.string() + ": too many fields on row " + std::to_string(row));
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
            if (ec != std::errc() || ptr != line.data() + end) {
                throw ConfigError(path.string() + ": bad number on row " + std::to_string(row));
            }
            t.columns[col++].push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (col != t.columns.size()) {
            throw ConfigError(path.string() + ": too few fields on row " + std::to_string(row));
        }
    }
    return t;
}

Profile profile_from_csv(const CsvTable& table, LeftTail tail, double right_limit) {
    if (table.columns.size() < 2 || table.columns[0].size() < 2) {
        throw ConfigError("profile table needs columns t,value and at least two rows");
    }
    const auto& t = table.columns[0];
    const std::size_t n = t.size();
    const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = t.front() + static_cast<double>(i) * h;
        if (std::abs(t[i] - expected) > 1e-6 * h) {
            throw ConfigError("profile table is not on a uniform grid (row " + std::to_string(i + 2) + ")");
        }
    }
    GridSpec g;
    try {
        g = GridSpec::make(t.front(), t.back(), h);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return Profile(g, table.columns[1], tail, right_limit);
}

}  // namespace nicholson
