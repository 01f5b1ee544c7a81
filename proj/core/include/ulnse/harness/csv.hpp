#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ulnse::harness {

/// Numeric CSV with a header row. Values print with %.17g so a
/// write/read cycle is exact.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
    void add(std::vector<double> row);
};

std::string format_double(double v);
std::string to_csv(const CsvTable& t);
void write_csv(const std::filesystem::path& path, const CsvTable& t);
CsvTable read_csv(const std::filesystem::path& path);

/// Writes a text file verbatim (used for estimate reports with string columns).
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace ulnse::harness
