#include "ulnse/harness/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ulnse::harness {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return k;
    }
    throw std::out_of_range("no column '" + name + "'");
}

std::vector<double> CsvTable::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
}

void CsvTable::add(std::vector<double> row) {
    if (row.size() != header.size()) throw std::invalid_argument("CSV row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const CsvTable& t) {
    std::string out;
    for (std::size_t k = 0; k < t.header.size(); ++k) out += (k ? "," : "") + t.header[k];
    out += '\n';
    for (const auto& r : t.rows) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k) out += ',';
            out += format_double(r[k]);
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) { write_text(path, to_csv(t)); }

CsvTable read_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty CSV");
    std::stringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) t.header.push_back(cell);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": not a number '" + cell + "'");
            }
            row.push_back(v);
        }
        if (row.size() != t.header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.header.size()) + " fields");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace ulnse::harness
