#include "singdyn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "singdyn/errors.hpp"

namespace singdyn {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) os_ << ',';
        os_ << header[i];
    }
    os_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != columns_) throw Error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os_ << ',';
        os_ << format_double(values[i]);
    }
    os_ << '\n';
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::col(size_t index) const {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.at(index));
    return v;
}

static std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line) || line.empty())
        throw ConfigError("CSV: missing header row");
    table.header = split_line(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != table.header.size())
            throw ConfigError("CSV: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            try {
                size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ConfigError("CSV: non-numeric cell '" + cell + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ConfigError("CSV: no data rows");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open CSV file: " + path);
    return read_csv(f);
}

}  // namespace singdyn
