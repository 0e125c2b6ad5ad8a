#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace singdyn {

/// Full-precision decimal formatting ("%.17g"): values round-trip exactly,
/// identical inputs give byte-identical output.
std::string format_double(double v);

/// Comma-separated writer with a header row.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    void row(std::span<const double> values);

private:
    std::ostream& os_;
    size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
    std::vector<double> col(size_t index) const;
};

/// Parse a CSV with a header row and numeric cells.
/// Throws ConfigError on empty or non-numeric input.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace singdyn
