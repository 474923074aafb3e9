#ifndef CDW_CSV_HPP
#define CDW_CSV_HPP

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

namespace cdw {

// Shortest round-trip decimal form (std::to_chars); locale-independent, so
// reruns produce byte-identical files.
std::string format_double(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void write_row(const std::vector<double>& values);
    // Mixed row: raw cells, already formatted.
    void write_cells(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t columns_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Strict numeric CSV reader: header line plus uniform-width double rows.
CsvTable read_csv(const std::string& path);

} // namespace cdw

#endif
