#pragma once

#include <string>
#include <vector>

namespace regimekit::csv {

std::vector<std::string> split_line(const std::string& line, char delimiter = ',');
std::string trim(const std::string& value);

// Shortest round-trip decimal representation (std::to_chars), so emitted
// files are byte-deterministic and re-parse to the identical double.
std::string format_double(double value);

// Reads all non-empty lines; first line is the header.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
Table read_table(const std::string& path, char delimiter = ',');

}  // namespace regimekit::csv
