#include "regimekit/common/csv.h"

#include <charconv>
#include <fstream>

#include "regimekit/common/error.h"

namespace regimekit::csv {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string token;
    for (char ch : line) {
        if (ch == delimiter) {
            fields.push_back(token);
            token.clear();
        } else {
            token.push_back(ch);
        }
    }
    fields.push_back(token);
    return fields;
}

std::string trim(const std::string& value) {
    const auto first = value.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = value.find_last_not_of(" \t\r\n");
    return value.substr(first, last - first + 1);
}

std::string format_double(double value) {
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

Table read_table(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) {
        fail("FileNotFound", "cannot open '" + path + "'");
    }
    Table table;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_line(line, delimiter);
        for (auto& field : fields) {
            field = trim(field);
        }
        if (!saw_header) {
            table.header = std::move(fields);
            saw_header = true;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    if (!saw_header) {
        fail("EmptyFile", "'" + path + "' has no header row");
    }
    return table;
}

}  // namespace regimekit::csv
