#include "regimekit/data/csv_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"

namespace regimekit::data {

namespace {

std::string lower(std::string value) {
    std::transform(value.begin(), value.end(), value.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return value;
}

int find_column(const std::vector<std::string>& header, const std::string& name) {
    std::string wanted = lower(name);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lower(header[i]) == wanted) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::optional<double> parse_field(const std::vector<std::string>& row, int col) {
    if (col < 0 || col >= static_cast<int>(row.size())) {
        return std::nullopt;
    }
    const std::string& text = row[col];
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

PriceSeries parse_price_csv(const std::string& path, const ColumnMap& columns,
                            const std::string& symbol) {
    csv::Table table = csv::read_table(path);

    int date_col = find_column(table.header, columns.date);
    int close_col = find_column(table.header, columns.close);
    if (date_col < 0) {
        fail("MissingColumn", "'" + path + "' has no '" + columns.date + "' column");
    }
    if (close_col < 0) {
        fail("MissingColumn", "'" + path + "' has no '" + columns.close + "' column");
    }
    int open_col = find_column(table.header, columns.open);
    int high_col = find_column(table.header, columns.high);
    int low_col = find_column(table.header, columns.low);

    PriceSeries series;
    series.symbol = symbol.empty()
                        ? std::filesystem::path(path).stem().string()
                        : symbol;
    series.bars.reserve(table.rows.size());

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        // Rows are numbered as in the file: header is row 1.
        std::string row_id = "row " + std::to_string(r + 2);
        if (date_col >= static_cast<int>(row.size()) || row[date_col].empty()) {
            fail("UnparseableDate", row_id + " of '" + path + "' has no date");
        }
        Bar bar;
        try {
            bar.date = Date::parse(row[date_col], columns.date_format);
        } catch (const Error& e) {
            fail(e.kind(), row_id + " of '" + path + "': " + e.what());
        }
        auto close = parse_field(row, close_col);
        if (!close.has_value()) {
            fail("NonPositivePrice", row_id + " of '" + path + "' is missing its close");
        }
        if (!(*close > 0.0) || !std::isfinite(*close)) {
            fail("NonPositivePrice", row_id + " of '" + path + "' has close " + row[close_col]);
        }
        bar.close = *close;
        bar.open = parse_field(row, open_col);
        bar.high = parse_field(row, high_col);
        bar.low = parse_field(row, low_col);
        if (!bar.high.has_value() || !bar.low.has_value()) {
            // Incomplete range data degrades to a close-only bar.
            bar.high.reset();
            bar.low.reset();
        }
        series.bars.push_back(bar);
    }

    if (series.bars.empty()) {
        fail("SeriesTooShort", "'" + path + "' has a header but no data rows");
    }

    std::stable_sort(series.bars.begin(), series.bars.end(),
                     [](const Bar& a, const Bar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.bars.size(); ++i) {
        if (series.bars[i].date == series.bars[i - 1].date) {
            fail("DuplicateDate", "'" + path + "' lists " + series.bars[i].date.to_string() +
                                      " more than once");
        }
    }
    series.validate();
    return series;
}

void write_price_csv(const std::string& path, const PriceSeries& series) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "date,open,high,low,close\n";
    for (const Bar& bar : series.bars) {
        out << bar.date.to_string() << ',';
        if (bar.open) {
            out << csv::format_double(*bar.open);
        }
        out << ',';
        if (bar.high) {
            out << csv::format_double(*bar.high);
        }
        out << ',';
        if (bar.low) {
            out << csv::format_double(*bar.low);
        }
        out << ',' << csv::format_double(bar.close) << '\n';
    }
}

}  // namespace regimekit::data
