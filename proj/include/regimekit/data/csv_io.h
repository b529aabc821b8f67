#pragma once

#include <string>

#include "regimekit/data/series.h"

namespace regimekit::data {

// Header names to look for in a price CSV. Open/high/low are optional
// columns; a row missing any of them yields a close-only bar.
struct ColumnMap {
    std::string date = "date";
    std::string open = "open";
    std::string high = "high";
    std::string low = "low";
    std::string close = "close";
    std::string date_format = "%Y-%m-%d";
};

// Loads and validates a price CSV. Rows may arrive in any order; the result
// is date-sorted. Errors (MissingColumn, UnparseableDate, NonPositivePrice,
// DuplicateDate) name the offending row.
PriceSeries parse_price_csv(const std::string& path, const ColumnMap& columns = {},
                            const std::string& symbol = "");

// Writes `date,open,high,low,close` with round-trip double formatting, so
// parse(write(parse(x))) reproduces the bars exactly.
void write_price_csv(const std::string& path, const PriceSeries& series);

}  // namespace regimekit::data
