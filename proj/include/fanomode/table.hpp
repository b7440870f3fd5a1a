// table.hpp: column data with a metadata header, written as CSV or JSON

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fanomode {

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> summary;

    void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }
};

// %.17g; round-trips every double.
std::string format_number(double v);

// '#'-prefixed metadata and summary lines (omitted when header is false),
// then a column line and one line per row.
void write_csv(std::ostream& out, const Table& t, bool header);

void write_json(std::ostream& out, const Table& t, bool header);

} // namespace fanomode
