#include "fanomode/table.hpp"

#include <cstdio>

#include <json.hpp>

namespace fanomode {

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& t, bool header)
{
    if (header) {
        for (const auto& [k, v] : t.metadata)
            out << "# " << k << ": " << v << '\n';
        for (const auto& [k, v] : t.summary)
            out << "# " << k << ": " << v << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t, bool header)
{
    nlohmann::ordered_json doc;
    if (header) {
        nlohmann::ordered_json meta = nlohmann::ordered_json::object();
        for (const auto& [k, v] : t.metadata)
            meta[k] = v;
        doc["metadata"] = meta;
    }
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.summary)
        summary[k] = v;
    doc["summary"] = summary;
    doc["columns"] = t.columns;
    doc["data"] = t.rows;
    out << doc.dump(1) << '\n';
}

} // namespace fanomode
