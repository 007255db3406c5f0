// Machine-readable experiment reports: schema-stable tables serialized as
// CSV, JSON or Markdown (see schemas/report.schema.json).
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace porocell {

using Json = nlohmann::json;

enum class ReportFormat : std::uint8_t { Csv, Json, Markdown };

ReportFormat parse_format(const std::string& s);
std::string format_name(ReportFormat f);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    void add_row(std::vector<Json> row);
    std::string to_csv() const;
    std::string to_markdown() const;
    Json to_json() const;
};

struct Report {
    std::string experiment;
    Json config;
    Table table;
    Json extra;  // experiment-specific summary values

    Json to_json() const;
    std::string render(ReportFormat f) const;
    // Writes to the path, or to stdout when the path is empty.
    void write(const std::string& path, ReportFormat f) const;
};

}  // namespace porocell
