#include "porocell/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace porocell {

ReportFormat parse_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "md" || s == "markdown") return ReportFormat::Markdown;
    throw std::invalid_argument("unknown report format: " + s);
}

std::string format_name(ReportFormat f) {
    switch (f) {
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Json: return "json";
        case ReportFormat::Markdown: return "md";
    }
    return "?";
}

void Table::add_row(std::vector<Json> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("Table::add_row: row width does not match the header");
    rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(12);
        os << v.get<double>();
        return os.str();
    }
    return v.dump();
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
        os << "\n";
    }
    return os.str();
}

std::string Table::to_markdown() const {
    std::ostringstream os;
    os << "|";
    for (const auto& c : columns) os << " " << c << " |";
    os << "\n|";
    for (std::size_t c = 0; c < columns.size(); ++c) os << " --- |";
    os << "\n";
    for (const auto& row : rows) {
        os << "|";
        for (const auto& v : row) os << " " << cell_text(v) << " |";
        os << "\n";
    }
    return os.str();
}

Json Table::to_json() const {
    Json j;
    j["columns"] = columns;
    j["rows"] = rows;
    return j;
}

Json Report::to_json() const {
    Json j;
    j["experiment"] = experiment;
    j["config"] = config;
    j["table"] = table.to_json();
    j["summary"] = extra.is_null() ? Json::object() : extra;
    return j;
}

std::string Report::render(ReportFormat f) const {
    switch (f) {
        case ReportFormat::Csv: return table.to_csv();
        case ReportFormat::Json: return to_json().dump(2) + "\n";
        case ReportFormat::Markdown: {
            std::ostringstream os;
            os << "## " << experiment << "\n\n" << table.to_markdown();
            if (!extra.is_null() && !extra.empty()) os << "\nsummary: " << extra.dump() << "\n";
            return os.str();
        }
    }
    return {};
}

void Report::write(const std::string& path, ReportFormat f) const {
    const std::string text = render(f);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("Report::write: cannot open " + path);
    os << text;
}

}  // namespace porocell
