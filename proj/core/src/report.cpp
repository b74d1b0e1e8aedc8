#include "slzflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace slz {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

std::string json_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return fmt(v);
}

void emit_summary_body(std::ostringstream& out, const ResultRecord& r, const char* indent) {
    out << indent << "\"values\": {";
    for (std::size_t i = 0; i < r.summary_values.size(); ++i) {
        if (i) out << ", ";
        out << "\"" << json_escape(r.summary_values[i].first)
            << "\": " << json_number(r.summary_values[i].second);
    }
    out << "},\n" << indent << "\"properties\": {";
    for (std::size_t i = 0; i < r.summary_flags.size(); ++i) {
        if (i) out << ", ";
        out << "\"" << json_escape(r.summary_flags[i].first)
            << "\": " << (r.summary_flags[i].second ? "true" : "false");
    }
    out << "},\n" << indent << "\"all_pass\": " << (r.all_pass ? "true" : "false") << "\n";
}

} // namespace

std::string ResultRecord::to_json() const {
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema_version\": " << schema_version << ",\n";
    out << "  \"run_type\": \"" << json_escape(run_type) << "\",\n";
    out << "  \"config_echo\": {\n";
    for (std::size_t i = 0; i < config_echo.size(); ++i) {
        out << "    \"" << json_escape(config_echo[i].first) << "\": \""
            << json_escape(config_echo[i].second) << "\"";
        out << (i + 1 < config_echo.size() ? ",\n" : "\n");
    }
    out << "  },\n";
    out << "  \"columns\": [";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ", ";
        out << "\"" << json_escape(columns[i]) << "\"";
    }
    out << "],\n";
    out << "  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j) out << ", ";
            out << json_number(rows[i][j]);
        }
        out << ", \"" << json_escape(row_flags[i]) << "\"]";
        out << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    out << "  ],\n";
    out << "  \"summary\": {\n";
    emit_summary_body(out, *this, "    ");
    out << "  }\n";
    out << "}\n";
    return out.str();
}

std::string ResultRecord::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ",";
        out << columns[i];
    }
    out << ",flag\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j) out << ",";
            out << fmt(rows[i][j]);
        }
        out << "," << row_flags[i] << "\n";
    }
    return out.str();
}

std::string ResultRecord::summary_json() const {
    std::ostringstream out;
    out << "{\n  \"run_type\": \"" << json_escape(run_type) << "\",\n";
    emit_summary_body(out, *this, "  ");
    out << "}\n";
    return out.str();
}

} // namespace slz
