#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "healthadvisor/errors.hpp"

namespace healthadvisor {

// RFC-4180 style CSV: comma separated, '"' quoting, doubled quotes inside
// quoted fields, CRLF tolerated, newlines allowed inside quoted fields.
struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line where the record starts
};

struct CsvTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

inline CsvTable parse_csv(std::string_view text, const std::string& source_name) {
    CsvTable table;
    table.source = source_name;

    std::vector<CsvRow> records;
    CsvRow record;
    record.line = 1;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_data = false;
    std::size_t line = 1;

    auto fail = [&](const std::string& message, std::size_t at_line) {
        throw ValidationError(source_name + ":" + std::to_string(at_line) + ": " + message);
    };
    auto end_field = [&] {
        record.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        if (record_has_data || !record.fields.empty() || !field.empty()) {
            end_field();
            records.push_back(std::move(record));
        }
        record = CsvRow{};
        record.line = line;
        record_has_data = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    fail("unexpected '\"' inside unquoted field", line);
                }
                in_quotes = true;
                field_was_quoted = true;
                record_has_data = true;
                break;
            case ',':
                end_field();
                record_has_data = true;
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default:
                if (field_was_quoted) fail("data after closing quote", line);
                field.push_back(c);
                record_has_data = true;
                break;
        }
    }
    if (in_quotes) fail("unterminated quoted field", record.line);
    end_record();

    if (records.empty()) fail("empty document", 1);
    table.header = std::move(records.front().fields);
    records.erase(records.begin());
    for (auto& row : records) {
        if (row.fields.size() != table.header.size()) {
            fail("expected " + std::to_string(table.header.size()) + " columns, got " +
                     std::to_string(row.fields.size()),
                 row.line);
        }
    }
    table.rows = std::move(records);
    return table;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline CsvTable read_csv_file(const std::filesystem::path& path) {
    return parse_csv(read_text_file(path), path.string());
}

// Quotes only when needed so output bytes are a pure function of the fields.
inline std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
}

}  // namespace healthadvisor
