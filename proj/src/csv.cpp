#include "joinscout/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace joinscout::csv {

namespace {

void check_width(const Table& t, const std::vector<std::string>& record,
                 size_t row_no) {
    if (t.header.empty() || record.size() == t.header.size()) return;
    std::ostringstream msg;
    msg << "row " << row_no << " has " << record.size()
        << " fields, expected " << t.header.size();
    throw std::runtime_error(msg.str());
}

void finish_record(Table& t, std::vector<std::string>& record,
                   std::string& field, size_t& row_no) {
    record.push_back(std::move(field));
    field.clear();
    if (t.header.empty()) {
        t.header = std::move(record);
    } else {
        check_width(t, record, row_no);
        t.rows.push_back(std::move(record));
    }
    record.clear();
    ++row_no;
}

}  // namespace

Table parse(std::string_view text, const ParseOptions& opts) {
    Table t;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    size_t row_no = 1;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            ++i;
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == opts.delimiter) {
            record.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            finish_record(t, record, field, row_no);
        } else if (c == '\r') {
            if (i + 1 < n && text[i + 1] == '\n') ++i;
            finish_record(t, record, field, row_no);
        } else {
            field.push_back(c);
        }
        ++i;
    }
    if (in_quotes) throw std::runtime_error("unterminated quoted field");
    if (!field.empty() || !record.empty()) {
        finish_record(t, record, field, row_no);
    }
    if (t.header.empty()) throw std::runtime_error("missing header row");
    return t;
}

Table read_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), opts);
}

std::string escape_field(std::string_view field, char delimiter) {
    const bool needs_quotes =
        field.find_first_of("\"\r\n") != std::string_view::npos ||
        field.find(delimiter) != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_file(const std::string& path, const Table& table, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    auto write_record = [&](const std::vector<std::string>& record) {
        for (size_t i = 0; i < record.size(); ++i) {
            if (i) out.put(delimiter);
            out << escape_field(record[i], delimiter);
        }
        out.put('\n');
    };
    write_record(table.header);
    for (const auto& row : table.rows) write_record(row);
}

}  // namespace joinscout::csv
