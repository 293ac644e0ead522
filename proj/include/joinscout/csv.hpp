#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace joinscout::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct ParseOptions {
    char delimiter = ',';
};

// RFC 4180 semantics: double-quote escaping, quoted fields may contain
// delimiters and newlines, records end on LF or CRLF. The first record is
// the header and fixes the column count; a record with a different width
// raises std::runtime_error naming the 1-based row (header = row 1).
Table parse(std::string_view text, const ParseOptions& opts = {});
Table read_file(const std::string& path, const ParseOptions& opts = {});

std::string escape_field(std::string_view field, char delimiter = ',');
void write_file(const std::string& path, const Table& table, char delimiter = ',');

}  // namespace joinscout::csv
