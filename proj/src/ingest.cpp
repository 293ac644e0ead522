#include "joinscout/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <random>

#include "joinscout/csv.hpp"
#include "joinscout/text.hpp"

namespace joinscout {

namespace {

constexpr double kRuledOutShare = 0.90;

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

// digits[-/]digits[-/]digits with a 4-digit year at either end
bool parse_date_part(std::string_view s) {
    const size_t sep1 = s.find_first_of("-/");
    if (sep1 == std::string_view::npos) return false;
    const char sep = s[sep1];
    const size_t sep2 = s.find(sep, sep1 + 1);
    if (sep2 == std::string_view::npos) return false;
    const std::string_view a = s.substr(0, sep1);
    const std::string_view b = s.substr(sep1 + 1, sep2 - sep1 - 1);
    const std::string_view c = s.substr(sep2 + 1);
    if (!all_digits(a) || !all_digits(b) || !all_digits(c)) return false;
    if (a.size() == 4) return b.size() <= 2 && c.size() <= 2;   // Y-M-D
    if (c.size() == 4) return a.size() <= 2 && b.size() <= 2;   // D-M-Y
    return false;
}

// HH:MM or HH:MM:SS
bool parse_time_part(std::string_view s) {
    const size_t sep1 = s.find(':');
    if (sep1 == std::string_view::npos || sep1 == 0 || sep1 > 2) return false;
    const size_t sep2 = s.find(':', sep1 + 1);
    const std::string_view hh = s.substr(0, sep1);
    if (!all_digits(hh)) return false;
    std::string_view mm, ss;
    if (sep2 == std::string_view::npos) {
        mm = s.substr(sep1 + 1);
    } else {
        mm = s.substr(sep1 + 1, sep2 - sep1 - 1);
        ss = s.substr(sep2 + 1);
        if (ss.size() != 2 || !all_digits(ss)) return false;
    }
    return mm.size() == 2 && all_digits(mm);
}

}  // namespace

bool is_missing_marker(std::string_view raw) {
    const std::string lowered = text::ascii_lower(text::trim(raw));
    return lowered.empty() || lowered == "na" || lowered == "n/a" ||
           lowered == "null" || lowered == "nan";
}

bool parse_numeric(std::string_view value) {
    std::string_view s = text::trim(value);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    double out = 0.0;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_datetime(std::string_view value) {
    std::string_view s = text::trim(value);
    if (s.empty()) return false;
    size_t split = s.find_first_of(" T");
    if (split == std::string_view::npos) {
        return parse_date_part(s) || parse_time_part(s);
    }
    const std::string_view head = s.substr(0, split);
    const std::string_view tail = s.substr(split + 1);
    return parse_date_part(head) && parse_time_part(tail);
}

void infer_eligibility(Attribute& attr, double sample_fraction, uint64_t seed) {
    std::vector<size_t> candidates;
    candidates.reserve(attr.raw_values.size());
    for (size_t i = 0; i < attr.raw_values.size(); ++i) {
        if (attr.raw_values[i].has_value()) candidates.push_back(i);
    }
    if (candidates.empty()) {
        attr.inferred_type = InferredType::kOther;
        attr.eligible = false;
        return;
    }
    if (sample_fraction < 1.0) {
        const size_t keep = std::max<size_t>(
            1, static_cast<size_t>(sample_fraction *
                                   static_cast<double>(candidates.size())));
        std::mt19937_64 rng(seed);
        for (size_t i = 0; i < keep; ++i) {
            std::uniform_int_distribution<size_t> pick(i, candidates.size() - 1);
            std::swap(candidates[i], candidates[pick(rng)]);
        }
        candidates.resize(keep);
        std::sort(candidates.begin(), candidates.end());
    }
    size_t numeric = 0;
    size_t datetime = 0;
    for (const size_t idx : candidates) {
        const std::string& v = *attr.raw_values[idx];
        if (parse_numeric(v)) {
            ++numeric;
        } else if (parse_datetime(v)) {
            ++datetime;
        }
    }
    const double share = static_cast<double>(numeric + datetime) /
                         static_cast<double>(candidates.size());
    if (share >= kRuledOutShare) {
        attr.inferred_type = numeric >= datetime
                                 ? InferredType::kNumericAsString
                                 : InferredType::kDatetimeAsString;
        attr.eligible = false;
    } else {
        attr.inferred_type = InferredType::kString;
        attr.eligible = true;
    }
}

Dataset load_dataset(const std::string& path, const LoadOptions& options) {
    csv::Table table = csv::read_file(path, {options.delimiter});
    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    ds.row_count = table.rows.size();
    ds.attributes.resize(table.header.size());
    for (size_t c = 0; c < table.header.size(); ++c) {
        ds.attributes[c].name = table.header[c];
        ds.attributes[c].raw_values.reserve(table.rows.size());
    }
    for (auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (is_missing_marker(row[c])) {
                ds.attributes[c].raw_values.emplace_back(std::nullopt);
            } else {
                ds.attributes[c].raw_values.emplace_back(std::move(row[c]));
            }
        }
    }
    for (auto& attr : ds.attributes) {
        infer_eligibility(attr, options.sample_fraction, options.sample_seed);
    }
    return ds;
}

const char* inferred_type_name(InferredType t) {
    switch (t) {
        case InferredType::kString: return "string";
        case InferredType::kNumericAsString: return "numeric-as-string";
        case InferredType::kDatetimeAsString: return "datetime-as-string";
        case InferredType::kOther: return "other";
    }
    return "other";
}

}  // namespace joinscout
