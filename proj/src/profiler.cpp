#include "joinscout/profile.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "joinscout/kernels.hpp"
#include "joinscout/text.hpp"

namespace joinscout {

namespace {

constexpr size_t kSketchSize = 10;

constexpr std::array<DataType, 5> kDataTypes = {
    DataType::kNumeric, DataType::kAlphabetic, DataType::kAlphanumeric,
    DataType::kNonAlphanumeric, DataType::kDatetime};

constexpr std::array<SpecificType, 7> kSpecificTypes = {
    SpecificType::kPhone, SpecificType::kEmail,    SpecificType::kUrl,
    SpecificType::kIp,    SpecificType::kUsername, SpecificType::kPhrase,
    SpecificType::kOther};

bool is_email(std::string_view v) {
    const size_t at = v.find('@');
    if (at == 0 || at == std::string_view::npos) return false;
    const std::string_view local = v.substr(0, at);
    const std::string_view domain = v.substr(at + 1);
    if (domain.empty()) return false;
    if (local.find_first_of(" @") != std::string_view::npos) return false;
    if (domain.find_first_of(" @") != std::string_view::npos) return false;
    const size_t dot = domain.find('.');
    return dot != std::string_view::npos && dot != 0 &&
           dot != domain.size() - 1;
}

bool is_url(std::string_view v) {
    const size_t sep = v.find("://");
    if (sep == 0 || sep == std::string_view::npos) return false;
    const std::string_view scheme = v.substr(0, sep);
    const bool scheme_ok =
        std::all_of(scheme.begin(), scheme.end(), [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        });
    return scheme_ok && sep + 3 < v.size();
}

bool all_ascii_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ip(std::string_view v) {
    int octets = 0;
    size_t start = 0;
    while (true) {
        const size_t dot = v.find('.', start);
        const std::string_view part =
            v.substr(start, dot == std::string_view::npos ? dot : dot - start);
        if (part.empty() || part.size() > 3 || !all_ascii_digits(part)) {
            return false;
        }
        int value = 0;
        for (const char c : part) value = value * 10 + (c - '0');
        if (value > 255) return false;
        ++octets;
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return octets == 4;
}

bool is_phone(std::string_view v) {
    size_t digits = 0;
    for (const char c : v) {
        if (c >= '0' && c <= '9') {
            ++digits;
        } else if (c != ' ' && c != '-' && c != '(' && c != ')' && c != '+') {
            return false;
        }
    }
    return digits >= 7;
}

struct CountEntry {
    std::string value;
    uint64_t count;
};

double sd_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    return std::sqrt(kernels::mean_variance(xs.data(), xs.size()).variance);
}

}  // namespace

double entropy(const std::vector<double>& rel_freqs) {
    double h = 0.0;
    for (const double f : rel_freqs) {
        if (f > 0.0) h -= f * std::log2(f);
    }
    return h < 0.0 ? 0.0 : h;
}

DataType classify_data_type(std::string_view value) {
    if (parse_datetime(value)) return DataType::kDatetime;
    if (parse_numeric(value)) return DataType::kNumeric;
    const auto c = kernels::count_char_classes(value);
    const uint64_t letters = c.letters + c.utf8_leads;
    if (c.other_ascii > 0) return DataType::kNonAlphanumeric;
    if (c.digits > 0 && letters > 0) return DataType::kAlphanumeric;
    if (c.digits > 0) return DataType::kNumeric;
    if (letters > 0) return DataType::kAlphabetic;
    return DataType::kNonAlphanumeric;
}

SpecificType classify_specific_type(std::string_view value) {
    if (is_email(value)) return SpecificType::kEmail;
    if (is_url(value)) return SpecificType::kUrl;
    if (is_ip(value)) return SpecificType::kIp;
    if (is_phone(value)) return SpecificType::kPhone;
    const auto c = kernels::count_char_classes(value);
    const bool has_letter = c.letters + c.utf8_leads > 0;
    if (!has_letter) return SpecificType::kOther;
    const size_t len = text::codepoint_count(value);
    const bool single_token = c.spaces == 0;
    if (single_token && c.other_ascii == 0 && len < 6) {
        return SpecificType::kUsername;
    }
    if ((len >= 6 && !single_token) || len > 6) return SpecificType::kPhrase;
    return SpecificType::kOther;
}

const char* data_type_name(DataType t) {
    switch (t) {
        case DataType::kNumeric: return "numeric";
        case DataType::kAlphabetic: return "alphabetic";
        case DataType::kAlphanumeric: return "alphanumeric";
        case DataType::kNonAlphanumeric: return "non-alphanumeric";
        case DataType::kDatetime: return "datetime";
    }
    return "numeric";
}

const char* specific_type_name(SpecificType t) {
    switch (t) {
        case SpecificType::kPhone: return "phone";
        case SpecificType::kEmail: return "email";
        case SpecificType::kUrl: return "url";
        case SpecificType::kIp: return "ip";
        case SpecificType::kUsername: return "username";
        case SpecificType::kPhrase: return "phrase";
        case SpecificType::kOther: return "other";
    }
    return "other";
}

std::optional<DataType> data_type_from_name(std::string_view name) {
    for (const DataType t : kDataTypes) {
        if (name == data_type_name(t)) return t;
    }
    return std::nullopt;
}

std::optional<SpecificType> specific_type_from_name(std::string_view name) {
    for (const SpecificType t : kSpecificTypes) {
        if (name == specific_type_name(t)) return t;
    }
    return std::nullopt;
}

std::vector<std::optional<std::string>> preprocess_attribute(
    const Attribute& attr) {
    std::vector<std::optional<std::string>> out;
    out.reserve(attr.raw_values.size());
    for (const auto& cell : attr.raw_values) {
        if (!cell.has_value()) {
            out.emplace_back(std::nullopt);
            continue;
        }
        std::string clean = text::preprocess_value(*cell);
        if (text::trim(clean).empty()) {
            out.emplace_back(std::nullopt);
        } else {
            out.emplace_back(std::move(clean));
        }
    }
    return out;
}

AttributeProfile profile_attribute(
    const std::vector<std::optional<std::string>>& values,
    std::string attribute_name, std::string dataset_name) {
    AttributeProfile p;
    p.attribute_name = std::move(attribute_name);
    p.dataset_name = std::move(dataset_name);
    p.row_count = values.size();
    for (const DataType t : kDataTypes) p.pct_data_type[data_type_name(t)] = 0.0;
    for (const SpecificType t : kSpecificTypes) {
        p.pct_specific_type[specific_type_name(t)] = 0.0;
    }

    std::unordered_map<std::string, uint64_t> counts;
    std::vector<double> lengths;
    std::vector<double> words_per_value;
    std::unordered_map<std::string, uint64_t> word_counts;
    uint64_t total_words = 0;
    uint64_t non_missing = 0;

    for (const auto& cell : values) {
        if (!cell.has_value()) continue;
        ++non_missing;
        const std::string& v = *cell;
        lengths.push_back(static_cast<double>(text::codepoint_count(v)));
        const auto words = text::split_words(v);
        words_per_value.push_back(static_cast<double>(words.size()));
        total_words += words.size();
        for (const auto& w : words) ++word_counts[std::string(w)];
        ++counts[v];
    }

    p.cardinality = counts.size();
    if (p.row_count > 0) {
        p.incompleteness = static_cast<double>(p.row_count - non_missing) /
                           static_cast<double>(p.row_count);
    }
    if (non_missing == 0) return p;
    p.uniqueness = static_cast<double>(p.cardinality) /
                   static_cast<double>(non_missing);

    // Sorted count vector makes every reduction order-independent.
    std::vector<double> freq;
    freq.reserve(counts.size());
    for (const auto& [value, count] : counts) {
        freq.push_back(static_cast<double>(count));
    }
    std::sort(freq.begin(), freq.end());

    const size_t m = freq.size();
    const double total = kernels::sum(freq.data(), m);
    p.avg_frequency = total / static_cast<double>(m);
    p.min_frequency = kernels::min(freq.data(), m);
    p.max_frequency = kernels::max(freq.data(), m);
    p.sd_frequency = sd_of(freq);

    std::vector<double> perc(m);
    for (size_t i = 0; i < m; ++i) {
        perc[i] = freq[i] / static_cast<double>(p.row_count);
    }
    for (size_t i = 1; i <= 8; ++i) {
        const size_t rank = (i * m + 7) / 8;  // nearest-rank, ceil
        p.octiles[i - 1] = perc[rank == 0 ? 0 : rank - 1];
    }
    p.min_perc_frequency = perc.front();
    p.max_perc_frequency = perc.back();
    p.sd_perc_frequency = sd_of(perc);
    p.constancy = p.max_perc_frequency;

    std::vector<double> rel(m);
    for (size_t i = 0; i < m; ++i) {
        rel[i] = freq[i] / static_cast<double>(non_missing);
    }
    p.entropy = p.cardinality <= 1 ? 0.0 : entropy(rel);

    // Top words: highest count first, ties lexicographic; stored sorted.
    std::vector<CountEntry> top;
    top.reserve(word_counts.size());
    for (const auto& [word, count] : word_counts) top.push_back({word, count});
    std::sort(top.begin(), top.end(), [](const CountEntry& a, const CountEntry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.value < b.value;
    });
    if (top.size() > kSketchSize) top.resize(kSketchSize);
    for (const auto& e : top) p.frequent_words.push_back(e.value);
    std::sort(p.frequent_words.begin(), p.frequent_words.end());
    for (const auto& w : p.frequent_words) {
        const std::string code = text::soundex(w);
        if (!code.empty()) p.soundex_words.push_back(code);
    }
    std::sort(p.soundex_words.begin(), p.soundex_words.end());
    p.soundex_words.erase(
        std::unique(p.soundex_words.begin(), p.soundex_words.end()),
        p.soundex_words.end());

    // Type shares, weighted by value multiplicity.
    for (const auto& [value, count] : counts) {
        const double w = static_cast<double>(count);
        p.pct_data_type[data_type_name(classify_data_type(value))] += w;
        p.pct_specific_type[specific_type_name(classify_specific_type(value))] +=
            w;
    }
    for (auto& [name, share] : p.pct_data_type) {
        share /= static_cast<double>(non_missing);
    }
    for (auto& [name, share] : p.pct_specific_type) {
        share /= static_cast<double>(non_missing);
    }
    auto arg_max = [](const std::map<std::string, double>& m,
                      const auto& order, auto name_fn) {
        auto best = order[0];
        double best_share = -1.0;
        for (const auto t : order) {
            const double share = m.at(name_fn(t));
            if (share > best_share) {
                best_share = share;
                best = t;
            }
        }
        return best;
    };
    p.data_type = arg_max(p.pct_data_type, kDataTypes, data_type_name);
    p.specific_type =
        arg_max(p.pct_specific_type, kSpecificTypes, specific_type_name);

    std::sort(lengths.begin(), lengths.end());
    p.longest_string = lengths.back();
    p.shortest_string = lengths.front();
    p.avg_string =
        kernels::sum(lengths.data(), lengths.size()) / static_cast<double>(non_missing);

    std::sort(words_per_value.begin(), words_per_value.end());
    p.number_words = static_cast<double>(total_words);
    p.avg_words = kernels::sum(words_per_value.data(), words_per_value.size()) /
                  static_cast<double>(non_missing);
    p.min_words = words_per_value.front();
    p.max_words = words_per_value.back();
    p.sd_words = sd_of(words_per_value);
    return p;
}

std::vector<AttributeProfile> profile_dataset(const Dataset& ds) {
    std::vector<AttributeProfile> out;
    for (const auto& attr : ds.attributes) {
        if (!attr.eligible) continue;
        out.push_back(profile_attribute(preprocess_attribute(attr), attr.name,
                                        ds.name));
    }
    return out;
}

}  // namespace joinscout
