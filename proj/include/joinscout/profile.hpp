#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "joinscout/ingest.hpp"

namespace joinscout {

enum class DataType {
    kNumeric,
    kAlphabetic,
    kAlphanumeric,
    kNonAlphanumeric,
    kDatetime,
};

enum class SpecificType {
    kPhone,
    kEmail,
    kUrl,
    kIp,
    kUsername,
    kPhrase,
    kOther,
};

// Unary profile of one string attribute. Frequency statistics are taken
// over the counts per distinct non-missing value; the percentage form
// divides those counts by the total row count. Entropy uses relative
// frequencies among non-missing values.
struct AttributeProfile {
    std::string attribute_name;
    std::string dataset_name;
    uint64_t row_count = 0;

    uint64_t cardinality = 0;
    double uniqueness = 0.0;       // cardinality / non-missing count
    double incompleteness = 0.0;   // missing / row_count
    double entropy = 0.0;          // bits

    double avg_frequency = 0.0;
    double min_frequency = 0.0;
    double max_frequency = 0.0;
    double sd_frequency = 0.0;

    std::array<double, 8> octiles{};  // 12.5% .. 100% of percentage form
    double min_perc_frequency = 0.0;
    double max_perc_frequency = 0.0;
    double sd_perc_frequency = 0.0;
    double constancy = 0.0;  // max count / row_count

    std::vector<std::string> frequent_words;  // <= 10, sorted
    std::vector<std::string> soundex_words;   // <= 10, sorted

    DataType data_type = DataType::kNumeric;
    SpecificType specific_type = SpecificType::kOther;
    std::map<std::string, double> pct_data_type;
    std::map<std::string, double> pct_specific_type;

    double longest_string = 0.0;   // character (code point) counts
    double shortest_string = 0.0;
    double avg_string = 0.0;

    double number_words = 0.0;  // total across values
    double avg_words = 0.0;
    double min_words = 0.0;
    double max_words = 0.0;
    double sd_words = 0.0;
};

// Shannon entropy in bits over relative frequencies (which sum to 1).
double entropy(const std::vector<double>& rel_freqs);

DataType classify_data_type(std::string_view value);
SpecificType classify_specific_type(std::string_view value);

const char* data_type_name(DataType t);
const char* specific_type_name(SpecificType t);
std::optional<DataType> data_type_from_name(std::string_view name);
std::optional<SpecificType> specific_type_from_name(std::string_view name);

// Preprocesses every present cell; cells that reduce to nothing (symbols
// only) become missing.
std::vector<std::optional<std::string>> preprocess_attribute(
    const Attribute& attr);

AttributeProfile profile_attribute(
    const std::vector<std::optional<std::string>>& values,
    std::string attribute_name, std::string dataset_name = {});

// Profiles every eligible attribute of the dataset.
std::vector<AttributeProfile> profile_dataset(const Dataset& ds);

}  // namespace joinscout
