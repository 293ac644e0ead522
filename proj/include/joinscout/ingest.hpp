#pragma once

#include <optional>
#include <string>
#include <vector>

namespace joinscout {

enum class InferredType { kString, kNumericAsString, kDatetimeAsString, kOther };

struct Attribute {
    std::string name;
    // nullopt marks a missing cell ("", "na", "n/a", "null", "nan",
    // case-insensitive, or values that preprocess to nothing).
    std::vector<std::optional<std::string>> raw_values;
    InferredType inferred_type = InferredType::kOther;
    bool eligible = false;
};

struct Dataset {
    std::string name;
    size_t row_count = 0;
    std::vector<Attribute> attributes;
};

struct LoadOptions {
    char delimiter = ',';
    double sample_fraction = 1.0;  // eligibility sample; 1.0 = full scan
    uint64_t sample_seed = 42;
};

bool is_missing_marker(std::string_view raw);
bool parse_numeric(std::string_view value);
bool parse_datetime(std::string_view value);

// Loads a CSV file, marks missing cells, and sets the eligibility flag on
// every attribute. The dataset name is the file basename without extension.
Dataset load_dataset(const std::string& path, const LoadOptions& options = {});

// Sets inferred_type and eligible on the attribute. An attribute is ruled
// out when at least 90% of its sampled non-missing values parse as numbers
// or datetimes; attributes with no non-missing values are ineligible.
void infer_eligibility(Attribute& attr, double sample_fraction = 1.0,
                       uint64_t seed = 42);

const char* inferred_type_name(InferredType t);

}  // namespace joinscout
