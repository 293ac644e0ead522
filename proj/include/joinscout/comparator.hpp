#pragma once

#include <array>
#include <string>
#include <vector>

#include "joinscout/profile.hpp"

namespace joinscout {

inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr size_t kNormFeatureCount = 14;
inline constexpr size_t kFeatureCount = 30;

// Features normalized with Z-scores before differencing. Everything else
// is compared raw (absolute difference, 0/1 equality, set or map distance).
extern const std::array<const char*, kNormFeatureCount> kNormFeatureNames;

// Column names of the full distance vector, pair features last.
const std::array<const char*, kFeatureCount>& feature_names();

struct NormalizationStats {
    std::array<double, kNormFeatureCount> mean{};
    std::array<double, kNormFeatureCount> stddev{};  // population stddev
    size_t population_size = 0;
};

struct PairFeatures {
    double best_containment = 0.0;     // min(|A|,|B|) / |A|, A = query side
    double flipped_containment = 0.0;  // min / max
    double name_distance = 0.0;        // Levenshtein / max name length
};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    int schema_version = kFeatureSchemaVersion;
};

// Value of the i-th normalized feature of a profile.
double norm_feature_value(const AttributeProfile& p, size_t i);

// Fits mean and population stddev per normalized feature over the whole
// comparison population. Throws when fewer than two profiles are given.
NormalizationStats fit_normalization(const std::vector<AttributeProfile>& profiles);

// (x - mean) / stddev, 0 when stddev is 0.
double zscore(double x, double mean, double stddev);

// Throws when either cardinality is zero.
PairFeatures pair_features(const AttributeProfile& a, const AttributeProfile& b);

FeatureVector distance_vector(const AttributeProfile& a,
                              const AttributeProfile& b,
                              const NormalizationStats& stats);

}  // namespace joinscout
