#pragma once

#include <optional>
#include <string>
#include <vector>

#include "joinscout/comparator.hpp"
#include "joinscout/ingest.hpp"
#include "joinscout/profile.hpp"

namespace joinscout {

enum class QualityClass : int {
    kNone = 0,
    kPoor = 1,
    kModerate = 2,
    kGood = 3,
    kHigh = 4,
};

inline constexpr int kQualityClassCount = 5;

struct QualityThresholds {
    double c_high = 0.75;
    double c_good = 0.5;
    double c_moderate = 0.25;
    double c_poor = 0.1;
    double k_high = 0.25;
    double k_good = 0.125;
    double k_moderate = 0.083;
};

const char* quality_class_name(QualityClass c);

// Sorted vector of distinct values.
using ValueSet = std::vector<std::string>;

ValueSet build_value_set(const std::vector<std::optional<std::string>>& values);

size_t intersection_size(const ValueSet& a, const ValueSet& b);

// |A∩B| / |A|. Throws when A is empty.
double containment(const ValueSet& a, const ValueSet& b);

// |A∩B| / |A∪B|. Throws when both are empty.
double jaccard(const ValueSet& a, const ValueSet& b);

// Highest class whose containment and cardinality-proportion constraints
// hold, with A the reference attribute. The proportion constraint
// |A|/|B| >= K_i applies only when |B| > |A|; Poor needs only C >= c_poor.
QualityClass quality_label(const ValueSet& a, const ValueSet& b,
                           const QualityThresholds& t = {});

struct LabeledPair {
    std::string dataset_a;
    std::string attr_a;
    std::string dataset_b;
    std::string attr_b;
    double containment = 0.0;
    double proportion = 0.0;  // |A| / |B|
    int label = 0;
    FeatureVector features;
};

// One record per ordered pair of eligible attributes from distinct
// datasets; attributes with no non-missing values are skipped. Feature
// vectors are normalized over all profiled attributes of the repo.
std::vector<LabeledPair> label_corpus(const std::vector<Dataset>& repo,
                                      const QualityThresholds& t = {});

void write_corpus(const std::string& path,
                  const std::vector<LabeledPair>& corpus);
std::vector<LabeledPair> read_corpus(const std::string& path);

}  // namespace joinscout
