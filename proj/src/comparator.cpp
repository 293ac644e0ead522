#include "joinscout/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "joinscout/kernels.hpp"
#include "joinscout/text.hpp"

namespace joinscout {

const std::array<const char*, kNormFeatureCount> kNormFeatureNames = {
    "cardinality",    "entropy",      "avg_frequency",  "min_frequency",
    "max_frequency",  "sd_frequency", "longest_string", "shortest_string",
    "avg_string",     "number_words", "avg_words",      "min_words",
    "max_words",      "sd_words",
};

const std::array<const char*, kFeatureCount>& feature_names() {
    static const std::array<const char*, kFeatureCount> kNames = {
        "d_cardinality",
        "d_uniqueness",
        "d_incompleteness",
        "d_entropy",
        "d_avg_frequency",
        "d_min_frequency",
        "d_max_frequency",
        "d_sd_frequency",
        "d_octiles",
        "d_min_perc_frequency",
        "d_max_perc_frequency",
        "d_sd_perc_frequency",
        "d_constancy",
        "d_frequent_words",
        "d_soundex_words",
        "d_data_type",
        "d_specific_type",
        "d_pct_data_type",
        "d_pct_specific_type",
        "d_longest_string",
        "d_shortest_string",
        "d_avg_string",
        "d_number_words",
        "d_avg_words",
        "d_min_words",
        "d_max_words",
        "d_sd_words",
        "best_containment",
        "flipped_containment",
        "name_distance",
    };
    return kNames;
}

double norm_feature_value(const AttributeProfile& p, size_t i) {
    switch (i) {
        case 0: return static_cast<double>(p.cardinality);
        case 1: return p.entropy;
        case 2: return p.avg_frequency;
        case 3: return p.min_frequency;
        case 4: return p.max_frequency;
        case 5: return p.sd_frequency;
        case 6: return p.longest_string;
        case 7: return p.shortest_string;
        case 8: return p.avg_string;
        case 9: return p.number_words;
        case 10: return p.avg_words;
        case 11: return p.min_words;
        case 12: return p.max_words;
        case 13: return p.sd_words;
        default: throw std::out_of_range("normalized feature index");
    }
}

NormalizationStats fit_normalization(
    const std::vector<AttributeProfile>& profiles) {
    if (profiles.size() < 2) {
        throw std::runtime_error(
            "normalization needs at least two profiles");
    }
    NormalizationStats stats;
    stats.population_size = profiles.size();
    std::vector<double> xs(profiles.size());
    for (size_t f = 0; f < kNormFeatureCount; ++f) {
        for (size_t i = 0; i < profiles.size(); ++i) {
            xs[i] = norm_feature_value(profiles[i], f);
        }
        std::sort(xs.begin(), xs.end());
        const auto mv = kernels::mean_variance(xs.data(), xs.size());
        stats.mean[f] = mv.mean;
        stats.stddev[f] = std::sqrt(mv.variance);
    }
    return stats;
}

double zscore(double x, double mean, double stddev) {
    if (stddev <= 0.0) return 0.0;
    return (x - mean) / stddev;
}

PairFeatures pair_features(const AttributeProfile& a,
                           const AttributeProfile& b) {
    if (a.cardinality == 0 || b.cardinality == 0) {
        throw std::runtime_error("pair features need non-empty attributes");
    }
    const double ca = static_cast<double>(a.cardinality);
    const double cb = static_cast<double>(b.cardinality);
    PairFeatures pf;
    pf.best_containment = std::min(ca, cb) / ca;
    pf.flipped_containment = std::min(ca, cb) / std::max(ca, cb);
    pf.name_distance = text::name_distance(a.attribute_name, b.attribute_name);
    return pf;
}

namespace {

double sketch_distance(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const size_t uni = a.size() + b.size() - inter;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double map_distance(const std::map<std::string, double>& a,
                    const std::map<std::string, double>& b) {
    double l1 = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            l1 += std::fabs(ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            l1 += std::fabs(ib->second);
            ++ib;
        } else {
            l1 += std::fabs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return l1 / 2.0;
}

}  // namespace

FeatureVector distance_vector(const AttributeProfile& a,
                              const AttributeProfile& b,
                              const NormalizationStats& stats) {
    auto zdiff = [&](size_t f) {
        const double za = zscore(norm_feature_value(a, f), stats.mean[f],
                                 stats.stddev[f]);
        const double zb = zscore(norm_feature_value(b, f), stats.mean[f],
                                 stats.stddev[f]);
        return std::fabs(za - zb);
    };
    FeatureVector fv;
    auto& v = fv.values;
    v[0] = zdiff(0);  // cardinality
    v[1] = std::fabs(a.uniqueness - b.uniqueness);
    v[2] = std::fabs(a.incompleteness - b.incompleteness);
    v[3] = zdiff(1);  // entropy
    v[4] = zdiff(2);  // avg_frequency
    v[5] = zdiff(3);  // min_frequency
    v[6] = zdiff(4);  // max_frequency
    v[7] = zdiff(5);  // sd_frequency
    double oct = 0.0;
    for (size_t i = 0; i < 8; ++i) {
        oct += std::fabs(a.octiles[i] - b.octiles[i]);
    }
    v[8] = oct / 8.0;
    v[9] = std::fabs(a.min_perc_frequency - b.min_perc_frequency);
    v[10] = std::fabs(a.max_perc_frequency - b.max_perc_frequency);
    v[11] = std::fabs(a.sd_perc_frequency - b.sd_perc_frequency);
    v[12] = std::fabs(a.constancy - b.constancy);
    v[13] = sketch_distance(a.frequent_words, b.frequent_words);
    v[14] = sketch_distance(a.soundex_words, b.soundex_words);
    v[15] = a.data_type == b.data_type ? 0.0 : 1.0;
    v[16] = a.specific_type == b.specific_type ? 0.0 : 1.0;
    v[17] = map_distance(a.pct_data_type, b.pct_data_type);
    v[18] = map_distance(a.pct_specific_type, b.pct_specific_type);
    v[19] = zdiff(6);   // longest_string
    v[20] = zdiff(7);   // shortest_string
    v[21] = zdiff(8);   // avg_string
    v[22] = zdiff(9);   // number_words
    v[23] = zdiff(10);  // avg_words
    v[24] = zdiff(11);  // min_words
    v[25] = zdiff(12);  // max_words
    v[26] = zdiff(13);  // sd_words
    const PairFeatures pf = pair_features(a, b);
    v[27] = pf.best_containment;
    v[28] = pf.flipped_containment;
    v[29] = pf.name_distance;
    return fv;
}

}  // namespace joinscout
