#include "joinscout/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "joinscout/csv.hpp"

namespace joinscout {

const char* quality_class_name(QualityClass c) {
    switch (c) {
        case QualityClass::kNone: return "none";
        case QualityClass::kPoor: return "poor";
        case QualityClass::kModerate: return "moderate";
        case QualityClass::kGood: return "good";
        case QualityClass::kHigh: return "high";
    }
    return "none";
}

ValueSet build_value_set(
    const std::vector<std::optional<std::string>>& values) {
    ValueSet set;
    set.reserve(values.size());
    for (const auto& v : values) {
        if (v.has_value()) set.push_back(*v);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

size_t intersection_size(const ValueSet& a, const ValueSet& b) {
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
    return inter;
}

double containment(const ValueSet& a, const ValueSet& b) {
    if (a.empty()) throw std::runtime_error("containment: empty reference set");
    return static_cast<double>(intersection_size(a, b)) /
           static_cast<double>(a.size());
}

double jaccard(const ValueSet& a, const ValueSet& b) {
    if (a.empty() && b.empty()) {
        throw std::runtime_error("jaccard: both sets empty");
    }
    const size_t inter = intersection_size(a, b);
    const size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

QualityClass quality_label(const ValueSet& a, const ValueSet& b,
                           const QualityThresholds& t) {
    if (a.empty() || b.empty()) {
        throw std::runtime_error("quality label: empty value set");
    }
    const double c = containment(a, b);
    const double prop =
        static_cast<double>(a.size()) / static_cast<double>(b.size());
    const bool prop_waived = a.size() >= b.size();
    auto prop_ok = [&](double k) { return prop_waived || prop >= k; };
    if (c >= t.c_high && prop_ok(t.k_high)) return QualityClass::kHigh;
    if (c >= t.c_good && prop_ok(t.k_good)) return QualityClass::kGood;
    if (c >= t.c_moderate && prop_ok(t.k_moderate)) {
        return QualityClass::kModerate;
    }
    if (c >= t.c_poor) return QualityClass::kPoor;
    return QualityClass::kNone;
}

namespace {

struct ProfiledAttribute {
    size_t dataset_index;
    AttributeProfile profile;
    ValueSet values;
};

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double_field(const std::string& s) {
    double out = 0.0;
    const auto [ptr, ec] =
        std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("corpus: bad numeric field '" + s + "'");
    }
    return out;
}

}  // namespace

std::vector<LabeledPair> label_corpus(const std::vector<Dataset>& repo,
                                      const QualityThresholds& t) {
    std::vector<ProfiledAttribute> attrs;
    for (size_t d = 0; d < repo.size(); ++d) {
        for (const auto& attr : repo[d].attributes) {
            if (!attr.eligible) continue;
            auto cleaned = preprocess_attribute(attr);
            ValueSet set = build_value_set(cleaned);
            if (set.empty()) continue;
            attrs.push_back({d,
                             profile_attribute(std::move(cleaned), attr.name,
                                               repo[d].name),
                             std::move(set)});
        }
    }
    std::vector<LabeledPair> corpus;
    if (attrs.size() < 2) return corpus;
    std::vector<AttributeProfile> profiles;
    profiles.reserve(attrs.size());
    for (const auto& a : attrs) profiles.push_back(a.profile);
    const NormalizationStats stats = fit_normalization(profiles);
    for (const auto& a : attrs) {
        for (const auto& b : attrs) {
            if (a.dataset_index == b.dataset_index) continue;
            LabeledPair lp;
            lp.dataset_a = a.profile.dataset_name;
            lp.attr_a = a.profile.attribute_name;
            lp.dataset_b = b.profile.dataset_name;
            lp.attr_b = b.profile.attribute_name;
            lp.containment = containment(a.values, b.values);
            lp.proportion = static_cast<double>(a.values.size()) /
                            static_cast<double>(b.values.size());
            lp.label = static_cast<int>(quality_label(a.values, b.values, t));
            lp.features = distance_vector(a.profile, b.profile, stats);
            corpus.push_back(std::move(lp));
        }
    }
    return corpus;
}

void write_corpus(const std::string& path,
                  const std::vector<LabeledPair>& corpus) {
    csv::Table t;
    t.header = {"dataset_a", "attr_a",     "dataset_b", "attr_b",
                "containment", "proportion", "label"};
    for (const char* name : feature_names()) t.header.push_back(name);
    t.rows.reserve(corpus.size());
    for (const auto& lp : corpus) {
        std::vector<std::string> row = {lp.dataset_a,
                                        lp.attr_a,
                                        lp.dataset_b,
                                        lp.attr_b,
                                        format_double(lp.containment),
                                        format_double(lp.proportion),
                                        std::to_string(lp.label)};
        for (const double x : lp.features.values) {
            row.push_back(format_double(x));
        }
        t.rows.push_back(std::move(row));
    }
    csv::write_file(path, t);
}

std::vector<LabeledPair> read_corpus(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const size_t expected = 7 + kFeatureCount;
    if (t.header.size() != expected) {
        throw std::runtime_error("corpus: expected " +
                                 std::to_string(expected) + " columns, got " +
                                 std::to_string(t.header.size()));
    }
    std::vector<LabeledPair> corpus;
    corpus.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        LabeledPair lp;
        lp.dataset_a = row[0];
        lp.attr_a = row[1];
        lp.dataset_b = row[2];
        lp.attr_b = row[3];
        lp.containment = parse_double_field(row[4]);
        lp.proportion = parse_double_field(row[5]);
        lp.label = static_cast<int>(parse_double_field(row[6]));
        for (size_t i = 0; i < kFeatureCount; ++i) {
            lp.features.values[i] = parse_double_field(row[7 + i]);
        }
        corpus.push_back(std::move(lp));
    }
    return corpus;
}

}  // namespace joinscout
