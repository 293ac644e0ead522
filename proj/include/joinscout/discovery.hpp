#pragma once

#include <string>
#include <vector>

#include "joinscout/learner.hpp"
#include "joinscout/oracle.hpp"
#include "joinscout/profile.hpp"

namespace joinscout {

struct JoinCandidate {
    std::string query_dataset;
    std::string query_attr;
    std::string candidate_dataset;
    std::string candidate_attr;
    ClassProbabilities probs;
    QualityClass predicted = QualityClass::kNone;
};

struct Ranking {
    std::vector<JoinCandidate> items;
};

// Final class from the five binary probabilities. Start from the argmax
// (ties to the lower class). Downgrade once, to the highest-probability
// class strictly below the argmax, when either
//   1. the no-join probability p0 exceeds 0.5, or
//   2. no probability reaches 0.5 and the argmax beats p0 by at most tau.
QualityClass resolve_class(const ClassProbabilities& p, double tau = 0.10);

struct DiscoveryOptions {
    bool all_classes = false;   // include predicted classes 1 and 2
    bool include_none = false;  // include predicted class 0
    double tau = 0.10;
};

// Ranks every eligible candidate attribute (candidates from the query's
// own dataset are skipped). Normalization is fitted over the query
// profile plus the surviving candidates. Throws when the query attribute
// has no values to compare.
Ranking discover_by_attribute(const AttributeProfile& query,
                              const std::vector<AttributeProfile>& repo,
                              const ChainModel& model,
                              const DiscoveryOptions& opts = {});

// Union of per-attribute discoveries over the dataset's eligible
// attributes, re-sorted into one ranking.
Ranking discover_by_dataset(const std::vector<AttributeProfile>& query_profiles,
                            const std::vector<AttributeProfile>& repo,
                            const ChainModel& model,
                            const DiscoveryOptions& opts = {});

// SQL equi-join text with quoted identifiers where needed.
std::string render_join_query(const JoinCandidate& c);

// rank, query attribute, candidate, predicted class, probabilities, query
void write_ranking(const std::string& path, const Ranking& ranking);
std::string render_ranking(const Ranking& ranking);

}  // namespace joinscout
