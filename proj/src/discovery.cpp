#include "joinscout/discovery.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "joinscout/csv.hpp"

namespace joinscout {

QualityClass resolve_class(const ClassProbabilities& p, double tau) {
    size_t best = 0;
    for (size_t c = 1; c < 5; ++c) {
        if (p.p[c] > p.p[best]) best = c;
    }
    if (best == 0) return QualityClass::kNone;

    bool any_confident = false;
    for (const double v : p.p) {
        if (v >= 0.5) any_confident = true;
    }
    const bool rule1 = p.p[0] > 0.5;
    const bool rule2 = !any_confident && p.p[best] - p.p[0] <= tau;
    if (!rule1 && !rule2) return static_cast<QualityClass>(best);

    size_t pick = 0;
    for (size_t c = 1; c < best; ++c) {
        if (p.p[c] > p.p[pick]) pick = c;
    }
    return static_cast<QualityClass>(pick);
}

namespace {

bool keep_class(QualityClass c, const DiscoveryOptions& opts) {
    switch (c) {
        case QualityClass::kHigh:
        case QualityClass::kGood:
            return true;
        case QualityClass::kModerate:
        case QualityClass::kPoor:
            return opts.all_classes || opts.include_none;
        case QualityClass::kNone:
            return opts.include_none;
    }
    return false;
}

void sort_ranking(Ranking& r) {
    std::sort(r.items.begin(), r.items.end(),
              [](const JoinCandidate& a, const JoinCandidate& b) {
                  const int ca = static_cast<int>(a.predicted);
                  const int cb = static_cast<int>(b.predicted);
                  if (ca != cb) return ca > cb;
                  const double pa = a.probs.p[static_cast<size_t>(ca)];
                  const double pb = b.probs.p[static_cast<size_t>(cb)];
                  if (pa != pb) return pa > pb;
                  if (a.candidate_dataset != b.candidate_dataset) {
                      return a.candidate_dataset < b.candidate_dataset;
                  }
                  if (a.candidate_attr != b.candidate_attr) {
                      return a.candidate_attr < b.candidate_attr;
                  }
                  if (a.query_dataset != b.query_dataset) {
                      return a.query_dataset < b.query_dataset;
                  }
                  return a.query_attr < b.query_attr;
              });
}

std::string quote_identifier(const std::string& name) {
    bool plain = !name.empty();
    for (const char c : name) {
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_')) {
            plain = false;
        }
    }
    if (plain && name[0] >= '0' && name[0] <= '9') plain = false;
    if (plain) return name;
    std::string out = "\"";
    for (const char c : name) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

Ranking discover_by_attribute(const AttributeProfile& query,
                              const std::vector<AttributeProfile>& repo,
                              const ChainModel& model,
                              const DiscoveryOptions& opts) {
    if (query.cardinality == 0) {
        throw std::runtime_error(
            "query attribute '" + query.attribute_name +
            "' has no profiled values; run profiling on its dataset first");
    }
    std::vector<const AttributeProfile*> candidates;
    for (const auto& p : repo) {
        if (p.dataset_name == query.dataset_name) continue;
        if (p.cardinality == 0) continue;
        candidates.push_back(&p);
    }
    Ranking r;
    if (candidates.empty()) return r;

    std::vector<AttributeProfile> population;
    population.reserve(candidates.size() + 1);
    population.push_back(query);
    for (const auto* c : candidates) population.push_back(*c);
    NormalizationStats stats;
    if (population.size() >= 2) stats = fit_normalization(population);

    for (const auto* c : candidates) {
        const FeatureVector fv = distance_vector(query, *c, stats);
        JoinCandidate jc;
        jc.query_dataset = query.dataset_name;
        jc.query_attr = query.attribute_name;
        jc.candidate_dataset = c->dataset_name;
        jc.candidate_attr = c->attribute_name;
        jc.probs = chain_predict(model, fv);
        jc.predicted = resolve_class(jc.probs, opts.tau);
        if (keep_class(jc.predicted, opts)) r.items.push_back(std::move(jc));
    }
    sort_ranking(r);
    return r;
}

Ranking discover_by_dataset(
    const std::vector<AttributeProfile>& query_profiles,
    const std::vector<AttributeProfile>& repo, const ChainModel& model,
    const DiscoveryOptions& opts) {
    Ranking merged;
    for (const auto& q : query_profiles) {
        if (q.cardinality == 0) continue;
        Ranking r = discover_by_attribute(q, repo, model, opts);
        for (auto& item : r.items) merged.items.push_back(std::move(item));
    }
    sort_ranking(merged);
    return merged;
}

std::string render_join_query(const JoinCandidate& c) {
    std::ostringstream os;
    os << "SELECT * FROM " << quote_identifier(c.query_dataset) << " JOIN "
       << quote_identifier(c.candidate_dataset) << " ON "
       << quote_identifier(c.query_dataset) << '.'
       << quote_identifier(c.query_attr) << " = "
       << quote_identifier(c.candidate_dataset) << '.'
       << quote_identifier(c.candidate_attr);
    return os.str();
}

namespace {

csv::Table ranking_table(const Ranking& ranking) {
    csv::Table t;
    t.header = {"rank", "query_attr", "candidate_dataset", "candidate_attr",
                "predicted_class", "p0", "p1", "p2", "p3", "p4", "join_query"};
    size_t rank = 1;
    for (const auto& item : ranking.items) {
        std::vector<std::string> row;
        row.push_back(std::to_string(rank++));
        row.push_back(item.query_dataset + "." + item.query_attr);
        row.push_back(item.candidate_dataset);
        row.push_back(item.candidate_attr);
        row.push_back(std::to_string(static_cast<int>(item.predicted)));
        for (const double p : item.probs.p) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", p);
            row.emplace_back(buf);
        }
        row.push_back(render_join_query(item));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

void write_ranking(const std::string& path, const Ranking& ranking) {
    csv::write_file(path, ranking_table(ranking));
}

std::string render_ranking(const Ranking& ranking) {
    const csv::Table t = ranking_table(ranking);
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv::escape_field(row[i]);
        }
        os << '\n';
    };
    emit(t.header);
    for (const auto& row : t.rows) emit(row);
    return os.str();
}

}  // namespace joinscout
