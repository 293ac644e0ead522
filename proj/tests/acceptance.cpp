// Acceptance suite: one printed line per criterion, nonzero exit when any
// criterion fails. Heavier scenarios print their measurements so a failure
// is diagnosable from the log alone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "joinscout/discovery.hpp"
#include "joinscout/evalkit.hpp"
#include "joinscout/learner.hpp"
#include "joinscout/oracle.hpp"
#include "joinscout/store.hpp"
#include "joinscout/synth.hpp"
#include "naive_profile.hpp"

using namespace joinscout;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

void report(int index, const char* name, bool pass,
            const std::string& detail) {
    std::printf("%s  criterion %d (%s)%s%s\n", pass ? "PASS" : "FAIL", index,
                name, detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

ValueSet padded_ids(size_t start, size_t count) {
    ValueSet out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%07zu", start + i);
        out.emplace_back(buf);
    }
    return out;
}

// ---------------------------------------------------------------- 1
void criterion_1() {
    const auto start = Clock::now();
    bool pass = true;
    char detail[256];

    const size_t na = 8124;
    const ValueSet a = padded_ids(0, na);

    const size_t nb1 = 54500;
    const auto shared1 =
        static_cast<size_t>(std::llround(0.8 * static_cast<double>(na)));
    ValueSet b1 = padded_ids(0, shared1);
    {
        const auto fresh = padded_ids(na, nb1 - shared1);
        b1.insert(b1.end(), fresh.begin(), fresh.end());
    }
    const double c1 = containment(a, b1);
    const double prop1 = static_cast<double>(na) / static_cast<double>(nb1);
    const auto label1 = quality_label(a, b1);
    pass = pass && std::fabs(c1 - 0.8) < 1e-3;
    pass = pass && std::fabs(prop1 - 0.149) < 1e-3;
    pass = pass && label1 == QualityClass::kGood;

    const size_t nb2 = 982921;
    const auto shared2 =
        static_cast<size_t>(std::llround(0.95 * static_cast<double>(na)));
    ValueSet b2 = padded_ids(0, shared2);
    {
        const auto fresh = padded_ids(na, nb2 - shared2);
        b2.insert(b2.end(), fresh.begin(), fresh.end());
    }
    const double c2 = containment(a, b2);
    const double prop2 = static_cast<double>(na) / static_cast<double>(nb2);
    const auto label2 = quality_label(a, b2);
    pass = pass && std::fabs(c2 - 0.95) < 1e-3;
    pass = pass && std::fabs(prop2 - 0.00826) < 1e-3;
    pass = pass && label2 == QualityClass::kPoor;

    const double elapsed = ms_since(start);
    pass = pass && elapsed < 1000.0;
    std::snprintf(detail, sizeof(detail),
                  "C=%.6f prop=%.6f -> class %d; C=%.6f prop=%.6f -> class "
                  "%d; %.0f ms",
                  c1, prop1, static_cast<int>(label1), c2, prop2,
                  static_cast<int>(label2), elapsed);
    report(1, "threshold grid on published cardinalities", pass, detail);
}

// ---------------------------------------------------------------- 2
void criterion_2() {
    const auto start = Clock::now();
    const ValueSet a = {"action", "comedy", "drama"};
    ValueSet b = padded_ids(0, 99998);
    b.push_back("action");
    b.push_back("comedy");
    std::sort(b.begin(), b.end());
    const double c = containment(a, b);
    const auto label = quality_label(a, b);
    const double elapsed = ms_since(start);
    const bool pass = std::fabs(c - 2.0 / 3.0) < 1e-12 &&
                      label == QualityClass::kPoor && elapsed < 1000.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "C=%.6f vs 100000-value candidate -> class %d; %.0f ms", c,
                  static_cast<int>(label), elapsed);
    report(2, "small reference against a huge candidate", pass, detail);
}

// ---------------------------------------------------------------- 3
void criterion_3() {
    const auto start = Clock::now();
    synth::Options opts;
    opts.seed = 20260819;
    opts.groups = 90;
    opts.noise_datasets = 16;
    const auto repo = synth::make_repo(opts);
    const auto corpus = label_corpus(repo);

    std::vector<FeatureVector> xs;
    std::vector<int> labels;
    xs.reserve(corpus.size());
    labels.reserve(corpus.size());
    for (const auto& lp : corpus) {
        xs.push_back(lp.features);
        labels.push_back(lp.label);
    }

    bool pass = corpus.size() >= 2000;
    std::string detail = std::to_string(corpus.size()) + " labeled pairs";

    for (const uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        std::vector<size_t> train_idx, test_idx;
        stratified_split(labels, 0.2, seed, train_idx, test_idx);
        std::vector<FeatureVector> train_x;
        std::vector<int> train_y;
        train_x.reserve(train_idx.size());
        train_y.reserve(train_idx.size());
        for (const size_t i : train_idx) {
            train_x.push_back(xs[i]);
            train_y.push_back(labels[i]);
        }
        const ChainModel model = train_chain(train_x, train_y,
                                             TrainOptions(seed));

        std::vector<int> truths, preds;
        truths.reserve(test_idx.size());
        preds.reserve(test_idx.size());
        for (const size_t i : test_idx) {
            const auto p = chain_predict(model, xs[i]);
            preds.push_back(static_cast<int>(
                resolve_class(p, model.downgrade_threshold)));
            truths.push_back(labels[i]);
        }
        const auto cm5 = confusion(truths, preds, 5);
        const auto binary = metrics(binarize_matrix(cm5));
        const auto five = metrics(cm5);
        const double f1 = binary[1].f1;
        const double p0 = five[0].precision;
        pass = pass && f1 >= 0.75 && p0 >= 0.95;
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "; seed %llu: binary F1=%.4f class-0 precision=%.4f",
                      static_cast<unsigned long long>(seed), f1, p0);
        detail += buf;
    }

    const double elapsed = ms_since(start);
    pass = pass && elapsed < 600000.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "; %.1f s", elapsed / 1000.0);
    detail += buf;
    report(3, "held-out quality on a synthetic corpus", pass, detail);
}

// ---------------------------------------------------------------- 4
void criterion_4() {
    const auto start = Clock::now();
    auto probs = [](double p0, double p1, double p2, double p3, double p4) {
        ClassProbabilities p;
        p.p = {p0, p1, p2, p3, p4};
        return p;
    };
    bool pass = true;
    const int r1 =
        static_cast<int>(resolve_class(probs(0.55, 0.10, 0.20, 0.70, 0.10)));
    const int r2 =
        static_cast<int>(resolve_class(probs(0.45, 0.10, 0.20, 0.48, 0.10)));
    const int r3 =
        static_cast<int>(resolve_class(probs(0.20, 0.10, 0.15, 0.45, 0.10)));
    pass = pass && r1 == 0 && r2 == 0 && r3 == 3;

    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    size_t downgrades = 0;
    for (int it = 0; it < 10000 && pass; ++it) {
        ClassProbabilities p;
        for (auto& v : p.p) v = u(rng);
        const double tau = 0.10;
        const int out = static_cast<int>(resolve_class(p, tau));
        int best = 0;
        for (int c = 1; c < 5; ++c) {
            if (p.p[static_cast<size_t>(c)] > p.p[static_cast<size_t>(best)]) {
                best = c;
            }
        }
        if (out > best) pass = false;  // never upgrades
        if (best == 0) {
            if (out != 0) pass = false;
            continue;
        }
        bool any_confident = false;
        for (const double v : p.p) {
            if (v >= 0.5) any_confident = true;
        }
        const bool rule1 = p.p[0] > 0.5;
        const bool rule2 = !any_confident &&
                           p.p[static_cast<size_t>(best)] - p.p[0] <= tau;
        if (!rule1 && !rule2) {
            if (out != best) pass = false;
        } else {
            if (out >= best) pass = false;
            ++downgrades;
        }
    }
    const double elapsed = ms_since(start);
    pass = pass && elapsed < 60000.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "reference vectors -> %d, %d, %d; 10000 random vectors "
                  "(%zu downgrades); %.0f ms",
                  r1, r2, r3, downgrades, elapsed);
    report(4, "downgrade rules", pass, detail);
}

// ---------------------------------------------------------------- 5
void criterion_5() {
    const auto start = Clock::now();
    synth::Options opts;
    opts.seed = 515;
    opts.groups = 50;
    opts.noise_datasets = 10;
    const auto repo = synth::make_repo(opts);
    std::vector<AttributeProfile> profiles;
    for (const auto& ds : repo) {
        for (auto& p : profile_dataset(ds)) profiles.push_back(std::move(p));
    }
    bool pass = profiles.size() >= 100;
    const auto stats = fit_normalization(profiles);

    double worst_mean = 0.0;
    double worst_sd = 0.0;
    size_t constant = 0;
    for (size_t f = 0; f < kNormFeatureCount; ++f) {
        if (stats.stddev[f] == 0.0) {
            ++constant;
            continue;
        }
        std::vector<double> z;
        z.reserve(profiles.size());
        for (const auto& p : profiles) {
            z.push_back(
                zscore(norm_feature_value(p, f), stats.mean[f],
                       stats.stddev[f]));
        }
        double m = 0.0;
        for (const double v : z) m += v;
        m /= static_cast<double>(z.size());
        double var = 0.0;
        for (const double v : z) var += (v - m) * (v - m);
        var /= static_cast<double>(z.size());
        const double sd = std::sqrt(var);
        worst_mean = std::max(worst_mean, std::fabs(m));
        worst_sd = std::max(worst_sd, std::fabs(sd - 1.0));
    }
    pass = pass && worst_mean < 1e-9 && worst_sd < 1e-9;
    const double elapsed = ms_since(start);
    pass = pass && elapsed < 60000.0;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "%zu profiles; worst |mean|=%.2e, worst |sd-1|=%.2e, %zu "
                  "constant features skipped; %.0f ms",
                  profiles.size(), worst_mean, worst_sd, constant, elapsed);
    report(5, "population normalization", pass, detail);
}

// ---------------------------------------------------------------- 6
void criterion_6() {
    const auto start = Clock::now();
    std::mt19937_64 rng(606);
    bool pass = true;
    double worst = 0.0;
    std::string worst_field;
    for (int it = 0; it < 1000; ++it) {
        std::uniform_int_distribution<size_t> rows_dist(1, 200);
        std::uniform_int_distribution<size_t> vocab_dist(1, 40);
        std::uniform_int_distribution<int> missing_dist(0, 9);
        const size_t rows = rows_dist(rng);
        const size_t vocab_size = vocab_dist(rng);
        std::vector<std::string> vocab;
        vocab.reserve(vocab_size);
        for (size_t v = 0; v < vocab_size; ++v) {
            vocab.push_back(testutil::random_value(rng, 3));
        }
        testutil::OptValues values;
        values.reserve(rows);
        std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1);
        for (size_t r = 0; r + 1 < rows; ++r) {
            if (missing_dist(rng) == 0) {
                values.emplace_back(std::nullopt);
            } else {
                values.emplace_back(vocab[pick(rng)]);
            }
        }
        values.emplace_back(vocab[pick(rng)]);  // at least one present cell

        const auto fast = profile_attribute(values, "col", "ds");
        const auto naive = testutil::naive_profile(values, "col");
        std::string field;
        const double gap = testutil::profile_field_gap(fast, naive, &field);
        if (gap > worst) {
            worst = gap;
            worst_field = field;
        }
        if (gap > 1e-12) pass = false;
    }
    const double elapsed = ms_since(start);
    pass = pass && elapsed < 60000.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "1000 columns; worst gap %.2e%s%s; %.0f ms", worst,
                  worst_field.empty() ? "" : " at ", worst_field.c_str(),
                  elapsed);
    report(6, "profiler equivalence against a naive reimplementation", pass,
           detail);
}

// ---------------------------------------------------------------- 7
double median_profile_seconds(const std::string& path) {
    std::vector<double> times;
    for (int run = 0; run < 3; ++run) {
        const auto start = Clock::now();
        const auto ds = load_dataset(path);
        const auto profiles = profile_dataset(ds);
        if (profiles.empty()) {
            throw std::runtime_error("no eligible attributes in " + path);
        }
        times.push_back(ms_since(start) / 1000.0);
    }
    std::sort(times.begin(), times.end());
    return times[1];
}

void criterion_7() {
    const auto start = Clock::now();
    testutil::TempDir dir("scalability");
    const size_t mb = 1024 * 1024;
    const auto base_path = dir.file("base_50mb.csv");
    const auto rows_path = dir.file("rows_100mb.csv");
    const auto cols_path = dir.file("cols_100mb.csv");
    synth::write_profiling_csv(base_path, 50 * mb, 4, 71);
    synth::write_profiling_csv(rows_path, 100 * mb, 4, 71);
    synth::write_profiling_csv(cols_path, 100 * mb, 8, 71);

    const double base = median_profile_seconds(base_path);
    const double rows2x = median_profile_seconds(rows_path);
    const double cols2x = median_profile_seconds(cols_path);
    const double row_ratio = rows2x / base;
    const double col_ratio = cols2x / base;

    const double elapsed = ms_since(start);
    const bool pass =
        row_ratio <= 2.5 && col_ratio <= 2.5 && elapsed < 300000.0;
    char detail[220];
    std::snprintf(detail, sizeof(detail),
                  "median 50MB=%.2fs, 100MB rows=%.2fs (x%.2f), 100MB "
                  "cols=%.2fs (x%.2f); %.1f s total",
                  base, rows2x, row_ratio, cols2x, col_ratio,
                  elapsed / 1000.0);
    report(7, "near-linear profiling cost", pass, detail);
}

// ---------------------------------------------------------------- 8
void criterion_8() {
    const auto start = Clock::now();
    testutil::TempDir dir("roundtrip");
    synth::Options opts;
    opts.seed = 88;
    opts.groups = 12;
    opts.noise_datasets = 3;
    const auto repo = synth::make_repo(opts);
    const auto corpus = label_corpus(repo);
    std::vector<FeatureVector> xs;
    std::vector<int> labels;
    for (const auto& lp : corpus) {
        xs.push_back(lp.features);
        labels.push_back(lp.label);
    }
    const ChainModel model = train_chain(xs, labels, TrainOptions(8));
    const auto model_path = dir.file("model.json");
    save_model(model_path, model);
    const ChainModel loaded_model = load_model(model_path);

    std::vector<AttributeProfile> original;
    std::vector<AttributeProfile> reloaded;
    for (const auto& ds : repo) {
        ProfileDocument doc;
        doc.dataset_name = ds.name;
        doc.row_count = ds.row_count;
        doc.attributes = profile_dataset(ds);
        const auto path = profile_document_path(dir.path.string(), ds.name);
        save_profiles(path, doc);
        const auto back = load_profiles(path);
        for (const auto& p : doc.attributes) original.push_back(p);
        for (const auto& p : back.attributes) reloaded.push_back(p);
    }

    bool pass = original.size() == reloaded.size() && original.size() >= 20;
    const auto stats_orig = fit_normalization(original);
    const auto stats_back = fit_normalization(reloaded);

    // fixed query set: every attribute paired with the next two
    size_t compared = 0;
    for (size_t i = 0; i < original.size() && pass; ++i) {
        for (size_t step = 1; step <= 2 && pass; ++step) {
            const size_t j = (i + step) % original.size();
            if (original[i].dataset_name == original[j].dataset_name) continue;
            const FeatureVector f1 =
                distance_vector(original[i], original[j], stats_orig);
            const FeatureVector f2 =
                distance_vector(reloaded[i], reloaded[j], stats_back);
            if (std::memcmp(f1.values.data(), f2.values.data(),
                            sizeof(double) * kFeatureCount) != 0) {
                pass = false;
            }
            const auto p1 = chain_predict(model, f1);
            const auto p2 = chain_predict(loaded_model, f2);
            if (std::memcmp(p1.p.data(), p2.p.data(),
                            sizeof(double) * 5) != 0) {
                pass = false;
            }
            ++compared;
        }
    }
    const double elapsed = ms_since(start);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%zu profile+model round-trip predictions bit-identical; "
                  "%.0f ms",
                  compared, elapsed);
    report(8, "save/load reproduces predictions bit for bit", pass, detail);
}

// ---------------------------------------------------------------- 9
void criterion_9() {
    const auto start = Clock::now();
    bool pass = true;

    // an actual evaluation run
    synth::Options opts;
    opts.seed = 99;
    opts.groups = 15;
    opts.noise_datasets = 4;
    const auto repo = synth::make_repo(opts);
    const auto corpus = label_corpus(repo);
    std::vector<FeatureVector> xs;
    std::vector<int> labels;
    for (const auto& lp : corpus) {
        xs.push_back(lp.features);
        labels.push_back(lp.label);
    }
    TrainOptions topts(9);
    for (auto& p : topts.params) {
        p.tree_count = 40;
        p.max_depth = 15;
    }
    const ChainModel model = train_chain(xs, labels, topts);
    std::vector<int> preds, bin_truths, bin_preds;
    for (size_t i = 0; i < xs.size(); ++i) {
        const auto p = chain_predict(model, xs[i]);
        preds.push_back(
            static_cast<int>(resolve_class(p, model.downgrade_threshold)));
        bin_truths.push_back(labels[i] >= 3 ? 1 : 0);
        bin_preds.push_back(preds.back() >= 3 ? 1 : 0);
    }
    const auto cm5 = confusion(labels, preds, 5);
    const auto folded = binarize_matrix(cm5);
    const auto direct = confusion(bin_truths, bin_preds, 2);
    for (size_t t = 0; t < 2; ++t) {
        for (size_t p = 0; p < 2; ++p) {
            if (folded.at(t, p) != direct.at(t, p)) pass = false;
        }
    }
    pass = pass && folded.total() == cm5.total();

    // published counts
    ConfusionMatrix fig(2);
    fig.at(1, 1) = 915;
    fig.at(0, 1) = 129;
    fig.at(1, 0) = 166;
    fig.at(0, 0) = 31406;
    const auto ms_fig = metrics(fig);
    const double dp = std::fabs(ms_fig[1].precision - 0.8764);
    const double dr = std::fabs(ms_fig[1].recall - 0.8464);
    const double df = std::fabs(ms_fig[1].f1 - 0.8611);
    pass = pass && dp < 1e-4 && dr < 1e-4 && df < 1e-4;

    const double elapsed = ms_since(start);
    char detail[220];
    std::snprintf(detail, sizeof(detail),
                  "binarized matrix identical on %llu pairs; reference "
                  "counts -> P=%.4f R=%.4f F1=%.4f; %.0f ms",
                  static_cast<unsigned long long>(cm5.total()),
                  ms_fig[1].precision, ms_fig[1].recall, ms_fig[1].f1,
                  elapsed);
    report(9, "evaluation identities", pass, detail);
}

void run(int index, const char* name, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(index, name, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    run(1, "threshold grid on published cardinalities", criterion_1);
    run(2, "small reference against a huge candidate", criterion_2);
    run(3, "held-out quality on a synthetic corpus", criterion_3);
    run(4, "downgrade rules", criterion_4);
    run(5, "population normalization", criterion_5);
    run(6, "profiler equivalence against a naive reimplementation",
        criterion_6);
    run(7, "near-linear profiling cost", criterion_7);
    run(8, "save/load reproduces predictions bit for bit", criterion_8);
    run(9, "evaluation identities", criterion_9);
    if (failures > 0) {
        std::printf("%d of 9 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
