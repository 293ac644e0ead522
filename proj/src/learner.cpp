#include "joinscout/learner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "joinscout/discovery.hpp"
#include "joinscout/kernels.hpp"

namespace joinscout {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct BinnedFeature {
    std::vector<double> thresholds;  // sorted bin boundaries
};

// Quantile boundaries over the training column, deduplicated. Each cut is
// the midpoint of the two values straddling a quantile position, so a cut
// never sits exactly on a training value.
BinnedFeature bin_feature(const BinaryDataset& data, size_t f, int max_bins) {
    std::vector<double> column(data.rows());
    for (size_t i = 0; i < data.rows(); ++i) column[i] = data.row(i)[f];
    std::sort(column.begin(), column.end());
    BinnedFeature out;
    const size_t n = column.size();
    const size_t bins = static_cast<size_t>(std::max(2, max_bins));
    for (size_t k = 1; k < bins; ++k) {
        const size_t pos = k * n / bins;
        if (pos == 0) continue;
        if (column[pos - 1] >= column.back()) break;  // empty right side, stop
        if (column[pos - 1] == column[pos]) continue;
        const double t = 0.5 * (column[pos - 1] + column[pos]);
        if (out.thresholds.empty() || t > out.thresholds.back()) {
            out.thresholds.push_back(t);
        }
    }
    return out;
}

struct TreeBuilder {
    const BinaryDataset& data;
    const ForestParams& params;
    const std::vector<BinnedFeature>& bins;
    const std::vector<std::vector<uint16_t>>& sample_bins;  // [feature][row]
    std::mt19937_64 rng;
    Tree tree;
    std::vector<size_t> feature_scratch;

    TreeBuilder(const BinaryDataset& d, const ForestParams& p,
                const std::vector<BinnedFeature>& b,
                const std::vector<std::vector<uint16_t>>& sb, uint64_t seed)
        : data(d), params(p), bins(b), sample_bins(sb), rng(seed) {
        feature_scratch.resize(data.width);
        for (size_t i = 0; i < data.width; ++i) feature_scratch[i] = i;
    }

    int32_t make_leaf(double fraction) {
        TreeNode node;
        node.positive_fraction = fraction;
        tree.nodes.push_back(node);
        return static_cast<int32_t>(tree.nodes.size() - 1);
    }

    size_t subset_size() const {
        if (params.feature_subset_size > 0) {
            return std::min<size_t>(params.feature_subset_size, data.width);
        }
        const auto k = static_cast<size_t>(
            std::sqrt(static_cast<double>(data.width)));
        return std::max<size_t>(1, k);
    }

    int32_t build(std::vector<uint32_t>& idx, int depth) {
        const size_t n = idx.size();
        size_t pos = 0;
        for (const uint32_t i : idx) pos += data.y[i];
        const double fraction =
            static_cast<double>(pos) / static_cast<double>(n);
        if (depth >= params.max_depth || pos == 0 || pos == n || n < 2) {
            return make_leaf(fraction);
        }

        const size_t k = subset_size();
        for (size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<size_t> pick(i, data.width - 1);
            std::swap(feature_scratch[i], feature_scratch[pick(rng)]);
        }
        std::vector<size_t> chosen(feature_scratch.begin(),
                                   feature_scratch.begin() + k);
        std::sort(chosen.begin(), chosen.end());

        const double parent_gini =
            2.0 * fraction * (1.0 - fraction) * static_cast<double>(n);
        double best_score = parent_gini - 1e-12;
        int best_feature = -1;
        size_t best_bin = 0;

        std::vector<uint64_t> bin_n;
        std::vector<uint64_t> bin_pos;
        for (const size_t f : chosen) {
            const auto& t = bins[f].thresholds;
            if (t.empty()) continue;
            bin_n.assign(t.size() + 1, 0);
            bin_pos.assign(t.size() + 1, 0);
            const auto& sb = sample_bins[f];
            for (const uint32_t i : idx) {
                ++bin_n[sb[i]];
                bin_pos[sb[i]] += data.y[i];
            }
            uint64_t left_n = 0;
            uint64_t left_pos = 0;
            for (size_t j = 0; j < t.size(); ++j) {
                left_n += bin_n[j];
                left_pos += bin_pos[j];
                if (left_n == 0 || left_n == n) continue;
                const double ln = static_cast<double>(left_n);
                const double rn = static_cast<double>(n - left_n);
                const double lp = static_cast<double>(left_pos);
                const double rp = static_cast<double>(pos - left_pos);
                // weighted Gini, scaled by n (constant factor per node)
                const double score = 2.0 * (lp * (ln - lp) / ln +
                                            rp * (rn - rp) / rn);
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_bin = j;
                }
            }
        }
        if (best_feature < 0) return make_leaf(fraction);

        const auto& sb = sample_bins[static_cast<size_t>(best_feature)];
        std::vector<uint32_t> left_idx;
        std::vector<uint32_t> right_idx;
        left_idx.reserve(n);
        right_idx.reserve(n);
        for (const uint32_t i : idx) {
            (sb[i] <= best_bin ? left_idx : right_idx).push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        TreeNode node;
        node.feature = best_feature;
        node.threshold =
            bins[static_cast<size_t>(best_feature)].thresholds[best_bin];
        node.positive_fraction = fraction;
        tree.nodes.push_back(node);
        const auto self = static_cast<int32_t>(tree.nodes.size() - 1);
        const int32_t left = build(left_idx, depth + 1);
        const int32_t right = build(right_idx, depth + 1);
        tree.nodes[self].left = left;
        tree.nodes[self].right = right;
        return self;
    }
};

}  // namespace

Forest train_forest(const BinaryDataset& data, const ForestParams& params,
                    std::vector<std::vector<uint32_t>>* bootstrap_rows) {
    if (data.rows() < 2) {
        throw std::runtime_error("forest training needs at least two samples");
    }
    size_t pos = 0;
    for (const uint8_t y : data.y) pos += y;
    if (pos == 0 || pos == data.rows()) {
        throw std::runtime_error("forest training needs both labels present");
    }
    if (params.tree_count < 1 || params.max_depth < 1) {
        throw std::runtime_error("invalid forest parameters");
    }

    std::vector<BinnedFeature> bins(data.width);
    std::vector<std::vector<uint16_t>> sample_bins(data.width);
    for (size_t f = 0; f < data.width; ++f) {
        bins[f] = bin_feature(data, f, params.max_split_candidates);
        auto& sb = sample_bins[f];
        sb.resize(data.rows());
        const auto& t = bins[f].thresholds;
        for (size_t i = 0; i < data.rows(); ++i) {
            const auto it =
                std::lower_bound(t.begin(), t.end(), data.row(i)[f]);
            sb[i] = static_cast<uint16_t>(it - t.begin());
        }
    }

    Forest forest;
    forest.input_width = static_cast<int>(data.width);
    forest.trees.resize(params.tree_count);
    for (int t = 0; t < params.tree_count; ++t) {
        const uint64_t tree_seed =
            splitmix64(params.seed ^ (0x51ed2701ULL + static_cast<uint64_t>(t)));
        std::mt19937_64 boot_rng(tree_seed);
        std::vector<uint32_t> idx(data.rows());
        if (params.bootstrap) {
            std::uniform_int_distribution<uint32_t> pick(
                0, static_cast<uint32_t>(data.rows() - 1));
            for (auto& i : idx) i = pick(boot_rng);
        } else {
            for (size_t i = 0; i < idx.size(); ++i) {
                idx[i] = static_cast<uint32_t>(i);
            }
        }
        if (bootstrap_rows) bootstrap_rows->push_back(idx);
        TreeBuilder builder(data, params, bins, sample_bins,
                            splitmix64(tree_seed));
        builder.build(idx, 0);
        forest.trees[t] = std::move(builder.tree);
    }
    return forest;
}

namespace {

double tree_leaf(const Tree& tree, const double* x) {
    const auto& nodes = tree.nodes;
    int32_t at = 0;
    while (nodes[static_cast<size_t>(at)].feature >= 0) {
        const auto& node = nodes[static_cast<size_t>(at)];
        at = x[node.feature] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<size_t>(at)].positive_fraction;
}

}  // namespace

double forest_predict(const Forest& f, const double* x) {
    std::vector<double> leaf(f.trees.size());
    for (size_t t = 0; t < f.trees.size(); ++t) {
        leaf[t] = tree_leaf(f.trees[t], x);
    }
    // Sorted reduction keeps the mean independent of tree order.
    std::sort(leaf.begin(), leaf.end());
    return kernels::sum(leaf.data(), leaf.size()) /
           static_cast<double>(leaf.size());
}

std::array<ForestParams, 5> default_chain_params(uint64_t seed) {
    constexpr std::array<int, 5> kTrees = {120, 100, 120, 80, 120};
    constexpr std::array<int, 5> kDepth = {25, 25, 30, 30, 20};
    constexpr std::array<int, 5> kSplitCandidates = {55, 40, 40, 60, 45};
    std::array<ForestParams, 5> out;
    for (size_t c = 0; c < 5; ++c) {
        out[c].tree_count = kTrees[c];
        out[c].max_depth = kDepth[c];
        out[c].max_split_candidates = kSplitCandidates[c];
        out[c].seed = splitmix64(seed ^ (0xc1a55ULL + c));
    }
    return out;
}

std::array<OvrSet, 5> build_ovr_sets(const std::vector<int>& labels,
                                     uint64_t seed) {
    std::array<std::vector<size_t>, 5> by_class;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] > 4) {
            throw std::runtime_error("label out of range at record " +
                                     std::to_string(i));
        }
        by_class[static_cast<size_t>(labels[i])].push_back(i);
    }
    std::string missing;
    for (size_t c = 0; c < 5; ++c) {
        if (by_class[c].empty()) {
            if (!missing.empty()) missing += ", ";
            missing += std::to_string(c);
        }
    }
    if (!missing.empty()) {
        throw std::runtime_error("corpus lacks examples of class " + missing);
    }

    std::array<OvrSet, 5> sets;
    for (size_t c = 0; c < 5; ++c) {
        // Water-fill the negative quota, smallest classes first, so the
        // negatives stay as uniform across classes as their sizes allow.
        std::array<size_t, 4> neg_classes{};
        size_t nn = 0;
        for (size_t o = 0; o < 5; ++o) {
            if (o != c) neg_classes[nn++] = o;
        }
        std::sort(neg_classes.begin(), neg_classes.end(),
                  [&](size_t a, size_t b) {
                      if (by_class[a].size() != by_class[b].size()) {
                          return by_class[a].size() < by_class[b].size();
                      }
                      return a < b;
                  });
        size_t total_neg_avail = 0;
        for (const size_t o : neg_classes) total_neg_avail += by_class[o].size();
        const size_t pos_take = std::min(by_class[c].size(), total_neg_avail);

        std::array<size_t, 5> take{};
        size_t need = pos_take;
        size_t remaining_classes = 4;
        for (const size_t o : neg_classes) {
            const size_t quota =
                (need + remaining_classes - 1) / remaining_classes;
            take[o] = std::min(by_class[o].size(), quota);
            need -= take[o];
            --remaining_classes;
        }
        // Ceil rounding can leave a residue when later classes run dry;
        // top up from classes with spare records, in class order.
        for (size_t o = 0; o < 5 && need > 0; ++o) {
            if (o == c) continue;
            const size_t spare = by_class[o].size() - take[o];
            const size_t extra = std::min(spare, need);
            take[o] += extra;
            need -= extra;
        }

        OvrSet& set = sets[c];
        auto sample_class = [&](size_t cls, size_t count, uint8_t label) {
            std::vector<size_t> pool = by_class[cls];
            std::mt19937_64 rng(
                splitmix64(seed ^ (0x0b5e55ULL + 16 * c + cls)));
            for (size_t i = 0; i < count; ++i) {
                std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            pool.resize(count);
            std::sort(pool.begin(), pool.end());
            for (const size_t idx : pool) {
                set.indices.push_back(idx);
                set.labels.push_back(label);
            }
        };
        sample_class(c, pos_take, 1);
        for (size_t o = 0; o < 5; ++o) {
            if (o != c && take[o] > 0) sample_class(o, take[o], 0);
        }
    }
    return sets;
}

namespace {

BinaryDataset gather_rows(const std::vector<std::vector<double>>& rows,
                          const OvrSet& set) {
    BinaryDataset data;
    data.width = rows.empty() ? 0 : rows[0].size();
    data.x.reserve(set.indices.size() * data.width);
    data.y.reserve(set.indices.size());
    for (size_t i = 0; i < set.indices.size(); ++i) {
        const auto& row = rows[set.indices[i]];
        data.x.insert(data.x.end(), row.begin(), row.end());
        data.y.push_back(set.labels[i]);
    }
    return data;
}

}  // namespace

ChainModel train_chain(const std::vector<FeatureVector>& xs,
                       const std::vector<int>& labels,
                       const TrainOptions& opts) {
    if (xs.size() != labels.size()) {
        throw std::runtime_error("feature/label count mismatch");
    }
    for (const auto& x : xs) {
        if (x.schema_version != kFeatureSchemaVersion) {
            throw std::runtime_error("feature vector schema mismatch");
        }
    }
    ChainModel model;
    model.params = opts.params;
    model.chain_enabled = opts.chain_enabled;
    model.downgrade_threshold = opts.downgrade_threshold;
    model.seed = opts.seed;

    const auto sets = build_ovr_sets(labels, opts.seed);

    std::vector<std::vector<double>> rows(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        rows[i].assign(xs[i].values.begin(), xs[i].values.end());
    }
    for (size_t c = 0; c < 5; ++c) {
        const BinaryDataset data = gather_rows(rows, sets[c]);
        const bool chain_next = model.chain_enabled && c < 4;
        std::vector<std::vector<uint32_t>> boot;
        model.forests[c] =
            train_forest(data, opts.params[c], chain_next ? &boot : nullptr);
        if (!chain_next) continue;

        // Rows this forest trained on get out-of-bag predictions, so the
        // chained feature has the same distribution at train and predict
        // time; any other row just gets the full forest.
        std::vector<int32_t> local_of(rows.size(), -1);
        for (size_t j = 0; j < sets[c].indices.size(); ++j) {
            local_of[sets[c].indices[j]] = static_cast<int32_t>(j);
        }
        std::vector<std::vector<uint8_t>> in_bag(
            boot.size(), std::vector<uint8_t>(sets[c].indices.size(), 0));
        for (size_t t = 0; t < boot.size(); ++t) {
            for (const uint32_t j : boot[t]) in_bag[t][j] = 1;
        }
        std::vector<double> leaf;
        for (size_t r = 0; r < rows.size(); ++r) {
            const int32_t j = local_of[r];
            double p;
            if (j < 0) {
                p = forest_predict(model.forests[c], rows[r].data());
            } else {
                leaf.clear();
                for (size_t t = 0; t < model.forests[c].trees.size(); ++t) {
                    if (t < in_bag.size() && in_bag[t][static_cast<size_t>(j)]) {
                        continue;
                    }
                    leaf.push_back(
                        tree_leaf(model.forests[c].trees[t], rows[r].data()));
                }
                if (leaf.empty()) {
                    p = forest_predict(model.forests[c], rows[r].data());
                } else {
                    std::sort(leaf.begin(), leaf.end());
                    p = kernels::sum(leaf.data(), leaf.size()) /
                        static_cast<double>(leaf.size());
                }
            }
            rows[r].push_back(p);
        }
    }
    return model;
}

ClassProbabilities chain_predict(const ChainModel& model,
                                 const FeatureVector& x) {
    if (x.schema_version != model.schema_version) {
        throw std::runtime_error("feature vector schema mismatch");
    }
    std::vector<double> row(x.values.begin(), x.values.end());
    ClassProbabilities out;
    for (size_t c = 0; c < 5; ++c) {
        const int expected =
            static_cast<int>(kFeatureCount) +
            (model.chain_enabled ? static_cast<int>(c) : 0);
        if (model.forests[c].input_width != expected) {
            throw std::runtime_error("model width mismatch for class " +
                                     std::to_string(c));
        }
        const double p = model.chain_enabled
                             ? forest_predict(model.forests[c], row.data())
                             : forest_predict(model.forests[c], x.values.data());
        out.p[c] = p;
        if (model.chain_enabled && c < 4) row.push_back(p);
    }
    return out;
}

std::vector<int> stratified_folds(const std::vector<int>& labels, size_t k,
                                  uint64_t seed) {
    std::vector<int> fold(labels.size(), 0);
    std::array<std::vector<size_t>, 5> by_class;
    for (size_t i = 0; i < labels.size(); ++i) {
        by_class[static_cast<size_t>(labels[i])].push_back(i);
    }
    for (size_t c = 0; c < 5; ++c) {
        auto& pool = by_class[c];
        std::mt19937_64 rng(splitmix64(seed ^ (0xf01d5ULL + c)));
        std::shuffle(pool.begin(), pool.end(), rng);
        for (size_t i = 0; i < pool.size(); ++i) {
            fold[pool[i]] = static_cast<int>(i % k);
        }
    }
    return fold;
}

void stratified_split(const std::vector<int>& labels, double test_fraction,
                      uint64_t seed, std::vector<size_t>& train_idx,
                      std::vector<size_t>& test_idx) {
    train_idx.clear();
    test_idx.clear();
    std::array<std::vector<size_t>, 5> by_class;
    for (size_t i = 0; i < labels.size(); ++i) {
        by_class[static_cast<size_t>(labels[i])].push_back(i);
    }
    for (size_t c = 0; c < 5; ++c) {
        auto& pool = by_class[c];
        if (pool.empty()) continue;
        std::mt19937_64 rng(splitmix64(seed ^ (0x5911fULL + c)));
        std::shuffle(pool.begin(), pool.end(), rng);
        size_t test_count = static_cast<size_t>(
            std::llround(test_fraction * static_cast<double>(pool.size())));
        // Keep at least one record on each side when the class allows it.
        if (test_count == 0 && pool.size() > 1) test_count = 1;
        if (test_count == pool.size() && pool.size() > 1) --test_count;
        for (size_t i = 0; i < pool.size(); ++i) {
            (i < test_count ? test_idx : train_idx).push_back(pool[i]);
        }
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
}

std::vector<ConfusionMatrix> cross_validate(
    const std::vector<FeatureVector>& xs, const std::vector<int>& labels,
    const TrainOptions& opts, size_t k) {
    if (xs.size() < k) {
        throw std::runtime_error("cross-validation needs at least k records");
    }
    const std::vector<int> fold = stratified_folds(labels, k, opts.seed);
    std::vector<ConfusionMatrix> out;
    out.reserve(k);
    for (size_t f = 0; f < k; ++f) {
        std::vector<FeatureVector> train_x;
        std::vector<int> train_y;
        std::vector<size_t> val_idx;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (static_cast<size_t>(fold[i]) == f) {
                val_idx.push_back(i);
            } else {
                train_x.push_back(xs[i]);
                train_y.push_back(labels[i]);
            }
        }
        const ChainModel model = train_chain(train_x, train_y, opts);
        std::vector<int> truths;
        std::vector<int> preds;
        truths.reserve(val_idx.size());
        preds.reserve(val_idx.size());
        for (const size_t i : val_idx) {
            const ClassProbabilities p = chain_predict(model, xs[i]);
            truths.push_back(labels[i]);
            preds.push_back(static_cast<int>(
                resolve_class(p, model.downgrade_threshold)));
        }
        out.push_back(confusion(truths, preds, 5));
    }
    return out;
}

}  // namespace joinscout
