#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "joinscout/comparator.hpp"
#include "joinscout/evalkit.hpp"

namespace joinscout {

// Split node when feature >= 0, leaf otherwise.
struct TreeNode {
    int32_t feature = -1;
    double threshold = 0.0;  // goes left when x[feature] <= threshold
    int32_t left = -1;
    int32_t right = -1;
    double positive_fraction = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root
};

struct ForestParams {
    int tree_count = 100;
    int max_depth = 25;
    // Split candidates are quantile bin boundaries computed once per
    // feature over the training set.
    int max_split_candidates = 40;
    int feature_subset_size = 0;  // 0 = floor(sqrt(width)), min 1
    bool bootstrap = true;
    uint64_t seed = 1;
};

struct Forest {
    std::vector<Tree> trees;
    int input_width = 0;
};

struct BinaryDataset {
    size_t width = 0;
    std::vector<double> x;  // row-major, rows() * width
    std::vector<uint8_t> y;

    size_t rows() const { return y.size(); }
    const double* row(size_t i) const { return x.data() + i * width; }
};

// CART with Gini impurity, bootstrap resampling, and a random feature
// subset per split. Throws when the set has fewer than two samples or a
// single label. When bootstrap_rows is given it receives each tree's
// bootstrap draw (row indices, duplicates included), which lets callers
// compute out-of-bag predictions for the training rows.
Forest train_forest(const BinaryDataset& data, const ForestParams& params,
                    std::vector<std::vector<uint32_t>>* bootstrap_rows = nullptr);

// Mean of per-tree leaf positive fractions; invariant to tree order.
double forest_predict(const Forest& f, const double* x);

struct ClassProbabilities {
    std::array<double, 5> p{};
};

struct ChainModel {
    std::array<Forest, 5> forests;
    std::array<ForestParams, 5> params;
    bool chain_enabled = true;
    int schema_version = kFeatureSchemaVersion;
    double downgrade_threshold = 0.10;
    uint64_t seed = 1;
    std::string normalization_policy = "zscore-population";
};

// Per-class defaults (trees, depth, split candidates).
std::array<ForestParams, 5> default_chain_params(uint64_t seed);

struct OvrSet {
    std::vector<size_t> indices;  // into the corpus
    std::vector<uint8_t> labels;  // 1 = member of the target class
};

// One balanced binary set per class: all records of the class as
// positives plus an equal number of negatives drawn as uniformly as
// possible across the other classes (larger classes absorb shortfalls).
// When the negative pool is smaller than the positive side, positives are
// downsampled to match. Throws when any class is absent, listing the
// missing ones.
std::array<OvrSet, 5> build_ovr_sets(const std::vector<int>& labels,
                                     uint64_t seed);

struct TrainOptions {
    std::array<ForestParams, 5> params;
    bool chain_enabled = true;
    double downgrade_threshold = 0.10;
    uint64_t seed = 1;

    explicit TrainOptions(uint64_t s = 1)
        : params(default_chain_params(s)), seed(s) {}
};

// Trains the five class ensembles. With the chain enabled, ensemble i
// receives the base vector plus the probabilities of ensembles 0..i-1
// (out-of-bag for rows those ensembles trained on).
ChainModel train_chain(const std::vector<FeatureVector>& xs,
                       const std::vector<int>& labels,
                       const TrainOptions& opts);

ClassProbabilities chain_predict(const ChainModel& model,
                                 const FeatureVector& x);

// Deterministic stratified partition helpers.
std::vector<int> stratified_folds(const std::vector<int>& labels, size_t k,
                                  uint64_t seed);
void stratified_split(const std::vector<int>& labels, double test_fraction,
                      uint64_t seed, std::vector<size_t>& train_idx,
                      std::vector<size_t>& test_idx);

// K-fold cross-validation (stratified); one confusion matrix per fold,
// predictions resolved with the model's downgrade threshold.
std::vector<ConfusionMatrix> cross_validate(
    const std::vector<FeatureVector>& xs, const std::vector<int>& labels,
    const TrainOptions& opts, size_t k = 5);

}  // namespace joinscout
