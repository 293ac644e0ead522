#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "joinscout/oracle.hpp"

namespace joinscout {

// rows = true class, columns = predicted class
struct ConfusionMatrix {
    size_t classes = 0;
    std::vector<uint64_t> counts;  // classes * classes, row-major

    explicit ConfusionMatrix(size_t n = 5)
        : classes(n), counts(n * n, 0) {}

    uint64_t& at(size_t truth, size_t pred) {
        return counts[truth * classes + pred];
    }
    uint64_t at(size_t truth, size_t pred) const {
        return counts[truth * classes + pred];
    }
    uint64_t total() const;
    uint64_t row_total(size_t truth) const;
    uint64_t col_total(size_t pred) const;
};

// Throws on length mismatch; class values must lie in [0, classes).
ConfusionMatrix confusion(const std::vector<int>& truths,
                          const std::vector<int>& preds, size_t classes = 5);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Undefined ratios (zero denominator) are reported as 0 and flagged.
    bool precision_defined = false;
    bool recall_defined = false;
    bool f1_defined = false;
};

std::vector<ClassMetrics> metrics(const ConfusionMatrix& cm);

enum class BinaryClass { kUninteresting = 0, kInteresting = 1 };

// Classes 3 and 4 are interesting, 0..2 uninteresting.
BinaryClass binarize(QualityClass c);

// Aggregates a 5x5 matrix into the 2x2 interesting/uninteresting matrix.
ConfusionMatrix binarize_matrix(const ConfusionMatrix& cm);

std::string render_report(const ConfusionMatrix& cm);

}  // namespace joinscout
