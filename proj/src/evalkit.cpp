#include "joinscout/evalkit.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace joinscout {

uint64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

uint64_t ConfusionMatrix::row_total(size_t truth) const {
    uint64_t t = 0;
    for (size_t p = 0; p < classes; ++p) t += at(truth, p);
    return t;
}

uint64_t ConfusionMatrix::col_total(size_t pred) const {
    uint64_t t = 0;
    for (size_t r = 0; r < classes; ++r) t += at(r, pred);
    return t;
}

ConfusionMatrix confusion(const std::vector<int>& truths,
                          const std::vector<int>& preds, size_t classes) {
    if (truths.size() != preds.size()) {
        throw std::runtime_error("confusion: prediction count " +
                                 std::to_string(preds.size()) +
                                 " does not match truth count " +
                                 std::to_string(truths.size()));
    }
    ConfusionMatrix cm(classes);
    for (size_t i = 0; i < truths.size(); ++i) {
        const int t = truths[i];
        const int p = preds[i];
        if (t < 0 || p < 0 || static_cast<size_t>(t) >= classes ||
            static_cast<size_t>(p) >= classes) {
            throw std::runtime_error("confusion: class out of range at record " +
                                     std::to_string(i));
        }
        ++cm.at(static_cast<size_t>(t), static_cast<size_t>(p));
    }
    return cm;
}

std::vector<ClassMetrics> metrics(const ConfusionMatrix& cm) {
    std::vector<ClassMetrics> out(cm.classes);
    for (size_t c = 0; c < cm.classes; ++c) {
        const uint64_t tp = cm.at(c, c);
        const uint64_t fp = cm.col_total(c) - tp;
        const uint64_t fn = cm.row_total(c) - tp;
        ClassMetrics& m = out[c];
        if (tp + fp > 0) {
            m.precision_defined = true;
            m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        }
        if (tp + fn > 0) {
            m.recall_defined = true;
            m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
        }
        if (m.precision + m.recall > 0.0) {
            m.f1_defined = true;
            m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
        }
    }
    return out;
}

BinaryClass binarize(QualityClass c) {
    return static_cast<int>(c) >= 3 ? BinaryClass::kInteresting
                                    : BinaryClass::kUninteresting;
}

ConfusionMatrix binarize_matrix(const ConfusionMatrix& cm) {
    ConfusionMatrix out(2);
    for (size_t t = 0; t < cm.classes; ++t) {
        for (size_t p = 0; p < cm.classes; ++p) {
            const size_t bt = t >= 3 ? 1 : 0;
            const size_t bp = p >= 3 ? 1 : 0;
            out.at(bt, bp) += cm.at(t, p);
        }
    }
    return out;
}

std::string render_report(const ConfusionMatrix& cm) {
    std::ostringstream os;
    os << "confusion matrix (rows = true, cols = predicted)\n";
    os << "      ";
    for (size_t p = 0; p < cm.classes; ++p) os << "  pred_" << p;
    os << '\n';
    for (size_t t = 0; t < cm.classes; ++t) {
        os << "true_" << t;
        for (size_t p = 0; p < cm.classes; ++p) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%8llu",
                          static_cast<unsigned long long>(cm.at(t, p)));
            os << buf;
        }
        os << '\n';
    }
    os << "\nclass  precision  recall     f1\n";
    const auto ms = metrics(cm);
    for (size_t c = 0; c < ms.size(); ++c) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%-6zu %9.4f %7.4f %7.4f%s\n", c,
                      ms[c].precision, ms[c].recall, ms[c].f1,
                      ms[c].precision_defined && ms[c].recall_defined
                          ? ""
                          : "  (undefined ratios reported as 0)");
        os << buf;
    }
    return os.str();
}

}  // namespace joinscout
