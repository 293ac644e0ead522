#include "kernels_impl.hpp"

#include <cmath>

namespace joinscout::kernels::detail {

double sum_scalar(const double* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double min_scalar(const double* x, size_t n) {
    double m = x[0];
    for (size_t i = 1; i < n; ++i) {
        if (x[i] < m) m = x[i];
    }
    return m;
}

double max_scalar(const double* x, size_t n) {
    double m = x[0];
    for (size_t i = 1; i < n; ++i) {
        if (x[i] > m) m = x[i];
    }
    return m;
}

MeanVar mean_variance_scalar(const double* x, size_t n) {
    if (n == 0) return {};
    const double mean = sum_scalar(x, n) / static_cast<double>(n);
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        acc += d * d;
    }
    return {mean, acc / static_cast<double>(n)};
}

double l1_distance_scalar(const double* a, const double* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

namespace {

inline void classify_byte(unsigned char c, CharClassCounts& out) {
    if (c >= 0xC0) {
        ++out.utf8_leads;
    } else if (c >= 0x80) {
        ++out.utf8_conts;
    } else if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) {
        ++out.letters;
    } else if (c >= '0' && c <= '9') {
        ++out.digits;
    } else if (c == ' ' || (c >= 0x09 && c <= 0x0D)) {
        ++out.spaces;
    } else {
        ++out.other_ascii;
    }
}

}  // namespace

CharClassCounts count_char_classes_scalar(const char* s, size_t n) {
    CharClassCounts out;
    for (size_t i = 0; i < n; ++i) {
        classify_byte(static_cast<unsigned char>(s[i]), out);
    }
    return out;
}

}  // namespace joinscout::kernels::detail
