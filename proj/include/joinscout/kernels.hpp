#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace joinscout::kernels {

// Numeric and byte-scan primitives behind the profiling and comparison
// hot loops. Every primitive has a scalar reference implementation and,
// on x86-64 with AVX2, a vector variant selected at startup. The two are
// equivalence-tested; byte counts and min/max are bit-exact, reductions
// agree to ~1e-12 relative.

enum class Backend { kScalar, kAvx2 };

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // population variance (divide by n)
};

struct CharClassCounts {
    uint64_t letters = 0;       // ASCII A-Z a-z
    uint64_t digits = 0;        // ASCII 0-9
    uint64_t spaces = 0;        // space, \t, \n, \r, \v, \f
    uint64_t other_ascii = 0;   // remaining bytes < 0x80
    uint64_t utf8_leads = 0;    // bytes >= 0xC0 (one per non-ASCII code point)
    uint64_t utf8_conts = 0;    // continuation bytes 0x80..0xBF

    bool operator==(const CharClassCounts&) const = default;
};

double sum(const double* x, size_t n);
double min(const double* x, size_t n);  // n > 0
double max(const double* x, size_t n);  // n > 0
MeanVar mean_variance(const double* x, size_t n);              // two-pass
double l1_distance(const double* a, const double* b, size_t n);
CharClassCounts count_char_classes(std::string_view s);

Backend active_backend();
const char* backend_name(Backend b);

// Returns false (and leaves the dispatch untouched) when the requested
// backend is not supported on this CPU. The JOINSCOUT_KERNELS environment
// variable ("scalar" or "avx2") picks the initial backend.
bool select_backend(Backend b);

bool cpu_supports_avx2();

}  // namespace joinscout::kernels
