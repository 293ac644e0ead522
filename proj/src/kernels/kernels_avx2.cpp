#include "kernels_impl.hpp"

#if defined(JOINSCOUT_HAVE_AVX2)

#include <immintrin.h>

// Compiled with -mavx2 only (no FMA: fused multiply-add changes rounding
// and would break agreement with the scalar reference).

namespace joinscout::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

// x >= lo, unsigned bytes
inline __m256i ge_u8(__m256i x, __m256i lo) {
    return _mm256_cmpeq_epi8(_mm256_max_epu8(x, lo), x);
}

// lo <= x <= hi, unsigned bytes
inline __m256i range_u8(__m256i x, unsigned char lo, unsigned char hi) {
    const __m256i vlo = _mm256_set1_epi8(static_cast<char>(lo));
    const __m256i vhi = _mm256_set1_epi8(static_cast<char>(hi));
    const __m256i ge = ge_u8(x, vlo);
    const __m256i le = _mm256_cmpeq_epi8(_mm256_min_epu8(x, vhi), x);
    return _mm256_and_si256(ge, le);
}

inline uint64_t popcnt_mask(__m256i m) {
    return static_cast<uint64_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(m))));
}

}  // namespace

double sum_avx2(const double* x, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double min_avx2(const double* x, size_t n) {
    if (n < 4) return min_scalar(x, n);
    __m256d acc = _mm256_loadu_pd(x);
    size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    }
    double m = hmin(acc);
    for (; i < n; ++i) {
        if (x[i] < m) m = x[i];
    }
    return m;
}

double max_avx2(const double* x, size_t n) {
    if (n < 4) return max_scalar(x, n);
    __m256d acc = _mm256_loadu_pd(x);
    size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        if (x[i] > m) m = x[i];
    }
    return m;
}

MeanVar mean_variance_avx2(const double* x, size_t n) {
    if (n == 0) return {};
    const double mean = sum_avx2(x, n) / static_cast<double>(n);
    const __m256d vmean = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vmean);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double ss = hsum(acc);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        ss += d * d;
    }
    return {mean, ss / static_cast<double>(n)};
}

double l1_distance_avx2(const double* a, const double* b, size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d < 0 ? -d : d;
    }
    return total;
}

CharClassCounts count_char_classes_avx2(const char* s, size_t n) {
    CharClassCounts out;
    const __m256i space = _mm256_set1_epi8(' ');
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i x =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
        const __m256i leads = ge_u8(x, _mm256_set1_epi8(static_cast<char>(0xC0)));
        const __m256i conts = range_u8(x, 0x80, 0xBF);
        const __m256i letters =
            _mm256_or_si256(range_u8(x, 'A', 'Z'), range_u8(x, 'a', 'z'));
        const __m256i digits = range_u8(x, '0', '9');
        const __m256i spaces = _mm256_or_si256(_mm256_cmpeq_epi8(x, space),
                                               range_u8(x, 0x09, 0x0D));
        const __m256i ascii = range_u8(x, 0x00, 0x7F);
        __m256i other = _mm256_andnot_si256(letters, ascii);
        other = _mm256_andnot_si256(digits, other);
        other = _mm256_andnot_si256(spaces, other);

        out.utf8_leads += popcnt_mask(leads);
        out.utf8_conts += popcnt_mask(conts);
        out.letters += popcnt_mask(letters);
        out.digits += popcnt_mask(digits);
        out.spaces += popcnt_mask(spaces);
        out.other_ascii += popcnt_mask(other);
    }
    if (i < n) {
        const CharClassCounts tail = count_char_classes_scalar(s + i, n - i);
        out.letters += tail.letters;
        out.digits += tail.digits;
        out.spaces += tail.spaces;
        out.other_ascii += tail.other_ascii;
        out.utf8_leads += tail.utf8_leads;
        out.utf8_conts += tail.utf8_conts;
    }
    return out;
}

}  // namespace joinscout::kernels::detail

#endif  // JOINSCOUT_HAVE_AVX2
