#pragma once

#include "joinscout/kernels.hpp"

// Per-variant entry points. The scalar set always exists; the AVX2 set is
// compiled only when JOINSCOUT_HAVE_AVX2 is defined for this build.

namespace joinscout::kernels::detail {

double sum_scalar(const double* x, size_t n);
double min_scalar(const double* x, size_t n);
double max_scalar(const double* x, size_t n);
MeanVar mean_variance_scalar(const double* x, size_t n);
double l1_distance_scalar(const double* a, const double* b, size_t n);
CharClassCounts count_char_classes_scalar(const char* s, size_t n);

#if defined(JOINSCOUT_HAVE_AVX2)
double sum_avx2(const double* x, size_t n);
double min_avx2(const double* x, size_t n);
double max_avx2(const double* x, size_t n);
MeanVar mean_variance_avx2(const double* x, size_t n);
double l1_distance_avx2(const double* a, const double* b, size_t n);
CharClassCounts count_char_classes_avx2(const char* s, size_t n);
#endif

}  // namespace joinscout::kernels::detail
