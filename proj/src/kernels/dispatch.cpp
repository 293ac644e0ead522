#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace joinscout::kernels {

namespace {

using SumFn = double (*)(const double*, size_t);
using MinMaxFn = double (*)(const double*, size_t);
using MeanVarFn = MeanVar (*)(const double*, size_t);
using L1Fn = double (*)(const double*, const double*, size_t);
using CharClassFn = CharClassCounts (*)(const char*, size_t);

SumFn sum_fn = detail::sum_scalar;
MinMaxFn min_fn = detail::min_scalar;
MinMaxFn max_fn = detail::max_scalar;
MeanVarFn mean_variance_fn = detail::mean_variance_scalar;
L1Fn l1_fn = detail::l1_distance_scalar;
CharClassFn char_class_fn = detail::count_char_classes_scalar;

Backend current = Backend::kScalar;

void bind_scalar() {
    sum_fn = detail::sum_scalar;
    min_fn = detail::min_scalar;
    max_fn = detail::max_scalar;
    mean_variance_fn = detail::mean_variance_scalar;
    l1_fn = detail::l1_distance_scalar;
    char_class_fn = detail::count_char_classes_scalar;
    current = Backend::kScalar;
}

#if defined(JOINSCOUT_HAVE_AVX2)
void bind_avx2() {
    sum_fn = detail::sum_avx2;
    min_fn = detail::min_avx2;
    max_fn = detail::max_avx2;
    mean_variance_fn = detail::mean_variance_avx2;
    l1_fn = detail::l1_distance_avx2;
    char_class_fn = detail::count_char_classes_avx2;
    current = Backend::kAvx2;
}
#endif

std::once_flag init_flag;

void init_dispatch() {
    Backend wanted = cpu_supports_avx2() ? Backend::kAvx2 : Backend::kScalar;
    if (const char* env = std::getenv("JOINSCOUT_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) wanted = Backend::kScalar;
        if (std::strcmp(env, "avx2") == 0) wanted = Backend::kAvx2;
    }
    if (wanted == Backend::kAvx2 && cpu_supports_avx2()) {
#if defined(JOINSCOUT_HAVE_AVX2)
        bind_avx2();
        return;
#endif
    }
    bind_scalar();
}

void ensure_init() { std::call_once(init_flag, init_dispatch); }

}  // namespace

bool cpu_supports_avx2() {
#if defined(JOINSCOUT_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() {
    ensure_init();
    return current;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::kScalar: return "scalar";
        case Backend::kAvx2: return "avx2";
    }
    return "unknown";
}

bool select_backend(Backend b) {
    ensure_init();
    if (b == Backend::kScalar) {
        bind_scalar();
        return true;
    }
#if defined(JOINSCOUT_HAVE_AVX2)
    if (b == Backend::kAvx2 && cpu_supports_avx2()) {
        bind_avx2();
        return true;
    }
#endif
    return false;
}

double sum(const double* x, size_t n) {
    ensure_init();
    return sum_fn(x, n);
}

double min(const double* x, size_t n) {
    ensure_init();
    return min_fn(x, n);
}

double max(const double* x, size_t n) {
    ensure_init();
    return max_fn(x, n);
}

MeanVar mean_variance(const double* x, size_t n) {
    ensure_init();
    return mean_variance_fn(x, n);
}

double l1_distance(const double* a, const double* b, size_t n) {
    ensure_init();
    return l1_fn(a, b, n);
}

CharClassCounts count_char_classes(std::string_view s) {
    ensure_init();
    return char_class_fn(s.data(), s.size());
}

}  // namespace joinscout::kernels
