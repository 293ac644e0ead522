#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "joinscout/kernels.hpp"

using namespace joinscout;

namespace {

struct NaiveStats {
    double sum = 0.0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

NaiveStats naive_stats(const std::vector<double>& xs) {
    NaiveStats s;
    s.min = xs[0];
    s.max = xs[0];
    for (const double x : xs) {
        s.sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = s.sum / static_cast<double>(xs.size());
    for (const double x : xs) {
        s.variance += (x - s.mean) * (x - s.mean);
    }
    s.variance /= static_cast<double>(xs.size());
    return s;
}

kernels::CharClassCounts naive_classes(const std::string& s) {
    kernels::CharClassCounts c;
    for (const char ch : s) {
        const auto b = static_cast<unsigned char>(ch);
        if (b >= 0xC0) {
            ++c.utf8_leads;
        } else if (b >= 0x80) {
            ++c.utf8_conts;
        } else if ((b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z')) {
            ++c.letters;
        } else if (b >= '0' && b <= '9') {
            ++c.digits;
        } else if (b == ' ' || (b >= 0x09 && b <= 0x0D)) {
            ++c.spaces;
        } else {
            ++c.other_ascii;
        }
    }
    return c;
}

// Non-negative, like every production input (counts, ratios, lengths);
// reordering error then stays within a few ulps of the result itself.
std::vector<double> random_doubles(std::mt19937_64& rng, size_t n) {
    std::uniform_real_distribution<double> val(0.0, 1e6);
    std::vector<double> xs(n);
    for (auto& x : xs) x = val(rng);
    return xs;
}

void check_backend_against_naive() {
    std::mt19937_64 rng(23);
    for (const size_t n :
         {size_t{1}, size_t{2}, size_t{3}, size_t{4}, size_t{5}, size_t{7},
          size_t{8}, size_t{31}, size_t{32}, size_t{33}, size_t{100},
          size_t{1000}, size_t{1023}}) {
        const auto xs = random_doubles(rng, n);
        const auto expect = naive_stats(xs);
        const double tol = 1e-12 * std::max(1.0, std::fabs(expect.sum));
        CHECK(std::fabs(kernels::sum(xs.data(), n) - expect.sum) <= tol);
        CHECK(kernels::min(xs.data(), n) == expect.min);
        CHECK(kernels::max(xs.data(), n) == expect.max);
        const auto mv = kernels::mean_variance(xs.data(), n);
        CHECK(std::fabs(mv.mean - expect.mean) <=
              1e-12 * std::max(1.0, std::fabs(expect.mean)));
        CHECK(std::fabs(mv.variance - expect.variance) <=
              1e-9 * std::max(1.0, expect.variance));

        const auto ys = random_doubles(rng, n);
        double l1 = 0.0;
        for (size_t i = 0; i < n; ++i) l1 += std::fabs(xs[i] - ys[i]);
        CHECK(std::fabs(kernels::l1_distance(xs.data(), ys.data(), n) - l1) <=
              1e-12 * std::max(1.0, l1));
    }
    CHECK(kernels::sum(nullptr, 0) == 0.0);

    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<size_t> len(0, 200);
    for (int it = 0; it < 200; ++it) {
        std::string s;
        const size_t n = len(rng);
        for (size_t i = 0; i < n; ++i) {
            s.push_back(static_cast<char>(byte(rng)));
        }
        CHECK(kernels::count_char_classes(s) == naive_classes(s));
    }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend matches naive loops") {
    REQUIRE(kernels::select_backend(kernels::Backend::kScalar));
    CHECK(kernels::active_backend() == kernels::Backend::kScalar);
    check_backend_against_naive();
}

TEST_CASE("vector backend matches naive loops") {
    if (!kernels::select_backend(kernels::Backend::kAvx2)) {
        MESSAGE("avx2 backend unavailable, skipping");
        return;
    }
    CHECK(kernels::active_backend() == kernels::Backend::kAvx2);
    check_backend_against_naive();
    kernels::select_backend(kernels::Backend::kScalar);
}

TEST_CASE("backends agree on identical data") {
    if (!kernels::select_backend(kernels::Backend::kAvx2)) {
        MESSAGE("avx2 backend unavailable, skipping");
        return;
    }
    std::mt19937_64 rng(99);
    for (int it = 0; it < 50; ++it) {
        std::uniform_int_distribution<size_t> pick(1, 600);
        const size_t n = pick(rng);
        const auto xs = random_doubles(rng, n);
        const auto ys = random_doubles(rng, n);

        REQUIRE(kernels::select_backend(kernels::Backend::kAvx2));
        const double vsum = kernels::sum(xs.data(), n);
        const double vmin = kernels::min(xs.data(), n);
        const double vmax = kernels::max(xs.data(), n);
        const auto vmv = kernels::mean_variance(xs.data(), n);
        const double vl1 = kernels::l1_distance(xs.data(), ys.data(), n);

        REQUIRE(kernels::select_backend(kernels::Backend::kScalar));
        const double ssum = kernels::sum(xs.data(), n);
        CHECK(kernels::min(xs.data(), n) == vmin);
        CHECK(kernels::max(xs.data(), n) == vmax);
        const auto smv = kernels::mean_variance(xs.data(), n);
        const double sl1 = kernels::l1_distance(xs.data(), ys.data(), n);

        CHECK(std::fabs(vsum - ssum) <= 1e-12 * std::max(1.0, std::fabs(ssum)));
        CHECK(std::fabs(vmv.mean - smv.mean) <=
              1e-12 * std::max(1.0, std::fabs(smv.mean)));
        CHECK(std::fabs(vmv.variance - smv.variance) <=
              1e-9 * std::max(1.0, smv.variance));
        CHECK(std::fabs(vl1 - sl1) <= 1e-12 * std::max(1.0, sl1));
    }

    std::uniform_int_distribution<int> byte(0, 255);
    for (int it = 0; it < 100; ++it) {
        std::uniform_int_distribution<size_t> len(0, 300);
        std::string s;
        const size_t n = len(rng);
        for (size_t i = 0; i < n; ++i) {
            s.push_back(static_cast<char>(byte(rng)));
        }
        REQUIRE(kernels::select_backend(kernels::Backend::kAvx2));
        const auto vc = kernels::count_char_classes(s);
        REQUIRE(kernels::select_backend(kernels::Backend::kScalar));
        CHECK(vc == kernels::count_char_classes(s));
    }
}

TEST_CASE("mixed-sign sums stay within magnitude-scaled error") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> val(-1e6, 1e6);
    for (const auto backend :
         {kernels::Backend::kScalar, kernels::Backend::kAvx2}) {
        if (!kernels::select_backend(backend)) continue;
        for (int it = 0; it < 30; ++it) {
            std::uniform_int_distribution<size_t> pick(1, 500);
            const size_t n = pick(rng);
            std::vector<double> xs(n);
            double expect = 0.0;
            double magnitude = 0.0;
            for (auto& x : xs) {
                x = val(rng);
                expect += x;
                magnitude += std::fabs(x);
            }
            CHECK(std::fabs(kernels::sum(xs.data(), n) - expect) <=
                  1e-12 * std::max(1.0, magnitude));
        }
    }
    kernels::select_backend(kernels::Backend::kScalar);
}

TEST_CASE("backend names") {
    CHECK(std::string(kernels::backend_name(kernels::Backend::kScalar)) ==
          "scalar");
    CHECK(std::string(kernels::backend_name(kernels::Backend::kAvx2)) ==
          "avx2");
}

}  // TEST_SUITE
