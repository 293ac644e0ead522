#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "joinscout/oracle.hpp"

using namespace joinscout;
using testutil::cells;

namespace {

ValueSet ids(size_t start, size_t count) {
    ValueSet out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%08zu", start + i);
        out.emplace_back(buf);
    }
    return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("value sets deduplicate and sort") {
    const auto set =
        build_value_set(cells({"b", "a", nullptr, "b", "c", "a"}));
    REQUIRE(set.size() == 3);
    CHECK(set[0] == "a");
    CHECK(set[2] == "c");
}

TEST_CASE("containment") {
    const ValueSet a = {"france", "mexico", "spain", "uk", "usa"};
    const ValueSet b = {"france", "germany", "mexico", "spain", "usa"};
    CHECK(containment(a, b) == doctest::Approx(0.8));
    CHECK(containment(a, a) == doctest::Approx(1.0));
    CHECK(containment(ValueSet{"x"}, ValueSet{"y"}) == 0.0);
    CHECK_THROWS_AS(containment({}, b), std::runtime_error);
}

TEST_CASE("jaccard") {
    const ValueSet a = {"a", "b", "c", "d", "e"};
    ValueSet b = {"a"};
    CHECK(jaccard(a, b) == doctest::Approx(0.2));
    CHECK(jaccard(a, a) == doctest::Approx(1.0));
    CHECK(jaccard(ValueSet{"x"}, ValueSet{"y"}) == 0.0);
    CHECK(jaccard(a, b) == jaccard(b, a));
    CHECK_THROWS_AS(jaccard({}, {}), std::runtime_error);
}

TEST_CASE("jaccard bounded by both containments") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<int> v(0, 30);
    for (int it = 0; it < 100; ++it) {
        ValueSet a, b;
        for (int i = 0; i < 12; ++i) a.push_back(std::to_string(v(rng)));
        for (int i = 0; i < 12; ++i) b.push_back(std::to_string(v(rng)));
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        CHECK(jaccard(a, b) <= containment(a, b) + 1e-12);
        CHECK(jaccard(a, b) <= containment(b, a) + 1e-12);
    }
}

TEST_CASE("published threshold grid") {
    // containment 0.8 at proportion 8124/54500 -> good
    {
        const size_t na = 8124, nb = 54500;
        const auto shared = static_cast<size_t>(0.8 * na + 0.5);
        ValueSet a = ids(0, na);
        ValueSet b = ids(0, shared);
        const auto fresh = ids(90000000 - (nb - shared), nb - shared);
        b.insert(b.end(), fresh.begin(), fresh.end());
        std::sort(b.begin(), b.end());
        CHECK(containment(a, b) == doctest::Approx(0.8).epsilon(1e-3));
        CHECK(quality_label(a, b) == QualityClass::kGood);
    }
    // containment 0.95 at proportion 8124/982921 -> poor
    {
        const size_t na = 8124, nb = 982921;
        const auto shared = static_cast<size_t>(0.95 * na + 0.5);
        ValueSet a = ids(0, na);
        ValueSet b = ids(0, shared);
        const auto fresh = ids(90000000 - (nb - shared), nb - shared);
        b.insert(b.end(), fresh.begin(), fresh.end());
        std::sort(b.begin(), b.end());
        CHECK(containment(a, b) == doctest::Approx(0.95).epsilon(1e-3));
        CHECK(quality_label(a, b) == QualityClass::kPoor);
    }
}

TEST_CASE("small reference against a huge candidate stays poor") {
    ValueSet a = {"action", "comedy", "drama"};
    ValueSet b = ids(0, 99998);
    b.push_back("action");
    b.push_back("comedy");
    std::sort(b.begin(), b.end());
    CHECK(containment(a, b) == doctest::Approx(2.0 / 3.0));
    const auto label = quality_label(a, b);
    CHECK(label == QualityClass::kPoor);
    CHECK(static_cast<int>(label) < 2);
}

TEST_CASE("proportion constraint waived when the reference is larger") {
    // |A| = 100 >= |B| = 10, perfect overlap of B's values in A's head
    ValueSet a = ids(0, 100);
    ValueSet b = ids(0, 10);
    // C(A,B) = 10/100 = 0.1 -> poor either way
    CHECK(quality_label(a, b) == QualityClass::kPoor);
    // reverse: C(B,A) = 1.0 but proportion 10/100 < K_H, K_G; >= K_M
    CHECK(quality_label(b, a) == QualityClass::kModerate);
}

TEST_CASE("class ladder at fixed proportion") {
    // equal cardinalities waive the proportion rule entirely
    const size_t n = 1000;
    auto with_shared = [&](size_t shared) {
        ValueSet a = ids(0, n);
        ValueSet b = ids(0, shared);
        const auto fresh = ids(5000000, n - shared);
        b.insert(b.end(), fresh.begin(), fresh.end());
        std::sort(b.begin(), b.end());
        return quality_label(a, b);
    };
    CHECK(with_shared(800) == QualityClass::kHigh);
    CHECK(with_shared(600) == QualityClass::kGood);
    CHECK(with_shared(300) == QualityClass::kModerate);
    CHECK(with_shared(150) == QualityClass::kPoor);
    CHECK(with_shared(50) == QualityClass::kNone);
}

TEST_CASE("monotone in added shared values") {
    std::mt19937_64 rng(89);
    for (int it = 0; it < 40; ++it) {
        std::uniform_int_distribution<size_t> size(5, 60);
        const size_t na = size(rng);
        const size_t nb = size(rng);
        std::uniform_int_distribution<size_t> sh(0, std::min(na, nb));
        size_t s1 = sh(rng);
        size_t s2 = sh(rng);
        if (s1 > s2) std::swap(s1, s2);
        auto make_b = [&](size_t shared) {
            ValueSet b = ids(0, shared);
            const auto fresh = ids(7000000, nb - shared);
            b.insert(b.end(), fresh.begin(), fresh.end());
            std::sort(b.begin(), b.end());
            return b;
        };
        const ValueSet a = ids(0, na);
        CHECK(static_cast<int>(quality_label(a, make_b(s2))) >=
              static_cast<int>(quality_label(a, make_b(s1))));
    }
}

TEST_CASE("growing the candidate with junk never raises the class") {
    const ValueSet a = ids(0, 50);
    ValueSet b = ids(0, 40);
    int prev = static_cast<int>(quality_label(a, b));
    for (int step = 0; step < 6; ++step) {
        const auto junk = ids(8000000 + 1000 * static_cast<size_t>(step), 200);
        b.insert(b.end(), junk.begin(), junk.end());
        std::sort(b.begin(), b.end());
        const int cur = static_cast<int>(quality_label(a, b));
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("toy repo labeling") {
    Dataset d1;
    d1.name = "countries";
    d1.row_count = 5;
    Attribute c1;
    c1.name = "Country";
    c1.raw_values =
        cells({"Mexico", "France", "Spain", "England", "USA"});
    d1.attributes = {c1};

    Dataset d2;
    d2.name = "clients";
    d2.row_count = 4;
    Attribute c2;
    c2.name = "X";
    c2.raw_values = cells({"Mexico", "France", "Spain", "USA"});
    d2.attributes = {c2};

    for (auto& a : d1.attributes) infer_eligibility(a);
    for (auto& a : d2.attributes) infer_eligibility(a);

    const auto corpus = label_corpus({d1, d2});
    REQUIRE(corpus.size() == 2);
    // (Country, X): C = 4/5, |A|/|B| = 5/4 >= 1 waives proportion -> high
    CHECK(corpus[0].dataset_a == "countries");
    CHECK(corpus[0].label == 4);
    CHECK(corpus[0].containment == doctest::Approx(0.8));
    CHECK(corpus[0].proportion == doctest::Approx(1.25));
    // (X, Country): C = 1.0, proportion 4/5 over every K -> high
    CHECK(corpus[1].label == 4);
}

TEST_CASE("single dataset yields no pairs") {
    Dataset d;
    d.name = "solo";
    d.row_count = 2;
    Attribute a;
    a.name = "x";
    a.raw_values = cells({"p", "q"});
    d.attributes = {a};
    for (auto& attr : d.attributes) infer_eligibility(attr);
    CHECK(label_corpus({d}).empty());
}

TEST_CASE("corpus file round-trip") {
    testutil::TempDir dir("corpus");
    std::mt19937_64 rng(97);
    std::vector<LabeledPair> corpus;
    std::uniform_real_distribution<double> val(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        LabeledPair lp;
        lp.dataset_a = "d" + std::to_string(i % 3);
        lp.attr_a = "a,with comma";
        lp.dataset_b = "e" + std::to_string(i % 5);
        lp.attr_b = "b\"quoted\"";
        lp.containment = val(rng);
        lp.proportion = val(rng) * 3.0;
        lp.label = i % 5;
        for (auto& x : lp.features.values) x = val(rng) * 10.0 - 5.0;
        corpus.push_back(std::move(lp));
    }
    const auto path = dir.file("corpus.csv");
    write_corpus(path, corpus);
    const auto back = read_corpus(path);
    REQUIRE(back.size() == corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(back[i].dataset_a == corpus[i].dataset_a);
        CHECK(back[i].attr_a == corpus[i].attr_a);
        CHECK(back[i].dataset_b == corpus[i].dataset_b);
        CHECK(back[i].attr_b == corpus[i].attr_b);
        CHECK(back[i].containment == corpus[i].containment);
        CHECK(back[i].proportion == corpus[i].proportion);
        CHECK(back[i].label == corpus[i].label);
        for (size_t f = 0; f < kFeatureCount; ++f) {
            CHECK(back[i].features.values[f] == corpus[i].features.values[f]);
        }
    }
}

TEST_CASE("corpus with wrong width is rejected") {
    testutil::TempDir dir("badcorpus");
    const auto path = dir.file("bad.csv");
    {
        std::ofstream out(path);
        out << "a,b,c\n1,2,3\n";
    }
    CHECK_THROWS_AS(read_corpus(path), std::runtime_error);
}

}  // TEST_SUITE
