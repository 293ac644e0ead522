#include <filesystem>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "joinscout/csv.hpp"
#include "joinscout/oracle.hpp"
#include "joinscout/synth.hpp"

using namespace joinscout;

TEST_SUITE("synth") {

TEST_CASE("generation is deterministic in the seed") {
    synth::Options opts;
    opts.seed = 33;
    opts.groups = 6;
    opts.noise_datasets = 2;
    const auto r1 = synth::make_repo(opts);
    const auto r2 = synth::make_repo(opts);
    REQUIRE(r1.size() == r2.size());
    for (size_t d = 0; d < r1.size(); ++d) {
        CHECK(r1[d].name == r2[d].name);
        CHECK(r1[d].row_count == r2[d].row_count);
        REQUIRE(r1[d].attributes.size() == r2[d].attributes.size());
        for (size_t a = 0; a < r1[d].attributes.size(); ++a) {
            CHECK(r1[d].attributes[a].raw_values ==
                  r2[d].attributes[a].raw_values);
        }
    }

    opts.seed = 34;
    const auto r3 = synth::make_repo(opts);
    bool differs = r3.size() != r1.size();
    for (size_t d = 0; !differs && d < r1.size(); ++d) {
        if (r1[d].attributes.front().raw_values !=
            r3[d].attributes.front().raw_values) {
            differs = true;
        }
    }
    CHECK(differs);
}

TEST_CASE("dataset names are unique and rows are consistent") {
    synth::Options opts;
    opts.seed = 35;
    opts.groups = 8;
    opts.noise_datasets = 3;
    const auto repo = synth::make_repo(opts);
    CHECK(repo.size() >= opts.groups * 2 + opts.noise_datasets);
    std::set<std::string> names;
    for (const auto& ds : repo) {
        CHECK(names.insert(ds.name).second);
        CHECK(ds.row_count > 0);
        REQUIRE(!ds.attributes.empty());
        bool any_eligible = false;
        for (const auto& attr : ds.attributes) {
            CHECK(attr.raw_values.size() == ds.row_count);
            any_eligible = any_eligible || attr.eligible;
        }
        CHECK(any_eligible);
    }
}

TEST_CASE("exact labels cover every quality class") {
    synth::Options opts;
    opts.seed = 36;
    opts.groups = 18;
    opts.noise_datasets = 4;
    const auto repo = synth::make_repo(opts);
    const auto corpus = label_corpus(repo);
    CHECK(corpus.size() >=
          repo.size() * (repo.size() - 1) / 2);  // at least one attr each
    std::map<int, size_t> by_label;
    for (const auto& lp : corpus) ++by_label[lp.label];
    for (int c = 0; c < 5; ++c) {
        INFO("class " << c);
        CHECK(by_label[c] > 0);
    }
    // the no-join class dominates, as in a real lake
    CHECK(by_label[0] > corpus.size() / 2);
}

TEST_CASE("lake files land on disk and parse back") {
    synth::Options opts;
    opts.seed = 37;
    opts.groups = 3;
    opts.noise_datasets = 1;
    const auto repo = synth::make_repo(opts);
    testutil::TempDir dir("lake");
    synth::write_lake(dir.path.string(), repo);
    for (const auto& ds : repo) {
        const auto path = dir.file(ds.name + ".csv");
        REQUIRE(std::filesystem::exists(path));
        const auto table = csv::read_file(path);
        CHECK(table.rows.size() == ds.row_count);
        // one extra numeric row_id column
        CHECK(table.header.size() == ds.attributes.size() + 1);
        CHECK(table.header.front() == "row_id");
    }
}

TEST_CASE("profiling workload hits its size target") {
    testutil::TempDir dir("workload");
    const auto path = dir.file("load.csv");
    const size_t target = 2 * 1024 * 1024;
    synth::write_profiling_csv(path, target, 4, 41);
    const auto size = std::filesystem::file_size(path);
    CHECK(size >= target);
    CHECK(size <= target + target / 4);
    const auto table = csv::read_file(path);
    // row_id + four string fields + one numeric column
    CHECK(table.header.size() == 6);
    CHECK(table.rows.size() > 1000);

    const auto again = dir.file("load2.csv");
    synth::write_profiling_csv(again, target, 4, 41);
    CHECK(std::filesystem::file_size(again) == size);
}

}  // TEST_SUITE
