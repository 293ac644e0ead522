#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "joinscout/ingest.hpp"

namespace joinscout::synth {

// Seeded generator for a small data lake with known join structure.
// Each group contributes one pair of datasets sharing an engineered
// number of distinct values, so the exact labeling spans every quality
// class with healthy margins from the class thresholds; every other
// dataset combination shares nothing. Values are globally unique per
// family outside the engineered overlaps.
struct Options {
    uint64_t seed = 7;
    size_t groups = 90;
    size_t noise_datasets = 16;
    double missing_rate = 0.03;
};

std::vector<Dataset> make_repo(const Options& opts);

// Writes every dataset as "<dir>/<name>.csv" with an extra numeric
// row_id column (ineligible on purpose).
void write_lake(const std::string& dir, const std::vector<Dataset>& repo);

// Streams a profiling workload CSV of roughly target_bytes: the given
// number of string columns plus one numeric column, with realistic value
// duplication. Deterministic for fixed arguments.
void write_profiling_csv(const std::string& path, size_t target_bytes,
                         size_t string_columns, uint64_t seed);

}  // namespace joinscout::synth
