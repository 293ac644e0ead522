#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testutil {

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path = base / (tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

using OptValues = std::vector<std::optional<std::string>>;

// nullptr marks a missing cell.
inline OptValues cells(std::initializer_list<const char*> vs) {
    OptValues out;
    for (const char* v : vs) {
        if (v == nullptr) {
            out.emplace_back(std::nullopt);
        } else {
            out.emplace_back(std::string(v));
        }
    }
    return out;
}

inline std::string random_word(std::mt19937_64& rng, size_t min_len = 1,
                               size_t max_len = 8) {
    std::uniform_int_distribution<size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> ch(0, 25);
    std::string w;
    const size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) {
        w.push_back(static_cast<char>('a' + ch(rng)));
    }
    return w;
}

// Lowercase words and digit runs joined by single spaces: already in
// preprocessed form, so profiling sees the values unchanged.
inline std::string random_value(std::mt19937_64& rng, size_t max_words = 4) {
    std::uniform_int_distribution<size_t> words(1, max_words);
    std::uniform_int_distribution<int> kind(0, 3);
    std::string v;
    const size_t n = words(rng);
    for (size_t i = 0; i < n; ++i) {
        if (i) v.push_back(' ');
        if (kind(rng) == 0) {
            std::uniform_int_distribution<int> num(0, 9999);
            v += std::to_string(num(rng));
        } else {
            v += random_word(rng);
        }
    }
    return v;
}

}  // namespace testutil
