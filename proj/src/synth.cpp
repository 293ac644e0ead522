#include "joinscout/synth.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "joinscout/csv.hpp"
#include "joinscout/store.hpp"

namespace joinscout::synth {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::array<const char*, 24> kSyllables = {
    "an", "bel", "cor", "dan", "el",  "fin", "gor",  "hal",
    "ir", "jun", "kol", "lam", "mor", "nev", "or",   "pel",
    "quin", "rav", "sol", "tor", "ul", "ven", "wil", "yar"};

enum Family { kCity = 0, kPerson, kCode, kProduct, kStreet, kFamilyCount };

constexpr std::array<std::array<const char*, 4>, kFamilyCount> kAttrNames = {{
    {"city", "town", "place", "locality"},
    {"person", "name", "customer", "author"},
    {"code", "sku", "ref", "tag"},
    {"product", "item", "article", "goods"},
    {"street", "address", "road", "location"},
}};

constexpr std::array<const char*, 12> kAdjectives = {
    "brisk", "calm", "dark", "eager", "fond",  "grand",
    "keen",  "late", "mild", "neat",  "plain", "quick"};

std::string syllable_word(uint64_t v, int syllables) {
    std::string out;
    for (int i = 0; i < syllables; ++i) {
        out += kSyllables[v % kSyllables.size()];
        v /= kSyllables.size();
    }
    return out;
}

// Distinct ids map to distinct strings within a family, and every token
// derives from the full id: unrelated datasets never accumulate shared
// word frequencies, so sketch overlap tracks actual value overlap. The
// base word interleaves families (id * kFamilyCount + family) to keep
// the word spaces disjoint; hash words collide only at ~1/24^4.
std::string make_value(int family, uint64_t id) {
    const uint64_t base =
        id * kFamilyCount + static_cast<uint64_t>(family);
    switch (family) {
        case kCity:
            return syllable_word(base, 5) + ' ' +
                   syllable_word(splitmix64(base ^ 0xc17cULL), 4);
        case kPerson:
            return syllable_word(base, 5) + ' ' +
                   syllable_word(splitmix64(base ^ 0x9e22ULL), 4) + "son";
        case kCode: {
            // Six base-26 letters cover the id range injectively; letters
            // rather than alphanumerics keep the soundex space wide. Two
            // hash digits give the tokens a code-like shape.
            std::string out;
            uint64_t v = id;
            for (int i = 0; i < 6; ++i) {
                out.push_back(static_cast<char>('a' + v % 26));
                v /= 26;
            }
            const uint64_t h = splitmix64(base ^ 0x3c0dULL);
            out.push_back(static_cast<char>('0' + h % 10));
            out.push_back(static_cast<char>('0' + (h / 10) % 10));
            return out;
        }
        case kProduct:
            return std::string(kAdjectives[id % kAdjectives.size()]) +
                   syllable_word(splitmix64(base ^ 0x04d2ULL), 3) + ' ' +
                   std::to_string(100 + id);
        case kStreet:
            return std::to_string(1 + id) + ' ' +
                   syllable_word(splitmix64(base ^ 0x57e3ULL), 4) + "st";
        default:
            throw std::logic_error("unknown family");
    }
}

// Case and accent noise; the preprocessing step folds it back, so the
// cleaned value universe is unaffected.
std::string display_noise(const std::string& value, std::mt19937_64& rng) {
    const uint64_t roll = rng();
    std::string out = value;
    if (roll % 5 == 0) {
        for (auto& c : out) {
            if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        }
    } else if (roll % 5 == 1 && !out.empty()) {
        if (out[0] >= 'a' && out[0] <= 'z') {
            out[0] = static_cast<char>(out[0] - 'a' + 'A');
        }
    }
    if (roll % 7 == 0) {
        const size_t at = out.find_first_of("aeo");
        if (at != std::string::npos) {
            const char c = out[at];
            const char* accented = c == 'a' ? "\xc3\xa1"
                                  : c == 'e' ? "\xc3\xa9"
                                             : "\xc3\xb6";
            out.replace(at, 1, accented);
        }
    }
    return out;
}

struct PatternBand {
    double c_lo, c_hi;       // engineered containment A -> B
    double prop_lo, prop_hi;  // |A| / |B|
};

// Containment/proportion bands per group pattern, chosen so that the
// labels of both pair directions sit well away from the interesting
// boundary (containment 0.5, proportion 0.125) and the none boundary
// (containment 0.1).
PatternBand pattern_band(char pattern) {
    switch (pattern) {
        case 'A': return {0.86, 0.94, 0.78, 0.95};
        case 'B': return {0.60, 0.70, 1.05, 1.30};
        case 'F': return {1.00, 1.00, 0.30, 0.40};
        case 'C': return {0.30, 0.42, 0.55, 0.90};
        case 'D': return {0.16, 0.22, 0.80, 1.00};
        case 'E': return {0.80, 0.95, 0.030, 0.050};
        default: throw std::logic_error("unknown pattern");
    }
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

struct PoolValue {
    std::string text;
    double weight = 0.0;
};

// Fresh values with a popularity weight. Values meant as the overlap of
// a dataset pair keep a uniform hash weight; the rest get its fourth
// power, biasing them toward the tail. Two sources that share values
// share the popular ones, so a table several times larger still has the
// common head at the top of its frequency ranking instead of burying it
// under its own extras.
struct ValuePool {
    std::array<uint64_t, kFamilyCount> next{};

    std::vector<PoolValue> fresh(int family, size_t count, bool popular) {
        std::vector<PoolValue> out;
        out.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            PoolValue v;
            v.text = make_value(family, next[family]++);
            const double u =
                static_cast<double>(splitmix64(fnv1a64(v.text)) >> 11) /
                static_cast<double>(1ULL << 53);
            v.weight = popular ? u : u * u * u * u;
            out.push_back(std::move(v));
        }
        return out;
    }
};

// Expands distinct values into cells with a skewed count distribution;
// weights are stable per value, so shared values keep the same relative
// popularity in both datasets of a group.
Attribute build_attribute(const std::string& name,
                          std::vector<PoolValue> values, double missing_rate,
                          std::mt19937_64& rng) {
    std::sort(values.begin(), values.end(),
              [](const PoolValue& a, const PoolValue& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.text < b.text;
              });
    // Deep enough that each of the ten most frequent words appears more
    // than once; the frequent-word sketch then never depends on how ties
    // between singleton words resolve.
    const uint64_t head = 30 + rng() % 30;
    Attribute attr;
    attr.name = name;
    for (size_t r = 0; r < values.size(); ++r) {
        const size_t count = std::max<uint64_t>(1, head / (r + 1));
        for (size_t k = 0; k < count; ++k) {
            attr.raw_values.emplace_back(display_noise(values[r].text, rng));
        }
    }
    const auto missing = static_cast<size_t>(
        missing_rate * static_cast<double>(attr.raw_values.size()));
    for (size_t i = 0; i < missing; ++i) {
        attr.raw_values.emplace_back(std::nullopt);
    }
    std::shuffle(attr.raw_values.begin(), attr.raw_values.end(), rng);
    infer_eligibility(attr);
    return attr;
}

Dataset make_dataset(const std::string& name, const std::string& attr_name,
                     std::vector<PoolValue> values, double missing_rate,
                     std::mt19937_64& rng) {
    Dataset ds;
    ds.name = name;
    ds.attributes.push_back(
        build_attribute(attr_name, std::move(values), missing_rate, rng));
    ds.row_count = ds.attributes[0].raw_values.size();
    return ds;
}

}  // namespace

std::vector<Dataset> make_repo(const Options& opts) {
    std::vector<Dataset> repo;
    repo.reserve(2 * opts.groups + opts.noise_datasets);
    ValuePool pool;
    const char* kPatternCycle = "ABFABFCDE";

    for (size_t g = 0; g < opts.groups; ++g) {
        std::mt19937_64 rng(splitmix64(opts.seed ^ (0x6a01ULL + g)));
        const int family = static_cast<int>(g % kFamilyCount);
        const char pattern = kPatternCycle[g % 9];
        const PatternBand band = pattern_band(pattern);

        const size_t na =
            pattern == 'E' ? 150 + rng() % 100 : 150 + rng() % 350;
        const double c = uniform_in(rng, band.c_lo, band.c_hi);
        const double prop = uniform_in(rng, band.prop_lo, band.prop_hi);
        const auto nb = static_cast<size_t>(std::max<long long>(
            1, std::llround(static_cast<double>(na) / prop)));
        const auto shared = static_cast<size_t>(
            std::llround(c * static_cast<double>(na)));

        std::vector<PoolValue> key = pool.fresh(family, shared, true);
        std::vector<PoolValue> a_values = key;
        for (auto& v : pool.fresh(family, na - shared, false)) {
            a_values.push_back(std::move(v));
        }
        std::vector<PoolValue> b_values = std::move(key);
        for (auto& v : pool.fresh(family, nb - shared, false)) {
            b_values.push_back(std::move(v));
        }

        const auto& names = kAttrNames[family];
        const std::string base = std::string(names[0]) + '_' +
                                 std::to_string(g);
        repo.push_back(make_dataset(base + 'a', names[rng() % names.size()],
                                    std::move(a_values), opts.missing_rate,
                                    rng));
        repo.push_back(make_dataset(base + 'b', names[rng() % names.size()],
                                    std::move(b_values), opts.missing_rate,
                                    rng));
    }
    for (size_t i = 0; i < opts.noise_datasets; ++i) {
        std::mt19937_64 rng(splitmix64(opts.seed ^ (0xb10bULL + i)));
        const int family = static_cast<int>(rng() % kFamilyCount);
        const size_t n = 30 + rng() % 1170;
        repo.push_back(make_dataset(
            "misc_" + std::to_string(i),
            kAttrNames[family][rng() % kAttrNames[family].size()],
            pool.fresh(family, n, true), opts.missing_rate, rng));
    }
    return repo;
}

void write_lake(const std::string& dir, const std::vector<Dataset>& repo) {
    std::filesystem::create_directories(dir);
    for (const auto& ds : repo) {
        csv::Table t;
        t.header.push_back("row_id");
        for (const auto& attr : ds.attributes) t.header.push_back(attr.name);
        for (size_t r = 0; r < ds.row_count; ++r) {
            std::vector<std::string> row;
            row.push_back(std::to_string(r + 1));
            for (const auto& attr : ds.attributes) {
                row.push_back(attr.raw_values[r].value_or(""));
            }
            t.rows.push_back(std::move(row));
        }
        csv::write_file(dir + "/" + ds.name + ".csv", t);
    }
}

void write_profiling_csv(const std::string& path, size_t target_bytes,
                         size_t string_columns, uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    std::string line = "row_id";
    for (size_t c = 0; c < string_columns; ++c) {
        line += ",field_" + std::to_string(c);
    }
    line += ",amount\n";
    out << line;
    size_t written = line.size();
    std::mt19937_64 rng(splitmix64(seed));
    constexpr size_t kPoolSize = 120000;
    size_t row = 0;
    while (written < target_bytes) {
        line = std::to_string(++row);
        for (size_t c = 0; c < string_columns; ++c) {
            // min of two draws skews toward frequent low ids
            const uint64_t a = rng() % kPoolSize;
            const uint64_t b = rng() % kPoolSize;
            line += ',';
            line += make_value(static_cast<int>(c % kFamilyCount),
                               std::min(a, b));
        }
        line += ',';
        line += std::to_string(rng() % 100000);
        line += '.';
        line += static_cast<char>('0' + rng() % 10);
        line += '\n';
        out << line;
        written += line.size();
    }
}

}  // namespace joinscout::synth
