#include "joinscout/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace joinscout::text {

namespace {

struct LatinEntry {
    uint16_t cp;     // code point
    uint16_t lower;  // lowercase form
    char base;       // ASCII base letter after decomposition, 0 = none
};

// Canonical decompositions for the precomposed Latin letters in
// U+00C0..U+017F. Letters without a canonical decomposition (AE, eth,
// thorn, stroked letters, ...) keep base = 0 and pass through lowercased.
constexpr LatinEntry kLatinTable[] = {
    {0x00C0, 0x00E0, 'a'}, {0x00C1, 0x00E1, 'a'}, {0x00C2, 0x00E2, 'a'},
    {0x00C3, 0x00E3, 'a'}, {0x00C4, 0x00E4, 'a'}, {0x00C5, 0x00E5, 'a'},
    {0x00C6, 0x00E6, 0},   {0x00C7, 0x00E7, 'c'}, {0x00C8, 0x00E8, 'e'},
    {0x00C9, 0x00E9, 'e'}, {0x00CA, 0x00EA, 'e'}, {0x00CB, 0x00EB, 'e'},
    {0x00CC, 0x00EC, 'i'}, {0x00CD, 0x00ED, 'i'}, {0x00CE, 0x00EE, 'i'},
    {0x00CF, 0x00EF, 'i'}, {0x00D0, 0x00F0, 0},   {0x00D1, 0x00F1, 'n'},
    {0x00D2, 0x00F2, 'o'}, {0x00D3, 0x00F3, 'o'}, {0x00D4, 0x00F4, 'o'},
    {0x00D5, 0x00F5, 'o'}, {0x00D6, 0x00F6, 'o'}, {0x00D8, 0x00F8, 0},
    {0x00D9, 0x00F9, 'u'}, {0x00DA, 0x00FA, 'u'}, {0x00DB, 0x00FB, 'u'},
    {0x00DC, 0x00FC, 'u'}, {0x00DD, 0x00FD, 'y'}, {0x00DE, 0x00FE, 0},
    {0x00DF, 0x00DF, 0},
    {0x00E0, 0x00E0, 'a'}, {0x00E1, 0x00E1, 'a'}, {0x00E2, 0x00E2, 'a'},
    {0x00E3, 0x00E3, 'a'}, {0x00E4, 0x00E4, 'a'}, {0x00E5, 0x00E5, 'a'},
    {0x00E6, 0x00E6, 0},   {0x00E7, 0x00E7, 'c'}, {0x00E8, 0x00E8, 'e'},
    {0x00E9, 0x00E9, 'e'}, {0x00EA, 0x00EA, 'e'}, {0x00EB, 0x00EB, 'e'},
    {0x00EC, 0x00EC, 'i'}, {0x00ED, 0x00ED, 'i'}, {0x00EE, 0x00EE, 'i'},
    {0x00EF, 0x00EF, 'i'}, {0x00F0, 0x00F0, 0},   {0x00F1, 0x00F1, 'n'},
    {0x00F2, 0x00F2, 'o'}, {0x00F3, 0x00F3, 'o'}, {0x00F4, 0x00F4, 'o'},
    {0x00F5, 0x00F5, 'o'}, {0x00F6, 0x00F6, 'o'}, {0x00F8, 0x00F8, 0},
    {0x00F9, 0x00F9, 'u'}, {0x00FA, 0x00FA, 'u'}, {0x00FB, 0x00FB, 'u'},
    {0x00FC, 0x00FC, 'u'}, {0x00FD, 0x00FD, 'y'}, {0x00FE, 0x00FE, 0},
    {0x00FF, 0x00FF, 'y'},
    // Latin Extended-A. Upper/lower pairs; base per canonical decomposition.
    {0x0100, 0x0101, 'a'}, {0x0101, 0x0101, 'a'}, {0x0102, 0x0103, 'a'},
    {0x0103, 0x0103, 'a'}, {0x0104, 0x0105, 'a'}, {0x0105, 0x0105, 'a'},
    {0x0106, 0x0107, 'c'}, {0x0107, 0x0107, 'c'}, {0x0108, 0x0109, 'c'},
    {0x0109, 0x0109, 'c'}, {0x010A, 0x010B, 'c'}, {0x010B, 0x010B, 'c'},
    {0x010C, 0x010D, 'c'}, {0x010D, 0x010D, 'c'}, {0x010E, 0x010F, 'd'},
    {0x010F, 0x010F, 'd'}, {0x0110, 0x0111, 0},   {0x0111, 0x0111, 0},
    {0x0112, 0x0113, 'e'}, {0x0113, 0x0113, 'e'}, {0x0114, 0x0115, 'e'},
    {0x0115, 0x0115, 'e'}, {0x0116, 0x0117, 'e'}, {0x0117, 0x0117, 'e'},
    {0x0118, 0x0119, 'e'}, {0x0119, 0x0119, 'e'}, {0x011A, 0x011B, 'e'},
    {0x011B, 0x011B, 'e'}, {0x011C, 0x011D, 'g'}, {0x011D, 0x011D, 'g'},
    {0x011E, 0x011F, 'g'}, {0x011F, 0x011F, 'g'}, {0x0120, 0x0121, 'g'},
    {0x0121, 0x0121, 'g'}, {0x0122, 0x0123, 'g'}, {0x0123, 0x0123, 'g'},
    {0x0124, 0x0125, 'h'}, {0x0125, 0x0125, 'h'}, {0x0126, 0x0127, 0},
    {0x0127, 0x0127, 0},   {0x0128, 0x0129, 'i'}, {0x0129, 0x0129, 'i'},
    {0x012A, 0x012B, 'i'}, {0x012B, 0x012B, 'i'}, {0x012C, 0x012D, 'i'},
    {0x012D, 0x012D, 'i'}, {0x012E, 0x012F, 'i'}, {0x012F, 0x012F, 'i'},
    {0x0130, 0x0069, 'i'}, {0x0131, 0x0131, 0},
    {0x0134, 0x0135, 'j'}, {0x0135, 0x0135, 'j'}, {0x0136, 0x0137, 'k'},
    {0x0137, 0x0137, 'k'}, {0x0139, 0x013A, 'l'}, {0x013A, 0x013A, 'l'},
    {0x013B, 0x013C, 'l'}, {0x013C, 0x013C, 'l'}, {0x013D, 0x013E, 'l'},
    {0x013E, 0x013E, 'l'}, {0x0141, 0x0142, 0},   {0x0142, 0x0142, 0},
    {0x0143, 0x0144, 'n'}, {0x0144, 0x0144, 'n'}, {0x0145, 0x0146, 'n'},
    {0x0146, 0x0146, 'n'}, {0x0147, 0x0148, 'n'}, {0x0148, 0x0148, 'n'},
    {0x014C, 0x014D, 'o'}, {0x014D, 0x014D, 'o'}, {0x014E, 0x014F, 'o'},
    {0x014F, 0x014F, 'o'}, {0x0150, 0x0151, 'o'}, {0x0151, 0x0151, 'o'},
    {0x0152, 0x0153, 0},   {0x0153, 0x0153, 0},   {0x0154, 0x0155, 'r'},
    {0x0155, 0x0155, 'r'}, {0x0156, 0x0157, 'r'}, {0x0157, 0x0157, 'r'},
    {0x0158, 0x0159, 'r'}, {0x0159, 0x0159, 'r'}, {0x015A, 0x015B, 's'},
    {0x015B, 0x015B, 's'}, {0x015C, 0x015D, 's'}, {0x015D, 0x015D, 's'},
    {0x015E, 0x015F, 's'}, {0x015F, 0x015F, 's'}, {0x0160, 0x0161, 's'},
    {0x0161, 0x0161, 's'}, {0x0162, 0x0163, 't'}, {0x0163, 0x0163, 't'},
    {0x0164, 0x0165, 't'}, {0x0165, 0x0165, 't'}, {0x0166, 0x0167, 0},
    {0x0167, 0x0167, 0},   {0x0168, 0x0169, 'u'}, {0x0169, 0x0169, 'u'},
    {0x016A, 0x016B, 'u'}, {0x016B, 0x016B, 'u'}, {0x016C, 0x016D, 'u'},
    {0x016D, 0x016D, 'u'}, {0x016E, 0x016F, 'u'}, {0x016F, 0x016F, 'u'},
    {0x0170, 0x0171, 'u'}, {0x0171, 0x0171, 'u'}, {0x0172, 0x0173, 'u'},
    {0x0173, 0x0173, 'u'}, {0x0174, 0x0175, 'w'}, {0x0175, 0x0175, 'w'},
    {0x0176, 0x0177, 'y'}, {0x0177, 0x0177, 'y'}, {0x0178, 0x00FF, 'y'},
    {0x0179, 0x017A, 'z'}, {0x017A, 0x017A, 'z'}, {0x017B, 0x017C, 'z'},
    {0x017C, 0x017C, 'z'}, {0x017D, 0x017E, 'z'}, {0x017E, 0x017E, 'z'},
};

const LatinEntry* latin_lookup(uint32_t cp) {
    if (cp < 0x00C0 || cp > 0x017E) return nullptr;
    auto it = std::lower_bound(std::begin(kLatinTable), std::end(kLatinTable), cp,
                               [](const LatinEntry& e, uint32_t c) { return e.cp < c; });
    if (it != std::end(kLatinTable) && it->cp == cp) return &*it;
    return nullptr;
}

bool is_combining_mark(uint32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

bool is_ascii_space(uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

// Punctuation / symbol blocks above ASCII that should be dropped like the
// ASCII specials. Anything else non-ASCII is data and passes through.
bool is_known_symbol(uint32_t cp) {
    if (cp == 0x00A0) return false;  // NBSP handled as whitespace below
    if (cp >= 0x00A1 && cp <= 0x00BF) return true;   // Latin-1 punctuation
    if (cp == 0x00D7 || cp == 0x00F7) return true;   // multiplication/division
    if (cp >= 0x2000 && cp <= 0x206F) return true;   // general punctuation
    if (cp >= 0x20A0 && cp <= 0x20CF) return true;   // currency symbols
    if (cp >= 0x2100 && cp <= 0x2BFF) return true;   // arrows, math, symbols
    if (cp >= 0x3000 && cp <= 0x303F) return true;   // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE4F) return true;
    if (cp >= 0xFF01 && cp <= 0xFF0F) return true;
    return false;
}

}  // namespace

uint32_t decode_utf8(std::string_view s, size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    size_t len = 0;
    uint32_t cp = 0;
    uint32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min_cp = 0x10000;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range values are malformed:
    // accepting them would smuggle bytes past the single-byte rules above.
    if (cp < min_cp || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        ++i;
        return 0xFFFD;
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

size_t codepoint_count(std::string_view s) {
    size_t i = 0, n = 0;
    while (i < s.size()) {
        decode_utf8(s, i);
        ++n;
    }
    return n;
}

std::string preprocess_value(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    size_t i = 0;
    while (i < raw.size()) {
        const auto b = static_cast<unsigned char>(raw[i]);
        if (b < 0x80) {
            // ASCII fast path
            if (b >= 'A' && b <= 'Z') {
                out.push_back(static_cast<char>(b - 'A' + 'a'));
            } else if ((b >= 'a' && b <= 'z') || (b >= '0' && b <= '9') || is_ascii_space(b)) {
                out.push_back(static_cast<char>(b));
            }
            ++i;
            continue;
        }
        const uint32_t cp = decode_utf8(raw, i);
        if (cp == 0xFFFD || is_combining_mark(cp)) continue;
        if (cp == 0x00A0) {
            out.push_back(' ');
            continue;
        }
        if (const LatinEntry* e = latin_lookup(cp)) {
            if (e->base != 0) {
                out.push_back(e->base);
            } else {
                append_utf8(out, e->lower);
            }
            continue;
        }
        if (is_known_symbol(cp)) continue;
        append_utf8(out, cp);
    }
    return out;
}

std::vector<std::string> preprocess_values(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& v : raw) out.push_back(preprocess_value(v));
    return out;
}

std::vector<std::string_view> split_words(std::string_view value) {
    std::vector<std::string_view> words;
    size_t i = 0;
    while (i < value.size()) {
        while (i < value.size() && is_ascii_space(static_cast<unsigned char>(value[i]))) ++i;
        const size_t start = i;
        while (i < value.size() && !is_ascii_space(static_cast<unsigned char>(value[i]))) ++i;
        if (i > start) words.push_back(value.substr(start, i - start));
    }
    return words;
}

size_t word_count(std::string_view value) {
    size_t i = 0, n = 0;
    while (i < value.size()) {
        while (i < value.size() && is_ascii_space(static_cast<unsigned char>(value[i]))) ++i;
        if (i < value.size()) ++n;
        while (i < value.size() && !is_ascii_space(static_cast<unsigned char>(value[i]))) ++i;
    }
    return n;
}

std::string soundex(std::string_view word) {
    // Consonant classes; 0 = h/w (transparent), 7 = vowel (separator).
    static constexpr std::array<char, 26> kClass = {
        7, 1, 2, 3, 7, 1, 2, 0, 7, 2, 2, 4, 5,   // a..m
        5, 7, 1, 2, 6, 2, 3, 7, 1, 0, 2, 7, 2};  // n..z
    std::string code;
    char prev = -1;
    for (const char c : word) {
        char lower;
        if (c >= 'a' && c <= 'z')
            lower = c;
        else if (c >= 'A' && c <= 'Z')
            lower = static_cast<char>(c - 'A' + 'a');
        else
            continue;  // digits, accents and symbols do not code
        const char cls = kClass[static_cast<size_t>(lower - 'a')];
        if (code.empty()) {
            code.push_back(static_cast<char>(lower - 'a' + 'A'));
            prev = cls;
            continue;
        }
        if (cls == 7) {
            prev = -1;  // vowels separate duplicates
            continue;
        }
        if (cls == 0) continue;  // h/w keep the previous class alive
        if (cls != prev) {
            if (code.size() < 4) code.push_back(static_cast<char>('0' + cls));
            prev = cls;
        }
    }
    if (code.empty()) return code;
    while (code.size() < 4) code.push_back('0');
    return code;
}

size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    const size_t n = b.size();
    std::vector<size_t> row(n + 1);
    for (size_t j = 0; j <= n; ++j) row[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        size_t diag = row[0];
        row[0] = i;
        for (size_t j = 1; j <= n; ++j) {
            const size_t saved = row[j];
            if (a[i - 1] == b[j - 1]) {
                row[j] = diag;
            } else {
                row[j] = 1 + std::min({row[j - 1], row[j], diag});
            }
            diag = saved;
        }
    }
    return row[n];
}

double name_distance(std::string_view a, std::string_view b) {
    const size_t m = std::max(a.size(), b.size());
    if (m == 0) return 0.0;
    return static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace joinscout::text
