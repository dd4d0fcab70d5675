/*
 * Copyright 2026 the lexret authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "lexret/unicode.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

#include "lexret/errors.hpp"

namespace lexret::unicode {
namespace {

struct CpRange {
    char32_t lo;
    char32_t hi;
};

struct CpPair {
    char32_t cp;
    char32_t lower;
};

struct CpSeq {
    char32_t cp;
    uint8_t len;
    char32_t seq[3];
};

struct NfdEntry {
    char32_t cp;
    uint16_t offset;
    uint16_t len;
};

#include "unicode_tables.inc"

template <size_t N>
bool in_ranges(const CpRange (&table)[N], char32_t cp) {
    auto it = std::upper_bound(std::begin(table), std::end(table), cp,
                               [](char32_t c, const CpRange& r) { return c < r.lo; });
    return it != std::begin(table) && cp <= std::prev(it)->hi;
}

// Hangul syllable decomposition constants (Unicode ch. 3.12).
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr uint32_t kHangulVCount = 21;
constexpr uint32_t kHangulTCount = 28;
constexpr uint32_t kHangulSCount = 11172;

}  // namespace

char32_t decode_utf8(std::string_view s, size_t& i) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    auto fail = [&]() -> void {
        throw data_error("invalid UTF-8 byte sequence at offset " + std::to_string(i));
    };
    unsigned char b = p[i];
    if (b < 0x80) {
        ++i;
        return b;
    }
    int len;
    char32_t cp;
    if ((b & 0xE0) == 0xC0) {
        len = 2;
        cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
        len = 3;
        cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
        len = 4;
        cp = b & 0x07;
    } else {
        fail();
        return 0;
    }
    if (i + static_cast<size_t>(len) > s.size()) fail();
    for (int j = 1; j < len; ++j) {
        unsigned char c = p[i + static_cast<size_t>(j)];
        if ((c & 0xC0) != 0x80) fail();
        cp = (cp << 6) | (c & 0x3F);
    }
    // Reject overlong encodings, surrogates and out-of-range values.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    i += static_cast<size_t>(len);
    return cp;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        out.push_back(decode_utf8(s, i));
    }
    return out;
}

bool is_valid_utf8(std::string_view s) {
    try {
        decode_utf8(s);
        return true;
    } catch (const data_error&) {
        return false;
    }
}

void append_utf8(std::string& out, char32_t cp) {
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

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) append_utf8(out, cp);
    return out;
}

bool is_control_removed(char32_t cp) { return in_ranges(kControlRemoved, cp); }
bool is_bert_whitespace(char32_t cp) { return in_ranges(kBertWhitespace, cp); }
bool is_whitespace(char32_t cp) { return in_ranges(kWhitespace, cp); }
bool is_punctuation(char32_t cp) { return in_ranges(kPunctuation, cp); }
bool is_nonspacing_mark(char32_t cp) { return in_ranges(kMarkNonspacing, cp); }
bool is_mark(char32_t cp) { return in_ranges(kMark, cp); }
bool is_letter(char32_t cp) { return in_ranges(kLetter, cp); }
bool is_digit(char32_t cp) { return in_ranges(kDigit, cp); }

bool is_cjk_ideograph(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
           (cp >= 0x20000 && cp <= 0x2A6DF) || (cp >= 0x2A700 && cp <= 0x2B73F) ||
           (cp >= 0x2B740 && cp <= 0x2B81F) || (cp >= 0x2B820 && cp <= 0x2CEAF) ||
           (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x2F800 && cp <= 0x2FA1F);
}

void append_lowercase(std::u32string& out, char32_t cp) {
    for (const auto& e : kLowerSpecial) {
        if (e.cp == cp) {
            out.append(e.seq, e.len);
            return;
        }
    }
    auto it = std::lower_bound(std::begin(kLowerSimple), std::end(kLowerSimple), cp,
                               [](const CpPair& p, char32_t c) { return p.cp < c; });
    if (it != std::end(kLowerSimple) && it->cp == cp) {
        out.push_back(it->lower);
        return;
    }
    out.push_back(cp);
}

void append_nfd(std::u32string& out, char32_t cp) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        uint32_t s = cp - kHangulSBase;
        out.push_back(kHangulLBase + s / (kHangulVCount * kHangulTCount));
        out.push_back(kHangulVBase + (s % (kHangulVCount * kHangulTCount)) / kHangulTCount);
        uint32_t t = s % kHangulTCount;
        if (t != 0) out.push_back(kHangulTBase + t);
        return;
    }
    auto it = std::lower_bound(std::begin(kNfdEntries), std::end(kNfdEntries), cp,
                               [](const NfdEntry& e, char32_t c) { return e.cp < c; });
    if (it != std::end(kNfdEntries) && it->cp == cp) {
        out.append(kNfdExpansion + it->offset, it->len);
        return;
    }
    out.push_back(cp);
}

}  // namespace lexret::unicode
