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
#include <string>

#include "doctest.h"
#include "lexret/errors.hpp"
#include "lexret/unicode.hpp"

using namespace lexret::unicode;

TEST_CASE("decode_utf8 round-trips valid text") {
    const std::string samples[] = {
        "",
        "plain ascii",
        "caf\xc3\xa9",                  // 2-byte sequence
        "\xe6\x97\xa5\xe6\x9c\xac",     // CJK, 3-byte sequences
        "\xf0\x9f\x98\x80",             // U+1F600, 4-byte sequence
        std::string(1, '\0'),           // NUL is valid UTF-8
    };
    for (const auto& s : samples) {
        CAPTURE(s);
        CHECK(is_valid_utf8(s));
        CHECK_EQ(encode_utf8(decode_utf8(s)), s);
    }
}

TEST_CASE("decode_utf8 rejects malformed sequences") {
    const std::string bad[] = {
        "\x80",              // stray continuation byte
        "\xc3",              // truncated 2-byte sequence
        "\xe2\x82",          // truncated 3-byte sequence
        "\xc0\xaf",          // overlong '/'
        "\xe0\x80\xaf",      // overlong, 3 bytes
        "\xed\xa0\x80",      // UTF-16 surrogate D800
        "\xf4\x90\x80\x80",  // U+110000, above the codepoint range
        "\xff",              // invalid lead byte
        "ok\xc3then",        // continuation byte replaced by ASCII
    };
    for (const auto& s : bad) {
        CAPTURE(s);
        CHECK_FALSE(is_valid_utf8(s));
        CHECK_THROWS_AS(decode_utf8(s), lexret::data_error);
    }
}

TEST_CASE("incremental decode_utf8 advances by one codepoint") {
    std::string s = "a\xc3\xa9\xe6\x97\xa5\xf0\x9f\x98\x80";
    size_t i = 0;
    CHECK_EQ(decode_utf8(s, i), U'a');
    CHECK_EQ(i, 1);
    CHECK_EQ(decode_utf8(s, i), char32_t{0xE9});
    CHECK_EQ(i, 3);
    CHECK_EQ(decode_utf8(s, i), char32_t{0x65E5});
    CHECK_EQ(i, 6);
    CHECK_EQ(decode_utf8(s, i), char32_t{0x1F600});
    CHECK_EQ(i, 10);
}

TEST_CASE("append_utf8 handles encoding-length boundaries") {
    const std::pair<char32_t, std::string> cases[] = {
        {0x00, std::string(1, '\0')},
        {0x7F, "\x7f"},
        {0x80, "\xc2\x80"},
        {0x7FF, "\xdf\xbf"},
        {0x800, "\xe0\xa0\x80"},
        {0xFFFF, "\xef\xbf\xbf"},
        {0x10000, "\xf0\x90\x80\x80"},
        {0x10FFFF, "\xf4\x8f\xbf\xbf"},
    };
    for (const auto& [cp, bytes] : cases) {
        CAPTURE(static_cast<uint32_t>(cp));
        std::string out;
        append_utf8(out, cp);
        CHECK_EQ(out, bytes);
        CHECK_EQ(decode_utf8(out), std::u32string(1, cp));
    }
}

TEST_CASE("control removal covers category C except tab newline return") {
    CHECK(is_control_removed(0x0000));   // NUL
    CHECK(is_control_removed(0x0001));
    CHECK(is_control_removed(0x000B));   // vertical tab
    CHECK(is_control_removed(0x000C));   // form feed
    CHECK(is_control_removed(0x001F));
    CHECK(is_control_removed(0x007F));   // DEL
    CHECK(is_control_removed(0x0085));   // NEL
    CHECK(is_control_removed(0x00AD));   // soft hyphen, Cf
    CHECK(is_control_removed(0x200B));   // zero width space, Cf
    CHECK(is_control_removed(0x200D));   // zero width joiner, Cf
    CHECK(is_control_removed(0x202A));   // bidi embedding, Cf
    CHECK(is_control_removed(0xFEFF));   // BOM, Cf
    CHECK(is_control_removed(0xE000));   // private use, Co
    CHECK(is_control_removed(0x0378));   // unassigned, Cn
    CHECK_FALSE(is_control_removed('\t'));
    CHECK_FALSE(is_control_removed('\n'));
    CHECK_FALSE(is_control_removed('\r'));
    CHECK_FALSE(is_control_removed(' '));
    CHECK_FALSE(is_control_removed('a'));
    CHECK_FALSE(is_control_removed(0x4E00));
}

TEST_CASE("tokenizer whitespace is tab newline return plus separators") {
    CHECK(is_bert_whitespace('\t'));
    CHECK(is_bert_whitespace('\n'));
    CHECK(is_bert_whitespace('\r'));
    CHECK(is_bert_whitespace(' '));
    CHECK(is_bert_whitespace(0x00A0));  // no-break space
    CHECK(is_bert_whitespace(0x1680));  // ogham space mark
    CHECK(is_bert_whitespace(0x2000));
    CHECK(is_bert_whitespace(0x200A));
    CHECK(is_bert_whitespace(0x2028));  // line separator, Zl
    CHECK(is_bert_whitespace(0x2029));  // paragraph separator, Zp
    CHECK(is_bert_whitespace(0x202F));
    CHECK(is_bert_whitespace(0x3000));  // ideographic space
    // Cc whitespace-ish characters are removed as controls instead.
    CHECK_FALSE(is_bert_whitespace(0x000B));
    CHECK_FALSE(is_bert_whitespace(0x000C));
    CHECK_FALSE(is_bert_whitespace(0x0085));
    CHECK_FALSE(is_bert_whitespace(0x200B));  // zero width space is Cf
    CHECK_FALSE(is_bert_whitespace('a'));
}

TEST_CASE("general whitespace matches the White_Space property") {
    for (char32_t cp : {U'\t', U'\n', U'\v', U'\f', U'\r', U' ', char32_t{0x85},
                        char32_t{0xA0}, char32_t{0x2028}, char32_t{0x3000}})
        CHECK(is_whitespace(cp));
    for (char32_t cp : {U'a', char32_t{0x200B}, char32_t{0xAD}, char32_t{0x4E00}})
        CHECK_FALSE(is_whitespace(cp));
}

TEST_CASE("punctuation covers ASCII symbol ranges and category P") {
    // Every ASCII non-alphanumeric printable counts, including $ + < = > ` | ~.
    for (char c : std::string("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~"))
        CHECK(is_punctuation(static_cast<char32_t>(c)));
    CHECK(is_punctuation(0x00A7));   // section sign, Po
    CHECK(is_punctuation(0x00AB));   // left guillemet, Pi
    CHECK(is_punctuation(0x2014));   // em dash, Pd
    CHECK(is_punctuation(0x3001));   // ideographic comma
    CHECK(is_punctuation(0x060C));   // arabic comma
    CHECK_FALSE(is_punctuation('a'));
    CHECK_FALSE(is_punctuation('0'));
    CHECK_FALSE(is_punctuation(' '));
    CHECK_FALSE(is_punctuation(0x20AC));  // euro sign, Sc outside ASCII
    CHECK_FALSE(is_punctuation(0x2192));  // rightwards arrow, Sm
    CHECK_FALSE(is_punctuation(0x1F600)); // emoji, So
}

TEST_CASE("cjk ideograph ranges") {
    CHECK(is_cjk_ideograph(0x4E00));
    CHECK(is_cjk_ideograph(0x9FFF));
    CHECK(is_cjk_ideograph(0x3400));   // extension A
    CHECK(is_cjk_ideograph(0x4DBF));
    CHECK(is_cjk_ideograph(0x20000));  // extension B
    CHECK(is_cjk_ideograph(0xF900));   // compatibility ideographs
    CHECK(is_cjk_ideograph(0x2F800));
    CHECK_FALSE(is_cjk_ideograph(0x3040));  // hiragana
    CHECK_FALSE(is_cjk_ideograph(0x30A0));  // katakana
    CHECK_FALSE(is_cjk_ideograph(0xAC00));  // hangul syllables
    CHECK_FALSE(is_cjk_ideograph(0x0E01));  // thai
    CHECK_FALSE(is_cjk_ideograph('a'));
}

TEST_CASE("category predicates agree on scripts without case") {
    CHECK(is_letter(U'a'));
    CHECK(is_letter(0x4E00));
    CHECK(is_letter(0x05D0));  // hebrew alef
    CHECK(is_letter(0x0627));  // arabic alef
    CHECK_FALSE(is_letter(U'1'));
    CHECK(is_digit(U'0'));
    CHECK(is_digit(0x0660));   // arabic-indic zero
    CHECK(is_digit(0x096F));   // devanagari nine
    CHECK_FALSE(is_digit(0x00BD));  // vulgar fraction one half, No
    CHECK(is_nonspacing_mark(0x0301));  // combining acute
    CHECK(is_nonspacing_mark(0x093E) == false);  // devanagari aa is Mc
    CHECK(is_mark(0x093E));
    CHECK_FALSE(is_nonspacing_mark(U'a'));
}

TEST_CASE("lowercase mapping is full and context-free") {
    auto lower1 = [](char32_t cp) {
        std::u32string out;
        append_lowercase(out, cp);
        return out;
    };
    CHECK_EQ(lower1(U'A'), std::u32string{U'a'});
    CHECK_EQ(lower1(U'a'), std::u32string{U'a'});
    CHECK_EQ(lower1(0x00C5), std::u32string{0x00E5});  // ring A
    // Dotted capital I expands to i + combining dot above.
    CHECK_EQ(lower1(0x0130), (std::u32string{U'i', 0x0307}));
    // Capital sharp S maps to the lowercase sharp S, never "ss".
    CHECK_EQ(lower1(0x1E9E), std::u32string{0x00DF});
    CHECK_EQ(lower1(0x00DF), std::u32string{0x00DF});
    // Capital sigma always maps to medial sigma (no final-form context rule).
    CHECK_EQ(lower1(0x03A3), std::u32string{0x03C3});
    // Titlecase Dz maps to lowercase dz.
    CHECK_EQ(lower1(0x01C5), std::u32string{0x01C6});
    CHECK_EQ(lower1(0x0414), std::u32string{0x0434});  // cyrillic De
    CHECK_EQ(lower1(0x4E00), std::u32string{0x4E00});  // caseless
}

TEST_CASE("canonical decomposition is recursive and includes Hangul") {
    auto nfd1 = [](char32_t cp) {
        std::u32string out;
        append_nfd(out, cp);
        return out;
    };
    CHECK_EQ(nfd1(0x00E9), (std::u32string{U'e', 0x0301}));  // e acute
    CHECK_EQ(nfd1(0x00C5), (std::u32string{U'A', 0x030A}));  // A ring
    // s with dot below and dot above decomposes in two steps.
    CHECK_EQ(nfd1(0x1E69), (std::u32string{U's', 0x0323, 0x0307}));
    // Hangul syllables decompose algorithmically.
    CHECK_EQ(nfd1(0xAC00), (std::u32string{0x1100, 0x1161}));
    CHECK_EQ(nfd1(0xAC01), (std::u32string{0x1100, 0x1161, 0x11A8}));
    // Compatibility-only mappings must not decompose.
    CHECK_EQ(nfd1(0xFB01), std::u32string{0xFB01});  // fi ligature
    CHECK_EQ(nfd1(0x00DF), std::u32string{0x00DF});  // sharp s
    CHECK_EQ(nfd1(0x0153), std::u32string{0x0153});  // oe ligature
    CHECK_EQ(nfd1(U'a'), std::u32string{U'a'});
}
