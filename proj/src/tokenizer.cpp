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
#include "lexret/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexret/detail/hash.hpp"
#include "lexret/errors.hpp"
#include "lexret/porter.hpp"
#include "lexret/unicode.hpp"

namespace lexret {

using namespace unicode;

namespace {

std::string lowercase_copy(std::string_view text) {
    std::u32string lowered;
    lowered.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        append_lowercase(lowered, decode_utf8(text, i));
    }
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : lowered) append_utf8(out, cp);
    return out;
}

std::string hex64(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

uint64_t hash_lines(const std::vector<std::string>& lines) {
    uint64_t state = detail::kFnvOffset;
    for (const auto& line : lines) {
        state = detail::fnv1a64(line, state);
        state = detail::fnv1a64("\n", state);
    }
    return state;
}

}  // namespace

WordPieceVocab::WordPieceVocab(std::vector<std::string> entries, std::string unk_token,
                               std::string continuation_prefix, uint32_t max_word_chars)
    : entries_(std::move(entries)),
      unk_(std::move(unk_token)),
      prefix_(std::move(continuation_prefix)),
      max_word_chars_(max_word_chars) {
    if (prefix_.empty()) throw data_error("vocabulary continuation prefix must be non-empty");
    if (max_word_chars_ == 0) throw data_error("vocabulary max_word_chars must be positive");
    ids_.reserve(entries_.size());
    for (size_t i = 0; i < entries_.size(); ++i) {
        const std::string& entry = entries_[i];
        if (entry.empty()) {
            throw data_error("vocabulary entry " + std::to_string(i) + " is empty");
        }
        if (entry == prefix_) {
            throw data_error("vocabulary entry " + std::to_string(i) +
                             " is the bare continuation prefix '" + prefix_ + "'");
        }
        auto [it, inserted] = ids_.emplace(entry, static_cast<uint32_t>(i));
        if (!inserted) {
            throw data_error("duplicate vocabulary entry '" + entry + "' at positions " +
                             std::to_string(it->second) + " and " + std::to_string(i));
        }
    }
    if (ids_.count(unk_) == 0) {
        throw data_error("vocabulary does not contain the unknown token '" + unk_ + "'");
    }
}

std::optional<uint32_t> WordPieceVocab::id_of(const std::string& token) const {
    auto it = ids_.find(token);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

uint64_t WordPieceVocab::content_hash() const {
    uint64_t state = hash_lines(entries_);
    state = detail::fnv1a64("unk=", state);
    state = detail::fnv1a64(unk_, state);
    state = detail::fnv1a64(";prefix=", state);
    state = detail::fnv1a64(prefix_, state);
    state = detail::fnv1a64(";max=", state);
    state = detail::fnv1a64(std::to_string(max_word_chars_), state);
    return state;
}

WordPieceVocab load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open vocabulary file: " + path.string());
    std::vector<std::string> entries;
    std::unordered_map<std::string, size_t> first_line;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            throw data_error(path.string() + ":" + std::to_string(lineno) +
                             ": empty vocabulary entry");
        }
        auto [it, inserted] = first_line.emplace(line, lineno);
        if (!inserted) {
            throw data_error(path.string() + ": duplicate vocabulary entry '" + line +
                             "' on lines " + std::to_string(it->second) + " and " +
                             std::to_string(lineno));
        }
        entries.push_back(line);
    }
    if (in.bad()) throw data_error("read error on vocabulary file: " + path.string());
    return WordPieceVocab(std::move(entries));
}

void save_vocab(const WordPieceVocab& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot open vocabulary file for writing: " + path.string());
    for (const auto& entry : vocab.entries()) {
        out << entry << '\n';
    }
    out.flush();
    if (!out) throw data_error("write error on vocabulary file: " + path.string());
}

std::string_view mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::whitespace: return "whitespace";
        case Mechanism::analyzer: return "analyzer";
        case Mechanism::wordpiece: return "wordpiece";
    }
    throw internal_error("invalid mechanism value");
}

Mechanism mechanism_from_name(std::string_view name) {
    if (name == "whitespace") return Mechanism::whitespace;
    if (name == "analyzer") return Mechanism::analyzer;
    if (name == "wordpiece") return Mechanism::wordpiece;
    throw data_error("unknown tokenizer mechanism '" + std::string(name) +
                     "' (expected whitespace, analyzer, or wordpiece)");
}

TokenizerConfig TokenizerConfig::whitespace(bool fold_case) {
    TokenizerConfig config;
    config.mechanism = Mechanism::whitespace;
    config.fold_case = fold_case;
    return config;
}

TokenizerConfig TokenizerConfig::analyzer(
    std::shared_ptr<const std::vector<std::string>> stopwords) {
    TokenizerConfig config;
    config.mechanism = Mechanism::analyzer;
    config.stopwords = std::move(stopwords);
    return config;
}

TokenizerConfig TokenizerConfig::wordpiece(std::shared_ptr<const WordPieceVocab> vocab,
                                           bool lowercase, bool drop_unknown) {
    TokenizerConfig config;
    config.mechanism = Mechanism::wordpiece;
    config.vocab = std::move(vocab);
    config.lowercase = lowercase;
    config.drop_unknown = drop_unknown;
    return config;
}

void TokenizerConfig::validate() const {
    switch (mechanism) {
        case Mechanism::whitespace:
            return;
        case Mechanism::analyzer:
            if (!stopwords) throw data_error("analyzer tokenizer requires a stopword list");
            return;
        case Mechanism::wordpiece:
            if (!vocab) throw data_error("wordpiece tokenizer requires a vocabulary");
            return;
    }
    throw internal_error("invalid mechanism value");
}

std::string TokenizerConfig::fingerprint() const {
    validate();
    std::string out = "mechanism=";
    out += mechanism_name(mechanism);
    switch (mechanism) {
        case Mechanism::whitespace:
            out += ";fold_case=";
            out += fold_case ? '1' : '0';
            break;
        case Mechanism::analyzer:
            out += ";stopwords=";
            out += hex64(hash_lines(*stopwords));
            break;
        case Mechanism::wordpiece:
            out += ";lowercase=";
            out += lowercase ? '1' : '0';
            out += ";drop_unknown=";
            out += drop_unknown ? '1' : '0';
            out += ";vocab=";
            out += hex64(vocab->content_hash());
            break;
    }
    return out;
}

std::vector<Token> whitespace_tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::string current;
    size_t i = 0;
    while (i < text.size()) {
        size_t start = i;
        char32_t cp = decode_utf8(text, i);
        if (is_whitespace(cp)) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.append(text.substr(start, i - start));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> basic_normalize(std::string_view text, bool lowercase) {
    // Pass 1: drop NUL, U+FFFD and control characters; unify whitespace.
    // The control check runs first, so control-class whitespace (NEL, VT,
    // FF) is removed rather than mapped to a space.
    std::u32string cleaned;
    cleaned.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (cp == 0 || cp == 0xFFFD || is_control_removed(cp)) continue;
        cleaned.push_back(is_bert_whitespace(cp) ? U' ' : cp);
    }

    // Pass 2: case fold, then strip accents by canonical decomposition with
    // nonspacing marks dropped. Decomposition order is kept as produced;
    // with every Mn removed, canonical reordering cannot change the result.
    std::u32string cased;
    if (lowercase) {
        std::u32string lowered;
        lowered.reserve(cleaned.size());
        for (char32_t cp : cleaned) append_lowercase(lowered, cp);
        cased.reserve(lowered.size());
        std::u32string nfd;
        for (char32_t cp : lowered) {
            nfd.clear();
            append_nfd(nfd, cp);
            for (char32_t d : nfd) {
                if (!is_nonspacing_mark(d)) cased.push_back(d);
            }
        }
    } else {
        cased = std::move(cleaned);
    }

    // Pass 3: CJK ideographs and punctuation become single-character words;
    // everything else accumulates into whitespace-delimited words. This is
    // the padding + split + punctuation-isolation cascade done in one scan.
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(current);
            current.clear();
        }
    };
    for (char32_t cp : cased) {
        if (is_bert_whitespace(cp)) {
            flush();
        } else if (is_cjk_ideograph(cp) || is_punctuation(cp)) {
            flush();
            std::string single;
            append_utf8(single, cp);
            words.push_back(std::move(single));
        } else {
            append_utf8(current, cp);
        }
    }
    flush();
    return words;
}

std::vector<Token> wordpiece_segment(std::string_view word, const WordPieceVocab& vocab) {
    std::vector<size_t> offsets;
    size_t i = 0;
    while (i < word.size()) {
        offsets.push_back(i);
        decode_utf8(word, i);
    }
    size_t n = offsets.size();
    if (n == 0) return {};
    offsets.push_back(word.size());
    if (n > vocab.max_word_chars()) return {vocab.unk_token()};

    std::vector<Token> pieces;
    std::string candidate;
    size_t start = 0;
    while (start < n) {
        size_t end = n;
        bool found = false;
        while (start < end) {
            candidate.clear();
            if (start > 0) candidate = vocab.continuation_prefix();
            candidate.append(word.substr(offsets[start], offsets[end] - offsets[start]));
            if (vocab.contains(candidate)) {
                found = true;
                break;
            }
            --end;
        }
        if (!found) return {vocab.unk_token()};
        pieces.push_back(candidate);
        start = end;
    }
    return pieces;
}

std::vector<Token> wordpiece_tokenize(std::string_view text, const TokenizerConfig& config) {
    if (!config.vocab) throw data_error("wordpiece tokenizer requires a vocabulary");
    const WordPieceVocab& vocab = *config.vocab;
    std::vector<Token> tokens;
    for (const std::string& word : basic_normalize(text, config.lowercase)) {
        for (Token& piece : wordpiece_segment(word, vocab)) {
            if (config.drop_unknown && piece == vocab.unk_token()) continue;
            tokens.push_back(std::move(piece));
        }
    }
    return tokens;
}

std::vector<Token> analyzer_tokenize(std::string_view text, const TokenizerConfig& config) {
    if (!config.stopwords) throw data_error("analyzer tokenizer requires a stopword list");
    const std::vector<std::string>& stopwords = *config.stopwords;

    std::vector<Token> tokens;
    std::u32string run;
    auto flush = [&] {
        if (run.empty()) return;
        std::u32string lowered;
        lowered.reserve(run.size());
        for (char32_t cp : run) append_lowercase(lowered, cp);
        run.clear();
        std::string token;
        token.reserve(lowered.size());
        for (char32_t cp : lowered) append_utf8(token, cp);
        if (std::find(stopwords.begin(), stopwords.end(), token) != stopwords.end()) return;
        tokens.push_back(porter_stem(token));
    };

    size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (is_letter(cp) || is_digit(cp)) {
            run.push_back(cp);
        } else if (!run.empty() && is_mark(cp)) {
            // Combining marks extend a run but never start one.
            run.push_back(cp);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config) {
    config.validate();
    switch (config.mechanism) {
        case Mechanism::whitespace: {
            std::vector<Token> tokens = whitespace_tokenize(text);
            if (config.fold_case) {
                for (Token& token : tokens) token = lowercase_copy(token);
            }
            return tokens;
        }
        case Mechanism::analyzer:
            return analyzer_tokenize(text, config);
        case Mechanism::wordpiece:
            return wordpiece_tokenize(text, config);
    }
    throw internal_error("invalid mechanism value");
}

const std::vector<std::string>& default_english_stopwords() {
    static const std::vector<std::string> kStopwords = {
        "a",    "an",   "and",   "are",  "as",    "at",   "be",   "but",  "by",
        "for",  "if",   "in",    "into", "is",    "it",   "no",   "not",  "of",
        "on",   "or",   "such",  "that", "the",   "their", "then", "there", "these",
        "they", "this", "to",    "was",  "will",  "with"};
    return kStopwords;
}

std::vector<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open stopword file: " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        words.push_back(line);
    }
    if (in.bad()) throw data_error("read error on stopword file: " + path.string());
    return words;
}

}  // namespace lexret
