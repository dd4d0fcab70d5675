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
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexret {

/// An index term exactly as it will be stored: non-empty, no whitespace.
using Token = std::string;

/// Ordered subword vocabulary; a token's id is its position.
class WordPieceVocab {
public:
    /// Validates: entries unique and non-empty, unk present, no entry equal
    /// to the bare continuation prefix. Throws data_error otherwise.
    WordPieceVocab(std::vector<std::string> entries, std::string unk_token = "[UNK]",
                   std::string continuation_prefix = "##", uint32_t max_word_chars = 100);

    const std::vector<std::string>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool contains(const std::string& token) const { return ids_.count(token) != 0; }
    std::optional<uint32_t> id_of(const std::string& token) const;

    const std::string& unk_token() const { return unk_; }
    const std::string& continuation_prefix() const { return prefix_; }
    uint32_t max_word_chars() const { return max_word_chars_; }

    /// Content hash over entries and conventions, used in index fingerprints.
    uint64_t content_hash() const;

private:
    std::vector<std::string> entries_;
    std::unordered_map<std::string, uint32_t> ids_;
    std::string unk_;
    std::string prefix_;
    uint32_t max_word_chars_;
};

/// One token per line, id = 0-based line number. Duplicate lines are an
/// error naming both line numbers.
WordPieceVocab load_vocab(const std::filesystem::path& path);
void save_vocab(const WordPieceVocab& vocab, const std::filesystem::path& path);

enum class Mechanism { whitespace, analyzer, wordpiece };

std::string_view mechanism_name(Mechanism m);
Mechanism mechanism_from_name(std::string_view name);

struct TokenizerConfig {
    Mechanism mechanism = Mechanism::whitespace;
    std::shared_ptr<const WordPieceVocab> vocab;  // wordpiece only
    bool lowercase = true;                        // wordpiece normalization
    bool drop_unknown = true;                     // wordpiece only
    bool fold_case = false;                       // whitespace ablation flag
    std::shared_ptr<const std::vector<std::string>> stopwords;  // analyzer only

    static TokenizerConfig whitespace(bool fold_case = false);
    static TokenizerConfig analyzer(std::shared_ptr<const std::vector<std::string>> stopwords);
    static TokenizerConfig wordpiece(std::shared_ptr<const WordPieceVocab> vocab,
                                     bool lowercase = true, bool drop_unknown = true);

    /// Throws data_error when a mechanism's required field is missing.
    void validate() const;

    /// Canonical id of the tokenization behaviour (mechanism, flags, content
    /// hashes). Equal fingerprints guarantee identical token streams.
    std::string fingerprint() const;
};

/// Maximal runs of non-whitespace characters, in order. No normalization;
/// tokenize() applies the fold_case flag on top of this when configured.
std::vector<Token> whitespace_tokenize(std::string_view text);

/// mBERT-style pre-WordPiece normalization. Applies, in order: control-char
/// removal and whitespace unification; optional lowercase + accent stripping
/// (canonical decomposition, nonspacing marks dropped); CJK ideograph
/// isolation; whitespace split; punctuation split.
std::vector<std::string> basic_normalize(std::string_view text, bool lowercase);

/// Greedy longest-match-first subword segmentation of a single word.
/// Unknown material or over-long words collapse to [unk_token].
std::vector<Token> wordpiece_segment(std::string_view word, const WordPieceVocab& vocab);

std::vector<Token> wordpiece_tokenize(std::string_view text, const TokenizerConfig& config);
std::vector<Token> analyzer_tokenize(std::string_view text, const TokenizerConfig& config);

/// Dispatch on config.mechanism.
std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& config);

/// The classic 33-word English stopword list, also shipped as
/// data/stopwords_en.txt.
const std::vector<std::string>& default_english_stopwords();

/// One stopword per line; blank lines ignored.
std::vector<std::string> load_stopwords(const std::filesystem::path& path);

}  // namespace lexret
