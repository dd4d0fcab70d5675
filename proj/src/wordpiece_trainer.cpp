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
#include "lexret/wordpiece_trainer.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lexret/errors.hpp"
#include "lexret/unicode.hpp"

namespace lexret {

using namespace unicode;

namespace {

struct TrainWord {
    std::vector<uint32_t> symbols;
    uint64_t count;
};

struct PairKey {
    uint32_t left;
    uint32_t right;
    bool operator<(const PairKey& other) const {
        return left != other.left ? left < other.left : right < other.right;
    }
};

}  // namespace

std::map<std::string, uint64_t> count_words(CorpusReader& corpus, bool lowercase) {
    std::map<std::string, uint64_t> counts;
    while (auto doc = corpus.next()) {
        std::string text = doc->title;
        text += '\n';
        text += doc->body;
        for (std::string& word : basic_normalize(text, lowercase)) {
            ++counts[std::move(word)];
        }
    }
    return counts;
}

WordPieceVocab train_wordpiece(const std::map<std::string, uint64_t>& word_counts,
                               const TrainerOptions& options) {
    if (options.min_pair_freq < 1) throw data_error("min_pair_freq must be at least 1");
    if (word_counts.empty()) throw data_error("training corpus contains no words");

    std::vector<std::string> symbol_text;
    std::unordered_map<std::string, uint32_t> symbol_id;
    auto intern = [&](const std::string& text) -> uint32_t {
        auto it = symbol_id.find(text);
        if (it != symbol_id.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(symbol_text.size());
        symbol_text.push_back(text);
        symbol_id.emplace(text, id);
        return id;
    };

    // Seed the alphabet with the character forms actually seen: bare at word
    // start, prefix-marked elsewhere.
    std::set<std::string> initials, continuations;
    std::vector<TrainWord> words;
    words.reserve(word_counts.size());
    for (const auto& [word, count] : word_counts) {
        TrainWord entry;
        entry.count = count;
        size_t i = 0;
        bool first = true;
        while (i < word.size()) {
            size_t start = i;
            decode_utf8(word, i);
            std::string symbol = first ? "" : options.continuation_prefix;
            symbol.append(word, start, i - start);
            (first ? initials : continuations).insert(symbol);
            entry.symbols.push_back(intern(symbol));
            first = false;
        }
        words.push_back(std::move(entry));
    }

    size_t forced = 1 + initials.size() + continuations.size();
    if (options.vocab_size < forced) {
        throw data_error("vocab_size " + std::to_string(options.vocab_size) +
                         " is below the minimum " + std::to_string(forced) +
                         " (1 unknown token + " + std::to_string(initials.size()) +
                         " word-initial + " + std::to_string(continuations.size()) +
                         " continuation symbols)");
    }

    std::vector<std::string> entries;
    entries.reserve(options.vocab_size);
    entries.push_back(options.unk_token);
    entries.insert(entries.end(), initials.begin(), initials.end());
    entries.insert(entries.end(), continuations.begin(), continuations.end());
    std::unordered_set<std::string> entry_set(entries.begin(), entries.end());

    const size_t prefix_len = options.continuation_prefix.size();
    while (entries.size() < options.vocab_size) {
        std::map<PairKey, uint64_t> pair_freq;
        std::vector<uint64_t> symbol_freq(symbol_text.size(), 0);
        for (const TrainWord& word : words) {
            const auto& symbols = word.symbols;
            for (size_t i = 0; i < symbols.size(); ++i) {
                symbol_freq[symbols[i]] += word.count;
                if (i + 1 < symbols.size()) {
                    pair_freq[{symbols[i], symbols[i + 1]}] += word.count;
                }
            }
        }

        auto merged_string = [&](const PairKey& pair) {
            const std::string& right = symbol_text[pair.right];
            // The right side of an adjacent pair is always word-internal,
            // hence prefix-marked; the merge strips that marking.
            if (right.compare(0, prefix_len, options.continuation_prefix) != 0) {
                throw internal_error("pair right side '" + right +
                                     "' lacks the continuation prefix");
            }
            return symbol_text[pair.left] + right.substr(prefix_len);
        };

        bool have_best = false;
        PairKey best{0, 0};
        uint64_t best_freq = 0;
        std::string best_merged;
        for (const auto& [pair, freq] : pair_freq) {
            if (freq < options.min_pair_freq) continue;
            if (have_best) {
                // score(p) = freq / (freq(left)*freq(right)); compare exactly
                // via cross-multiplication in 128-bit.
                unsigned __int128 lhs = static_cast<unsigned __int128>(freq) *
                                        symbol_freq[best.left] * symbol_freq[best.right];
                unsigned __int128 rhs = static_cast<unsigned __int128>(best_freq) *
                                        symbol_freq[pair.left] * symbol_freq[pair.right];
                if (lhs < rhs) continue;
                if (lhs == rhs) {
                    if (freq < best_freq) continue;
                    if (freq == best_freq) {
                        std::string merged = merged_string(pair);
                        if (merged > best_merged) continue;
                        if (merged == best_merged) {
                            const std::string& left = symbol_text[pair.left];
                            const std::string& best_left = symbol_text[best.left];
                            if (left > best_left) continue;
                            if (left == best_left &&
                                symbol_text[pair.right] >= symbol_text[best.right]) {
                                continue;
                            }
                        }
                    }
                }
            }
            have_best = true;
            best = pair;
            best_freq = freq;
            best_merged = merged_string(pair);
        }
        if (!have_best) break;

        uint32_t merged_id = intern(best_merged);
        if (entry_set.insert(best_merged).second) entries.push_back(best_merged);

        // Left-to-right, non-overlapping replacement in every word.
        for (TrainWord& word : words) {
            auto& symbols = word.symbols;
            size_t out = 0;
            for (size_t i = 0; i < symbols.size();) {
                if (i + 1 < symbols.size() && symbols[i] == best.left &&
                    symbols[i + 1] == best.right) {
                    symbols[out++] = merged_id;
                    i += 2;
                } else {
                    symbols[out++] = symbols[i++];
                }
            }
            symbols.resize(out);
        }
    }

    return WordPieceVocab(std::move(entries), options.unk_token, options.continuation_prefix,
                          options.max_word_chars);
}

WordPieceVocab train_wordpiece(CorpusReader& corpus, const TrainerOptions& options) {
    return train_wordpiece(count_words(corpus, options.lowercase), options);
}

}  // namespace lexret
