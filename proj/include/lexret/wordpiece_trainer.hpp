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
#include <map>
#include <string>

#include "lexret/corpus_io.hpp"
#include "lexret/tokenizer.hpp"

namespace lexret {

struct TrainerOptions {
    uint32_t vocab_size = 0;     // required; total entries including unk and alphabet
    uint64_t min_pair_freq = 2;  // pairs below this frequency never merge
    bool lowercase = true;       // passed to basic_normalize
    std::string unk_token = "[UNK]";
    std::string continuation_prefix = "##";
    uint32_t max_word_chars = 100;  // stored in the resulting vocabulary
};

/// Word frequencies of a corpus after basic_normalize, over title + body.
std::map<std::string, uint64_t> count_words(CorpusReader& corpus, bool lowercase);

/// Unsupervised WordPiece training. Starts from the unknown token plus every
/// seen word-initial character and every seen continuation character; then
/// repeatedly merges the adjacent symbol pair maximizing
/// freq(ab) / (freq(a) * freq(b)) among pairs with freq >= min_pair_freq,
/// until vocab_size entries exist or no pair qualifies.
///
/// Tie-break, in order: higher pair frequency, lexicographically smaller
/// merged string, smaller left symbol, smaller right symbol.
///
/// Entry order of the result: unk_token, word-initial characters (sorted),
/// continuation characters (sorted), merged symbols in merge order.
///
/// Throws data_error when the corpus yields no words, min_pair_freq is 0, or
/// vocab_size is below the forced alphabet size (the message names the
/// minimum).
WordPieceVocab train_wordpiece(const std::map<std::string, uint64_t>& word_counts,
                               const TrainerOptions& options);
WordPieceVocab train_wordpiece(CorpusReader& corpus, const TrainerOptions& options);

}  // namespace lexret
