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
#include <string>
#include <string_view>
#include <vector>

#include "lexret/corpus_io.hpp"
#include "lexret/tokenizer.hpp"

namespace lexret {

struct IndexStats {
    uint64_t doc_count = 0;
    uint64_t total_tokens = 0;
    double avg_doc_len = 0.0;  // total_tokens / doc_count when doc_count > 0
};

/// Immutable inverted index: sorted term dictionary, per-term postings in
/// structure-of-arrays form, document lengths, and the ordinal -> external
/// id map. Safe for unrestricted concurrent readers.
class InvertedIndex {
public:
    struct PostingList {
        std::vector<uint32_t> docs;  // strictly ascending ordinals
        std::vector<uint32_t> tfs;   // parallel to docs, each >= 1
    };

    /// Streams documents, assigning ordinals in ingestion order. Indexed
    /// text is title + "\n" + body when include_title, else body alone.
    /// Duplicate or whitespace-containing doc ids and an empty corpus are
    /// data errors. With threads > 1 the document stream is processed in
    /// fixed-size batches merged in ordinal order, so the result is
    /// independent of the thread count.
    static InvertedIndex build(CorpusReader& docs, const TokenizerConfig& config,
                               bool include_title = true, unsigned threads = 1);
    static InvertedIndex build(const std::vector<Document>& docs,
                               const TokenizerConfig& config, bool include_title = true,
                               unsigned threads = 1);

    /// nullptr when the term is absent.
    const PostingList* postings(std::string_view term) const;

    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<PostingList>& posting_lists() const { return postings_; }
    const std::vector<uint32_t>& doc_lengths() const { return doc_lengths_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    const IndexStats& stats() const { return stats_; }
    const std::string& tokenizer_fingerprint() const { return fingerprint_; }
    bool title_indexed() const { return title_indexed_; }

    /// Full-scan consistency check: df >= 1, postings strictly ascending
    /// with tf >= 1, per-document tf sums equal to stored lengths, token
    /// total and avg_doc_len consistent. Throws internal_error on failure.
    void verify() const;

    /// Directory layout: meta.json, dict.bin, postings.bin, doclen.bin,
    /// docids.tsv. Versioned magic headers; CRC32 of every payload recorded
    /// in meta.json. save -> load is the identity; format or checksum
    /// mismatch on load is a data error, never a silent misread.
    void save(const std::filesystem::path& dir) const;
    static InvertedIndex load(const std::filesystem::path& dir);

    static constexpr uint32_t kFormatVersion = 1;

private:
    static InvertedIndex from_parts(std::vector<std::string> terms,
                                    std::vector<PostingList> postings,
                                    std::vector<uint32_t> doc_lengths,
                                    std::vector<std::string> doc_ids, uint64_t total_tokens,
                                    std::string fingerprint, bool title_indexed);

    std::vector<std::string> terms_;        // sorted
    std::vector<PostingList> postings_;     // parallel to terms_
    std::vector<uint32_t> doc_lengths_;     // by ordinal
    std::vector<std::string> doc_ids_;      // by ordinal
    IndexStats stats_;
    std::string fingerprint_;
    bool title_indexed_ = true;
};

}  // namespace lexret
