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
#include <utility>
#include <vector>

#include "lexret/corpus_io.hpp"
#include "lexret/index.hpp"
#include "lexret/tokenizer.hpp"

namespace lexret {

struct BM25Params {
    double k1 = 0.9;
    double b = 0.4;

    /// Throws data_error unless k1 >= 0 and 0 <= b <= 1, both finite.
    void validate() const;
};

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
    uint32_t rank = 0;
};

/// Compares by descending score, then ascending doc_id. Total order over
/// distinct doc_ids, so result lists are fully deterministic.
bool scored_doc_before(const ScoredDoc& a, const ScoredDoc& b);

/// Ranked results for a set of queries, in query order. A query with no
/// hits keeps its entry with an empty list (and emits zero file lines).
struct RunFile {
    std::string run_tag;
    std::vector<std::pair<std::string, std::vector<ScoredDoc>>> queries;

    const std::vector<ScoredDoc>* find(std::string_view query_id) const;
};

/// ln(1 + (N - df + 0.5) / (df + 0.5)). Strictly positive for 1 <= df <= N.
/// One definition shared by the scorer and every oracle.
double bm25_idf(uint64_t doc_count, uint64_t df);

/// idf * tf / (tf + k1 * ((1 - b) + b * dl/avgdl)). The (k1+1) numerator
/// factor common in other implementations is deliberately absent; it is a
/// rank-equivalent constant. Returns 0 when tf = 0.
/// Throws internal_error when df = 0, df > doc_count, or avgdl <= 0.
double bm25_term_score(uint32_t tf, uint64_t df, uint32_t dl, const BM25Params& params,
                       const IndexStats& stats);

/// Reusable query scorer over one index. Holds per-document length norms
/// and scratch accumulators, so one instance serves many queries cheaply.
/// Not thread-safe; use one Searcher per thread.
class Searcher {
public:
    /// Throws data_error when the config fingerprint does not match the
    /// fingerprint the index was built with.
    Searcher(const InvertedIndex& index, TokenizerConfig config, BM25Params params = {});

    /// Top-k documents for the query text, scores summed per query token
    /// occurrence in (term lexicographic, posting ordinal) order. Ranks
    /// are assigned 1..n.
    std::vector<ScoredDoc> search(std::string_view query_text, size_t k = 100);

    const InvertedIndex& index() const { return *index_; }
    const BM25Params& params() const { return params_; }

private:
    const InvertedIndex* index_;
    TokenizerConfig config_;
    BM25Params params_;
    std::vector<double> norms_;
    std::vector<double> scores_;
    std::vector<uint8_t> seen_;
    std::vector<uint32_t> candidates_;
};

/// One-shot convenience wrapper over Searcher.
std::vector<ScoredDoc> search(const InvertedIndex& index, std::string_view query_text,
                              const TokenizerConfig& config, const BM25Params& params = {},
                              size_t k = 100);

/// Scores every query, preserving input order. threads > 1 distributes
/// queries across workers; output is identical for any thread count.
RunFile run_queries(const InvertedIndex& index, const std::vector<Query>& queries,
                    const TokenizerConfig& config, const BM25Params& params, size_t k,
                    std::string run_tag, unsigned threads = 1);

/// Writes `query_id Q0 doc_id rank score run_tag` lines, score with six
/// decimal places, queries in run order.
void save_run(const RunFile& run, const std::filesystem::path& path);

/// Parses a run file, validating the line format, contiguous query blocks,
/// ranks 1..n, non-increasing scores, and doc uniqueness per query.
/// Throws data_error naming path:line on any violation.
RunFile load_run(const std::filesystem::path& path);

}  // namespace lexret
