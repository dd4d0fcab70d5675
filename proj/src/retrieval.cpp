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
#include "lexret/retrieval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "lexret/errors.hpp"
#include "lexret/kernels/bm25_kernels.hpp"

namespace lexret {

void BM25Params::validate() const {
    if (!std::isfinite(k1) || k1 < 0.0) {
        throw data_error("bm25 parameter k1 must be finite and >= 0");
    }
    if (!std::isfinite(b) || b < 0.0 || b > 1.0) {
        throw data_error("bm25 parameter b must be in [0, 1]");
    }
}

bool scored_doc_before(const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.doc_id < b.doc_id;
}

const std::vector<ScoredDoc>* RunFile::find(std::string_view query_id) const {
    for (const auto& [qid, hits] : queries) {
        if (qid == query_id) {
            return &hits;
        }
    }
    return nullptr;
}

double bm25_idf(uint64_t doc_count, uint64_t df) {
    double n = static_cast<double>(doc_count);
    double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double bm25_term_score(uint32_t tf, uint64_t df, uint32_t dl, const BM25Params& params,
                       const IndexStats& stats) {
    if (df == 0 || df > stats.doc_count) {
        throw internal_error("bm25_term_score requires 1 <= df <= doc_count, got df=" +
                             std::to_string(df) + " with doc_count=" +
                             std::to_string(stats.doc_count));
    }
    if (!(stats.avg_doc_len > 0.0)) {
        throw internal_error("bm25_term_score requires avg_doc_len > 0");
    }
    if (tf == 0) {
        return 0.0;
    }
    double idf = bm25_idf(stats.doc_count, df);
    double ft = static_cast<double>(tf);
    double w = kernels::bm25_length_norm(dl, params.k1, params.b, stats.avg_doc_len);
    return idf * ft / (ft + w);
}

Searcher::Searcher(const InvertedIndex& index, TokenizerConfig config, BM25Params params)
    : index_(&index), config_(std::move(config)), params_(params) {
    config_.validate();
    params_.validate();
    std::string fp = config_.fingerprint();
    if (fp != index.tokenizer_fingerprint()) {
        throw data_error("tokenizer does not match index: got \"" + fp +
                         "\", index was built with \"" + index.tokenizer_fingerprint() + "\"");
    }
    const IndexStats& st = index.stats();
    size_t n = index.doc_lengths().size();
    norms_.assign(n, 0.0);
    if (st.total_tokens > 0) {
        /* avg_doc_len > 0 here; an all-empty corpus has no postings, so the
         * zero norms left otherwise are never read. */
        for (size_t d = 0; d < n; ++d) {
            norms_[d] =
                kernels::bm25_length_norm(index.doc_lengths()[d], params_.k1, params_.b,
                                          st.avg_doc_len);
        }
    }
    scores_.assign(n, 0.0);
    seen_.assign(n, 0);
}

std::vector<ScoredDoc> Searcher::search(std::string_view query_text, size_t k) {
    kernels::ScorePostingsFn fn = kernels::score_postings_fn();
    std::vector<Token> tokens = tokenize(query_text, config_);
    /* std::map fixes the accumulation order: terms lexicographic, then
     * posting ordinal within a term. */
    std::map<std::string, uint32_t> qtf;
    for (const Token& t : tokens) {
        ++qtf[t];
    }
    candidates_.clear();
    const IndexStats& st = index_->stats();
    for (const auto& [term, count] : qtf) {
        const InvertedIndex::PostingList* pl = index_->postings(term);
        if (pl == nullptr) {
            continue;
        }
        double idf = bm25_idf(st.doc_count, pl->docs.size());
        double weight = static_cast<double>(count);
        for (uint32_t d : pl->docs) {
            if (seen_[d] == 0) {
                seen_[d] = 1;
                candidates_.push_back(d);
            }
        }
        fn(pl->docs.data(), pl->tfs.data(), pl->docs.size(), idf, weight, norms_.data(),
           scores_.data());
    }
    std::vector<ScoredDoc> hits;
    hits.reserve(candidates_.size());
    const std::vector<std::string>& ids = index_->doc_ids();
    for (uint32_t d : candidates_) {
        hits.push_back(ScoredDoc{ids[d], scores_[d], 0});
        scores_[d] = 0.0;
        seen_[d] = 0;
    }
    size_t top = std::min(k, hits.size());
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(top), hits.end(),
                      scored_doc_before);
    hits.resize(top);
    for (size_t i = 0; i < hits.size(); ++i) {
        hits[i].rank = static_cast<uint32_t>(i + 1);
    }
    return hits;
}

std::vector<ScoredDoc> search(const InvertedIndex& index, std::string_view query_text,
                              const TokenizerConfig& config, const BM25Params& params, size_t k) {
    Searcher searcher(index, config, params);
    return searcher.search(query_text, k);
}

RunFile run_queries(const InvertedIndex& index, const std::vector<Query>& queries,
                    const TokenizerConfig& config, const BM25Params& params, size_t k,
                    std::string run_tag, unsigned threads) {
    RunFile out;
    out.run_tag = std::move(run_tag);
    out.queries.resize(queries.size());
    size_t n = queries.size();
    if (n == 0) {
        /* Still validate the binding so an empty query file cannot hide a
         * mismatched tokenizer. */
        Searcher probe(index, config, params);
        return out;
    }
    if (threads == 0) {
        threads = 1;
    }
    unsigned workers = static_cast<unsigned>(std::min<size_t>(threads, n));
    if (workers <= 1) {
        Searcher searcher(index, config, params);
        for (size_t i = 0; i < n; ++i) {
            out.queries[i] = {queries[i].query_id, searcher.search(queries[i].text, k)};
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            try {
                Searcher searcher(index, config, params);
                while (true) {
                    size_t i = next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= n) {
                        break;
                    }
                    out.queries[i] = {queries[i].query_id, searcher.search(queries[i].text, k)};
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(n, std::memory_order_relaxed);
            }
        });
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return out;
}

void save_run(const RunFile& run, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot open run file for writing: " + path.string());
    }
    for (const auto& [qid, hits] : run.queries) {
        for (const ScoredDoc& hit : hits) {
            char score_buf[64];
            std::snprintf(score_buf, sizeof(score_buf), "%.6f", hit.score);
            out << qid << " Q0 " << hit.doc_id << ' ' << hit.rank << ' ' << score_buf << ' '
                << run.run_tag << '\n';
        }
    }
    out.flush();
    if (!out) {
        throw data_error("failed writing run file: " + path.string());
    }
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

[[noreturn]] void run_error(const std::filesystem::path& path, size_t line_no,
                            const std::string& what) {
    throw data_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

RunFile load_run(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open run file: " + path.string());
    }
    RunFile run;
    std::unordered_set<std::string> finished_queries;
    std::unordered_set<std::string> block_docs;
    std::string current_qid;
    bool in_block = false;
    double prev_score = 0.0;
    uint32_t prev_rank = 0;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string_view> fields = split_ws(line);
        if (fields.size() != 6) {
            run_error(path, line_no,
                      "expected 6 fields `query_id Q0 doc_id rank score tag`, got " +
                          std::to_string(fields.size()));
        }
        if (fields[1] != "Q0") {
            run_error(path, line_no, "second field must be `Q0`");
        }
        std::string qid(fields[0]);
        std::string doc_id(fields[2]);
        uint32_t rank = 0;
        {
            const char* first = fields[3].data();
            const char* last = first + fields[3].size();
            auto [ptr, ec] = std::from_chars(first, last, rank);
            if (ec != std::errc() || ptr != last || rank == 0) {
                run_error(path, line_no, "rank must be a positive integer");
            }
        }
        double score = 0.0;
        {
            const char* first = fields[4].data();
            const char* last = first + fields[4].size();
            auto [ptr, ec] = std::from_chars(first, last, score);
            if (ec != std::errc() || ptr != last || !std::isfinite(score)) {
                run_error(path, line_no, "score must be a finite number");
            }
        }
        std::string tag(fields[5]);
        if (run.queries.empty() && !in_block) {
            run.run_tag = tag;
        } else if (tag != run.run_tag) {
            run_error(path, line_no, "run_tag changed mid-file (was `" + run.run_tag + "`)");
        }
        if (!in_block || qid != current_qid) {
            if (in_block) {
                finished_queries.insert(current_qid);
            }
            if (finished_queries.count(qid) != 0) {
                run_error(path, line_no, "query `" + qid + "` appears in two separate blocks");
            }
            run.queries.emplace_back(qid, std::vector<ScoredDoc>{});
            block_docs.clear();
            current_qid = qid;
            in_block = true;
            prev_rank = 0;
        }
        if (rank != prev_rank + 1) {
            run_error(path, line_no, "ranks must be sequential from 1; expected " +
                                         std::to_string(prev_rank + 1) + ", got " +
                                         std::to_string(rank));
        }
        if (prev_rank > 0 && score > prev_score) {
            run_error(path, line_no, "scores must be non-increasing within a query");
        }
        if (!block_docs.insert(doc_id).second) {
            run_error(path, line_no, "duplicate doc `" + doc_id + "` within query `" + qid + "`");
        }
        run.queries.back().second.push_back(ScoredDoc{std::move(doc_id), score, rank});
        prev_rank = rank;
        prev_score = score;
    }
    if (in.bad()) {
        throw data_error("i/o error reading run file: " + path.string());
    }
    return run;
}

}  // namespace lexret
