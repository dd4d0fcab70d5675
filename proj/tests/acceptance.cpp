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

/*
 * Acceptance gate: one line per criterion, nonzero exit when any fails.
 * Criterion 11 needs an external corpus and is skipped unless
 * LEXRET_MRTYDI_SW_DIR points at a directory holding corpus.jsonl,
 * queries.tsv, and qrels.txt.
 */

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexret/corpus_io.hpp"
#include "lexret/errors.hpp"
#include "lexret/evaluate.hpp"
#include "lexret/fusion.hpp"
#include "lexret/index.hpp"
#include "lexret/porter.hpp"
#include "lexret/retrieval.hpp"
#include "lexret/tokenizer.hpp"
#include "lexret/wordpiece_trainer.hpp"

using namespace lexret;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Result {
    Status status = Status::fail;
    std::string detail;
};

Result pass(std::string detail) { return {Status::pass, std::move(detail)}; }
Result fail(std::string detail) { return {Status::fail, std::move(detail)}; }

fs::path fixture(const char* name) {
    return fs::path(LEXRET_FIXTURE_DIR) / name;
}

std::string join(const std::vector<Token>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw data_error("cannot write " + path.string());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/* ------------------------------------------------------------------ */
/* Criterion 1: ranked search vs exhaustive scoring.                   */

/// Full-scan reference scorer. Tokenizes documents exactly as the index
/// builder does (title + '\n' + body when titles are indexed) and adds
/// term contributions in lexicographic term order, one addition per
/// distinct query term, like the production scorer.
std::vector<ScoredDoc> brute_force(const std::vector<Document>& docs,
                                   const std::string& query_text,
                                   const TokenizerConfig& config, bool include_title,
                                   const BM25Params& params, size_t k) {
    std::vector<std::vector<Token>> doc_tokens;
    doc_tokens.reserve(docs.size());
    uint64_t total = 0;
    for (const Document& doc : docs) {
        std::string text = include_title ? doc.title + "\n" + doc.body : doc.body;
        doc_tokens.push_back(tokenize(text, config));
        total += doc_tokens.back().size();
    }
    IndexStats stats;
    stats.doc_count = docs.size();
    stats.total_tokens = total;
    stats.avg_doc_len = static_cast<double>(total) / static_cast<double>(docs.size());

    std::map<Token, uint32_t> qtf;
    for (const Token& token : tokenize(query_text, config)) ++qtf[token];
    std::map<Token, uint64_t> df;
    for (const auto& [term, count] : qtf) {
        uint64_t n = 0;
        for (const auto& tokens : doc_tokens) {
            if (std::find(tokens.begin(), tokens.end(), term) != tokens.end()) ++n;
        }
        df[term] = n;
    }

    std::vector<ScoredDoc> scored;
    for (size_t d = 0; d < docs.size(); ++d) {
        double acc = 0.0;
        bool hit = false;
        for (const auto& [term, count] : qtf) {
            uint32_t tf = 0;
            for (const Token& token : doc_tokens[d]) {
                if (token == term) ++tf;
            }
            if (tf == 0) continue;
            uint32_t dl = static_cast<uint32_t>(doc_tokens[d].size());
            acc += count * bm25_term_score(tf, df[term], dl, params, stats);
            hit = true;
        }
        if (hit) scored.push_back({docs[d].doc_id, acc, 0});
    }
    std::sort(scored.begin(), scored.end(), scored_doc_before);
    if (scored.size() > k) scored.resize(k);
    for (size_t i = 0; i < scored.size(); ++i) scored[i].rank = static_cast<uint32_t>(i + 1);
    return scored;
}

Result check_bm25_oracle() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(101);
    const std::vector<std::string> extras = {"the",  "of",      "and",         "running",
                                             "cats", "systems", "information", "retrieval"};
    const double tolerance = 1e-9;
    size_t rankings = 0;
    double worst_delta = 0.0;

    for (int trial = 0; trial < 50; ++trial) {
        size_t n_docs = trial == 0 ? 1000 : 20 + rng() % 280;
        size_t n_queries = trial == 0 ? 100 : 5 + rng() % 25;
        int n_terms = 30 + static_cast<int>(rng() % 200);
        bool include_title = trial % 2 == 0;

        auto pick_word = [&]() -> std::string {
            if (rng() % 8 == 0) return extras[rng() % extras.size()];
            return "w" + std::to_string(rng() % n_terms);
        };
        std::map<std::string, uint64_t> word_counts;
        std::vector<Document> docs;
        docs.reserve(n_docs);
        for (size_t d = 0; d < n_docs; ++d) {
            std::string title, body;
            size_t title_words = rng() % 3;
            for (size_t t = 0; t < title_words; ++t) {
                if (t) title += ' ';
                std::string w = pick_word();
                ++word_counts[w];
                title += w;
            }
            size_t body_words = 1 + rng() % 40;
            for (size_t t = 0; t < body_words; ++t) {
                if (t) body += ' ';
                std::string w = pick_word();
                ++word_counts[w];
                body += w;
            }
            docs.push_back({"doc" + std::to_string(d), title, body});
        }

        TokenizerConfig config;
        switch (trial % 3) {
            case 0:
                config = TokenizerConfig::whitespace(trial % 6 == 0);
                break;
            case 1:
                config = TokenizerConfig::analyzer(std::make_shared<const std::vector<std::string>>(
                    default_english_stopwords()));
                break;
            default: {
                TrainerOptions options;
                options.vocab_size = 40 + rng() % 40;
                options.min_pair_freq = 1 + rng() % 2;
                auto vocab = std::make_shared<const WordPieceVocab>(
                    train_wordpiece(word_counts, options));
                config = TokenizerConfig::wordpiece(vocab, true, trial % 2 == 0);
                break;
            }
        }

        size_t k = 5 + rng() % 96;
        BM25Params params;
        InvertedIndex index = InvertedIndex::build(docs, config, include_title, 1);
        std::vector<Query> queries;
        for (size_t q = 0; q < n_queries; ++q) {
            std::string text;
            size_t n = 1 + rng() % 4;
            for (size_t t = 0; t < n; ++t) {
                if (t) text += ' ';
                text += pick_word();
            }
            queries.push_back({"q" + std::to_string(q), text});
        }
        RunFile run = run_queries(index, queries, config, params, k, "sys", 1);

        for (size_t q = 0; q < queries.size(); ++q) {
            const std::vector<ScoredDoc>& got = run.queries[q].second;
            std::vector<ScoredDoc> expected =
                brute_force(docs, queries[q].text, config, include_title, params, k);
            std::string where = "trial " + std::to_string(trial) + " query " +
                                queries[q].query_id;
            if (got.size() != expected.size()) {
                return fail(where + ": " + std::to_string(got.size()) + " hits, oracle has " +
                            std::to_string(expected.size()));
            }
            for (size_t i = 0; i < got.size(); ++i) {
                if (got[i].doc_id != expected[i].doc_id || got[i].rank != expected[i].rank) {
                    return fail(where + " rank " + std::to_string(i + 1) + ": got " +
                                got[i].doc_id + ", oracle has " + expected[i].doc_id);
                }
                double delta = std::fabs(got[i].score - expected[i].score);
                worst_delta = std::max(worst_delta, delta);
                if (delta > tolerance) {
                    return fail(where + " " + got[i].doc_id + ": score delta " +
                                std::to_string(delta) + " exceeds 1e-9");
                }
            }
            ++rankings;
        }
    }

    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                         .count();
    if (seconds >= 120.0) {
        return fail("took " + std::to_string(seconds) + "s, budget is 120s");
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "50 corpora, %zu rankings, worst score delta %.3g, %.1fs", rankings,
                  worst_delta, seconds);
    return pass(buf);
}

/* ------------------------------------------------------------------ */
/* Criterion 2: frozen hand computation of one term score.             */

Result check_hand_score() {
    /* Two documents, the term in one of them, query document exactly at
     * average length: idf = ln(2), length norm = k1, score = ln(2)/1.9. */
    IndexStats stats;
    stats.doc_count = 2;
    stats.total_tokens = 8;
    stats.avg_doc_len = 4.0;
    BM25Params params;
    double got = bm25_term_score(1, 1, 4, params, stats);
    double expected = std::log(2.0) / 1.9;
    double delta = std::fabs(got - expected);
    if (delta > 1e-6) {
        return fail("got " + std::to_string(got) + ", expected ln(2)/1.9 = " +
                    std::to_string(expected));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "bm25_term_score = %.6f, |delta| = %.3g <= 1e-6", got,
                  delta);
    return pass(buf);
}

/* ------------------------------------------------------------------ */
/* Criterion 3: WordPiece conformance fixture.                         */

Result check_wordpiece_conformance() {
    auto vocab = std::make_shared<const WordPieceVocab>(load_vocab(fixture("wordpiece_vocab.txt")));
    TokenizerConfig config = TokenizerConfig::wordpiece(vocab, true, false);
    std::ifstream in(fixture("wordpiece_conformance.tsv"));
    if (!in) return fail("fixture wordpiece_conformance.tsv missing");
    std::string line;
    size_t rows = 0;
    size_t mismatches = 0;
    std::string first_bad;
    while (std::getline(in, line)) {
        size_t tab = line.find('\t');
        if (tab == std::string::npos) return fail("fixture row without tab");
        ++rows;
        std::string input = line.substr(0, tab);
        std::string expected = line.substr(tab + 1);
        std::string got = join(tokenize(input, config));
        if (got != expected) {
            ++mismatches;
            if (first_bad.empty()) first_bad = input;
        }
    }
    if (rows != 1000) return fail("expected 1000 rows, found " + std::to_string(rows));
    if (mismatches > 0) {
        return fail(std::to_string(mismatches) + " mismatching rows, first input: " + first_bad);
    }
    return pass("1000/1000 reference token sequences reproduced");
}

/* ------------------------------------------------------------------ */
/* Criterion 4: greedy longest-match property on random pairs.         */

Result check_greedy_property() {
    std::mt19937 rng(404);
    const char alphabet[] = {'a', 'b', 'c'};
    auto random_piece = [&](size_t max_len) {
        std::string s;
        size_t len = 1 + rng() % max_len;
        for (size_t i = 0; i < len; ++i) s += alphabet[rng() % 3];
        return s;
    };

    size_t unk_outputs = 0;
    for (int pair_no = 0; pair_no < 10000; ++pair_no) {
        std::set<std::string> bare;
        std::set<std::string> cont;
        if (pair_no % 2 == 0) {
            /* Complete single-character coverage: segmentation always
             * succeeds, exercising the reconstruction invariant. */
            for (char c : alphabet) {
                bare.insert(std::string(1, c));
                cont.insert(std::string(1, c));
            }
        }
        size_t n_bare = 1 + rng() % 5;
        size_t n_cont = 1 + rng() % 5;
        for (size_t i = 0; i < n_bare; ++i) bare.insert(random_piece(4));
        for (size_t i = 0; i < n_cont; ++i) cont.insert(random_piece(4));

        std::vector<std::string> entries = {"[UNK]"};
        entries.insert(entries.end(), bare.begin(), bare.end());
        for (const std::string& piece : cont) entries.push_back("##" + piece);
        WordPieceVocab vocab(entries);

        std::string word = random_piece(12);
        std::vector<Token> got = wordpiece_segment(word, vocab);

        /* Reference: longest vocabulary match at every offset, whole-word
         * [UNK] when any offset has none. */
        std::vector<std::string> expected;
        bool stuck = false;
        size_t off = 0;
        while (off < word.size()) {
            size_t best_len = 0;
            for (size_t len = word.size() - off; len >= 1; --len) {
                std::string cand = word.substr(off, len);
                if ((off == 0 ? bare : cont).count(cand)) {
                    expected.push_back(off == 0 ? cand : "##" + cand);
                    best_len = len;
                    break;
                }
            }
            if (best_len == 0) {
                stuck = true;
                break;
            }
            off += best_len;
        }
        if (stuck) expected = {"[UNK]"};

        if (got != std::vector<Token>(expected.begin(), expected.end())) {
            return fail("pair " + std::to_string(pair_no) + " word `" + word +
                        "`: got [" + join(got) + "]");
        }
        if (stuck) {
            ++unk_outputs;
        } else {
            std::string rebuilt;
            for (const Token& piece : got) {
                rebuilt += piece.rfind("##", 0) == 0 ? piece.substr(2) : piece;
            }
            if (rebuilt != word) {
                return fail("word `" + word + "` reconstructs to `" + rebuilt + "`");
            }
        }
    }
    return pass("10000 pairs, " + std::to_string(unk_outputs) +
                " whole-word [UNK] cases, longest-match and reconstruction hold");
}

/* ------------------------------------------------------------------ */
/* Criterion 5: Porter stemmer conformance fixture.                    */

Result check_porter_conformance() {
    std::ifstream in(fixture("porter.tsv"));
    if (!in) return fail("fixture porter.tsv missing");
    std::string line;
    size_t rows = 0;
    size_t mismatches = 0;
    std::string first_bad;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) return fail("fixture row without tab");
        ++rows;
        std::string word = line.substr(0, tab);
        std::string expected = line.substr(tab + 1);
        if (porter_stem(word) != expected) {
            ++mismatches;
            if (first_bad.empty()) first_bad = word;
        }
    }
    if (rows < 10000) return fail("suspiciously small fixture: " + std::to_string(rows));
    if (mismatches > 0) {
        return fail(std::to_string(mismatches) + " mismatches of " + std::to_string(rows) +
                    ", first word: " + first_bad);
    }
    return pass(std::to_string(rows) + "/" + std::to_string(rows) + " stems match");
}

/* ------------------------------------------------------------------ */
/* Criterion 6: trainer vs brute-force merge oracle.                   */

/// Reference trainer over string symbols, recomputing every frequency
/// each round. Candidate scanning order differs from the production
/// trainer, so agreement also confirms the selection rule is a total
/// order. Toy frequencies keep the cross-multiplied comparison in u64.
std::vector<std::string> oracle_train(const std::map<std::string, uint64_t>& word_counts,
                                      uint32_t vocab_size, uint64_t min_pair_freq) {
    struct Word {
        std::vector<std::string> symbols;
        uint64_t count;
    };
    std::vector<Word> words;
    std::set<std::string> initials, continuations;
    for (const auto& [text, count] : word_counts) {
        Word w;
        w.count = count;
        for (size_t i = 0; i < text.size(); ++i) {
            std::string sym = i == 0 ? "" : "##";
            sym += text[i];
            (i == 0 ? initials : continuations).insert(sym);
            w.symbols.push_back(sym);
        }
        words.push_back(std::move(w));
    }

    std::vector<std::string> entries;
    entries.push_back("[UNK]");
    entries.insert(entries.end(), initials.begin(), initials.end());
    entries.insert(entries.end(), continuations.begin(), continuations.end());
    std::set<std::string> entry_set(entries.begin(), entries.end());

    while (entries.size() < vocab_size) {
        std::map<std::string, uint64_t> sym_freq;
        std::map<std::pair<std::string, std::string>, uint64_t> pair_freq;
        for (const Word& w : words) {
            for (size_t i = 0; i < w.symbols.size(); ++i) {
                sym_freq[w.symbols[i]] += w.count;
                if (i + 1 < w.symbols.size()) {
                    pair_freq[{w.symbols[i], w.symbols[i + 1]}] += w.count;
                }
            }
        }
        bool found = false;
        std::pair<std::string, std::string> best;
        uint64_t best_freq = 0;
        std::string best_merged;
        for (const auto& [pair, freq] : pair_freq) {
            if (freq < min_pair_freq) continue;
            std::string merged = pair.first + pair.second.substr(2);
            bool better = false;
            if (!found) {
                better = true;
            } else {
                uint64_t lhs = freq * sym_freq[best.first] * sym_freq[best.second];
                uint64_t rhs = best_freq * sym_freq[pair.first] * sym_freq[pair.second];
                if (lhs != rhs)
                    better = lhs > rhs;
                else if (freq != best_freq)
                    better = freq > best_freq;
                else if (merged != best_merged)
                    better = merged < best_merged;
                else if (pair.first != best.first)
                    better = pair.first < best.first;
                else
                    better = pair.second < best.second;
            }
            if (better) {
                found = true;
                best = pair;
                best_freq = freq;
                best_merged = merged;
            }
        }
        if (!found) break;
        if (entry_set.insert(best_merged).second) entries.push_back(best_merged);
        for (Word& w : words) {
            std::vector<std::string> out;
            for (size_t i = 0; i < w.symbols.size();) {
                if (i + 1 < w.symbols.size() && w.symbols[i] == best.first &&
                    w.symbols[i + 1] == best.second) {
                    out.push_back(best_merged);
                    i += 2;
                } else {
                    out.push_back(w.symbols[i++]);
                }
            }
            w.symbols = std::move(out);
        }
    }
    return entries;
}

Result check_trainer_oracle() {
    std::mt19937 rng(606);
    const char alphabet[] = {'a', 'b', 'c', 'd', 'e'};
    for (int trial = 0; trial < 20; ++trial) {
        std::map<std::string, uint64_t> counts;
        size_t n_words = 3 + rng() % 8;
        for (size_t w = 0; w < n_words; ++w) {
            std::string word;
            size_t len = 1 + rng() % 6;
            for (size_t i = 0; i < len; ++i) word += alphabet[rng() % 5];
            counts[word] += 1 + rng() % 20;
        }

        std::set<char> in_set, cont_set;
        for (const auto& [word, count] : counts) {
            in_set.insert(word[0]);
            for (size_t i = 1; i < word.size(); ++i) cont_set.insert(word[i]);
        }
        uint32_t forced = static_cast<uint32_t>(1 + in_set.size() + cont_set.size());

        TrainerOptions options;
        options.vocab_size = forced + rng() % 26;
        options.min_pair_freq = 1 + trial % 3;
        WordPieceVocab trained = train_wordpiece(counts, options);
        std::vector<std::string> expected =
            oracle_train(counts, options.vocab_size, options.min_pair_freq);
        if (trained.entries() != expected) {
            return fail("trial " + std::to_string(trial) + ": entries diverge from oracle");
        }
    }
    return pass("20 random toy corpora, merge sequences match the oracle");
}

/* ------------------------------------------------------------------ */
/* Criterion 7: metric hand values and monotonicity in k.              */

Result check_metrics() {
    /* q1: two relevant docs, one found at rank 2. q2: one relevant doc
     * found at rank 5. MRR = (1/2 + 1/5)/2, recall = (1/2 + 1)/2. */
    Qrels qrels;
    qrels.judgments["q1"] = {{"d1", 1}, {"d2", 1}};
    qrels.judgments["q2"] = {{"d5", 1}};
    RunFile run;
    run.run_tag = "sys";
    auto ranking = [](std::vector<std::string> ids) {
        std::vector<ScoredDoc> hits;
        for (size_t i = 0; i < ids.size(); ++i) {
            hits.push_back({ids[i], 10.0 - static_cast<double>(i), static_cast<uint32_t>(i + 1)});
        }
        return hits;
    };
    run.queries.emplace_back("q1", ranking({"x1", "d1", "x2", "x3"}));
    run.queries.emplace_back("q2", ranking({"y1", "y2", "y3", "y4", "d5"}));

    EvalReport report = evaluate_run(run, qrels, 100, 1);
    double expected_mrr = (1.0 / 2.0 + 1.0 / 5.0) / 2.0;
    double expected_recall = (1.0 / 2.0 + 1.0) / 2.0;
    if (report.mrr_at_k != expected_mrr) {
        return fail("MRR@100 " + std::to_string(report.mrr_at_k) + ", hand value " +
                    std::to_string(expected_mrr));
    }
    if (report.recall_at_k != expected_recall) {
        return fail("Recall@100 " + std::to_string(report.recall_at_k) + ", hand value " +
                    std::to_string(expected_recall));
    }
    if (report.per_query.size() != 2 || report.per_query[0].reciprocal_rank != 0.5 ||
        report.per_query[1].recall != 1.0) {
        return fail("per-query entries diverge from hand values");
    }

    /* Both metrics must be non-decreasing in the cutoff. */
    std::mt19937 rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        Qrels rels;
        RunFile r;
        r.run_tag = "sys";
        for (int q = 0; q < 4; ++q) {
            std::string qid = "q" + std::to_string(q);
            std::vector<int> pool(20);
            for (int i = 0; i < 20; ++i) pool[i] = i;
            std::shuffle(pool.begin(), pool.end(), rng);
            for (int i = 0; i < 3; ++i) {
                rels.judgments[qid]["d" + std::to_string(rng() % 25)] = 1;
            }
            std::vector<std::string> ids;
            for (int i = 0; i < 20; ++i) ids.push_back("d" + std::to_string(pool[i]));
            std::vector<ScoredDoc> hits;
            for (size_t i = 0; i < ids.size(); ++i) {
                hits.push_back(
                    {ids[i], 50.0 - static_cast<double>(i), static_cast<uint32_t>(i + 1)});
            }
            r.queries.emplace_back(qid, hits);
        }
        double prev_mrr = 0.0;
        double prev_recall = 0.0;
        for (size_t k = 1; k <= 20; ++k) {
            EvalReport rep = evaluate_run(r, rels, k, 1);
            if (rep.mrr_at_k < prev_mrr || rep.recall_at_k < prev_recall) {
                return fail("metric decreased at k=" + std::to_string(k) + " in trial " +
                            std::to_string(trial));
            }
            prev_mrr = rep.mrr_at_k;
            prev_recall = rep.recall_at_k;
        }
    }
    return pass("hand values exact, both metrics monotone in k on 20 random runs");
}

/* ------------------------------------------------------------------ */
/* Criterion 8: fusion properties on random run pairs.                 */

std::map<std::string, double> minmax_block(const std::vector<ScoredDoc>& hits) {
    std::map<std::string, double> out;
    if (hits.empty()) return out;
    double lo = hits[0].score;
    double hi = hits[0].score;
    for (const ScoredDoc& h : hits) {
        lo = std::min(lo, h.score);
        hi = std::max(hi, h.score);
    }
    for (const ScoredDoc& h : hits) {
        out[h.doc_id] = hi > lo ? (h.score - lo) / (hi - lo) : 1.0;
    }
    return out;
}

RunFile random_run(std::mt19937& rng, const char* tag) {
    /* Scores are multiples of 0.25, so every min-max normalization and
     * power-of-two affine transform below is exact. */
    RunFile run;
    run.run_tag = tag;
    int n_queries = 2 + static_cast<int>(rng() % 3);
    for (int q = 0; q < n_queries; ++q) {
        if (rng() % 5 == 0) continue;
        std::vector<int> pool(20);
        for (int i = 0; i < 20; ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        size_t n_docs = 3 + rng() % 6;
        std::vector<ScoredDoc> hits;
        for (size_t i = 0; i < n_docs; ++i) {
            hits.push_back({"d" + std::to_string(pool[i]),
                            static_cast<double>(1 + rng() % 64) * 0.25, 0});
        }
        std::sort(hits.begin(), hits.end(), scored_doc_before);
        for (size_t i = 0; i < hits.size(); ++i) hits[i].rank = static_cast<uint32_t>(i + 1);
        run.queries.emplace_back("q" + std::to_string(q), std::move(hits));
    }
    return run;
}

Result check_fusion_properties() {
    std::mt19937 rng(808);
    auto params_with = [](double alpha) {
        FusionParams params;
        params.alpha = alpha;
        params.k = 100;
        return params;
    };
    for (int pair_no = 0; pair_no < 1000; ++pair_no) {
        RunFile a = random_run(rng, "a");
        RunFile b = random_run(rng, "b");

        /* Boundary weights reduce to one run's min-max normalization. */
        for (double alpha : {1.0, 0.0}) {
            const RunFile& kept = alpha == 1.0 ? a : b;
            RunFile fused = fuse(a, b, params_with(alpha));
            for (const auto& [qid, hits] : fused.queries) {
                std::map<std::string, double> expected;
                if (const std::vector<ScoredDoc>* block = kept.find(qid)) {
                    expected = minmax_block(*block);
                }
                for (const ScoredDoc& h : hits) {
                    auto it = expected.find(h.doc_id);
                    double want = it == expected.end() ? 0.0 : it->second;
                    if (h.score != want) {
                        return fail("pair " + std::to_string(pair_no) + " alpha=" +
                                    std::to_string(alpha) + " " + qid + "/" + h.doc_id);
                    }
                }
            }
        }

        /* Swapping the runs while mirroring alpha is a no-op. */
        RunFile lhs = fuse(a, b, params_with(0.25));
        RunFile rhs = fuse(b, a, params_with(0.75));
        if (lhs.queries.size() != rhs.queries.size()) {
            return fail("pair " + std::to_string(pair_no) + ": mirrored query sets differ");
        }
        for (const auto& [qid, hits] : lhs.queries) {
            const std::vector<ScoredDoc>* other = rhs.find(qid);
            if (other == nullptr || other->size() != hits.size()) {
                return fail("pair " + std::to_string(pair_no) + ": mirrored block differs for " +
                            qid);
            }
            for (size_t i = 0; i < hits.size(); ++i) {
                if (hits[i].doc_id != (*other)[i].doc_id || hits[i].score != (*other)[i].score) {
                    return fail("pair " + std::to_string(pair_no) + ": mirrored ranking differs "
                                "for " + qid);
                }
            }
        }

        /* Positive affine rescaling of the inputs never changes the output. */
        RunFile scaled = a;
        for (auto& [qid, hits] : scaled.queries) {
            for (ScoredDoc& h : hits) h.score = h.score * 8.0 + 4.0;
        }
        RunFile base = fuse(a, b, params_with(0.5));
        RunFile affine = fuse(scaled, b, params_with(0.5));
        if (base.queries.size() != affine.queries.size()) {
            return fail("pair " + std::to_string(pair_no) + ": affine query sets differ");
        }
        for (size_t q = 0; q < base.queries.size(); ++q) {
            const auto& [qid, hits] = base.queries[q];
            const auto& [qid2, hits2] = affine.queries[q];
            if (qid != qid2 || hits.size() != hits2.size()) {
                return fail("pair " + std::to_string(pair_no) + ": affine blocks differ");
            }
            for (size_t i = 0; i < hits.size(); ++i) {
                if (hits[i].doc_id != hits2[i].doc_id || hits[i].score != hits2[i].score) {
                    return fail("pair " + std::to_string(pair_no) + ": affine scores differ for " +
                                qid);
                }
            }
        }
    }
    return pass("1000 run pairs: boundary weights, mirrored alpha, affine invariance");
}

/* ------------------------------------------------------------------ */
/* Criterion 9: Pearson correlation exactness and invariance.          */

Result check_pearson() {
    std::vector<double> xs, line_up, line_down;
    for (int i = 1; i <= 10; ++i) {
        xs.push_back(i);
        line_up.push_back(2.0 * i + 3.0);
        line_down.push_back(-0.5 * i + 7.0);
    }
    double r_up = pearson_r(xs, line_up);
    double r_down = pearson_r(xs, line_down);
    if (std::fabs(r_up - 1.0) > 1e-12) {
        return fail("r on increasing line: " + std::to_string(r_up));
    }
    if (std::fabs(r_down + 1.0) > 1e-12) {
        return fail("r on decreasing line: " + std::to_string(r_down));
    }

    std::mt19937 rng(909);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    std::uniform_real_distribution<double> scale(0.5, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 5 + rng() % 46;
        std::vector<double> x(n), y(n), x2(n), y2(n), x3(n);
        double a = scale(rng), b = value(rng), c = scale(rng), d = value(rng);
        for (size_t i = 0; i < n; ++i) {
            x[i] = value(rng);
            y[i] = value(rng);
            x2[i] = a * x[i] + b;
            y2[i] = c * y[i] + d;
            x3[i] = -a * x[i] + b;
        }
        double base = pearson_r(x, y);
        if (std::fabs(pearson_r(x2, y2) - base) > 1e-9) {
            return fail("affine invariance broke in trial " + std::to_string(trial));
        }
        if (std::fabs(pearson_r(x3, y) + base) > 1e-9) {
            return fail("sign flip broke in trial " + std::to_string(trial));
        }
    }
    return pass("|r -/+ 1| <= 1e-12 on lines, affine invariance <= 1e-9 on 50 vectors");
}

/* ------------------------------------------------------------------ */
/* Criterion 10: experiment determinism across thread counts.          */

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string command = std::string(LEXRET_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return {};
    CliResult result;
    char buffer[4096];
    size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

Result check_experiment_determinism() {
    fs::path dir = fs::temp_directory_path() / "lexret_acceptance_exp";
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_file(dir / "corpus.jsonl",
               "{\"id\":\"d1\",\"title\":\"\",\"text\":\"alpha alpha\"}\n"
               "{\"id\":\"d2\",\"title\":\"\",\"text\":\"alpha beta gamma\"}\n"
               "{\"id\":\"d3\",\"title\":\"\",\"text\":\"delta delta delta\"}\n");
    write_file(dir / "queries.tsv", "q1\tdelta\nq2\tAlpha\n");
    write_file(dir / "qrels.txt", "q1 0 d3 1\nq2 0 d2 1\n");
    auto config_text = [&](const char* out_name) {
        return std::string("{\n")
            + "  \"corpus\": \"corpus.jsonl\",\n"
            + "  \"queries\": \"queries.tsv\",\n"
            + "  \"qrels\": \"qrels.txt\",\n"
            + "  \"out\": \"" + out_name + "\",\n"
            + "  \"k\": 5,\n"
            + "  \"include_title\": false,\n"
            + "  \"reference_tag\": \"an\",\n"
            + "  \"tokenizers\": [\n"
            + "    {\"tag\": \"ws\", \"mechanism\": \"whitespace\"},\n"
            + "    {\"tag\": \"an\", \"mechanism\": \"analyzer\"},\n"
            + "    {\"tag\": \"wp\", \"mechanism\": \"wordpiece\", \"vocab\": \""
            + fixture("wordpiece_vocab.txt").string() + "\"}\n"
            + "  ],\n"
            + "  \"fusions\": [{\"a\": \"an\", \"b\": \"wp\", \"alpha\": 0.5}]\n"
            + "}\n";
    };
    write_file(dir / "c1.json", config_text("o1"));
    write_file(dir / "c8.json", config_text("o8"));

    CliResult first = run_cli("experiment --config " + (dir / "c1.json").string() +
                              " --threads 1");
    if (first.exit_code != 0) {
        return fail("--threads 1 run exited " + std::to_string(first.exit_code));
    }
    CliResult second = run_cli("experiment --config " + (dir / "c8.json").string() +
                               " --threads 8");
    if (second.exit_code != 0) {
        return fail("--threads 8 run exited " + std::to_string(second.exit_code));
    }

    std::set<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir / "o1")) {
        names.insert(entry.path().filename().string());
    }
    std::set<std::string> names8;
    for (const auto& entry : fs::directory_iterator(dir / "o8")) {
        names8.insert(entry.path().filename().string());
    }
    if (names != names8) return fail("output file sets differ");
    for (const std::string& name : names) {
        if (slurp(dir / "o1" / name) != slurp(dir / "o8" / name)) {
            return fail("file " + name + " differs between thread counts");
        }
    }
    fs::remove_all(dir);
    return pass(std::to_string(names.size()) + " output files byte-identical across --threads "
                "1 and --threads 8");
}

/* ------------------------------------------------------------------ */
/* Criterion 11: optional directional end-to-end comparison.           */

Result check_directional() {
    const char* env = std::getenv("LEXRET_MRTYDI_SW_DIR");
    if (env == nullptr || *env == '\0') {
        return {Status::skip,
                "set LEXRET_MRTYDI_SW_DIR to a directory holding corpus.jsonl, queries.tsv, "
                "and qrels.txt"};
    }
    fs::path dir = env;
    std::vector<Query> queries = load_queries(dir / "queries.tsv");
    Qrels qrels = load_qrels(dir / "qrels.txt");
    BM25Params params;

    CorpusReader count_reader(dir / "corpus.jsonl");
    TrainerOptions options;
    options.vocab_size = 8000;
    options.min_pair_freq = 2;
    auto vocab = std::make_shared<const WordPieceVocab>(train_wordpiece(count_reader, options));

    auto mrr_with = [&](const TokenizerConfig& config, const char* tag) {
        CorpusReader reader(dir / "corpus.jsonl");
        InvertedIndex index = InvertedIndex::build(reader, config, true, 4);
        RunFile run = run_queries(index, queries, config, params, 100, tag, 4);
        return evaluate_run(run, qrels, 100, 1).mrr_at_k;
    };
    double ws_mrr = mrr_with(TokenizerConfig::whitespace(), "whitespace");
    double wp_mrr = mrr_with(TokenizerConfig::wordpiece(vocab, true, true), "wordpiece");

    char buf[128];
    std::snprintf(buf, sizeof(buf), "wordpiece MRR@100 %.6f vs whitespace %.6f", wp_mrr,
                  ws_mrr);
    if (wp_mrr > ws_mrr) return pass(buf);
    return fail(buf);
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<Result()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "search matches exhaustive scoring on 50 random corpora", check_bm25_oracle},
        {2, "two-document fixture term score equals ln(2)/1.9", check_hand_score},
        {3, "wordpiece conformance fixture agrees 100%", check_wordpiece_conformance},
        {4, "greedy longest-match property on 10000 random pairs", check_greedy_property},
        {5, "porter stemmer conformance fixture agrees 100%", check_porter_conformance},
        {6, "vocabulary trainer matches the merge oracle", check_trainer_oracle},
        {7, "MRR and recall hand values exact, monotone in k", check_metrics},
        {8, "fusion properties on 1000 random run pairs", check_fusion_properties},
        {9, "pearson r exact on lines, affine invariant", check_pearson},
        {10, "experiment outputs byte-identical across thread counts",
         check_experiment_determinism},
        {11, "wordpiece beats whitespace MRR on the reference corpus", check_directional},
    };

    int failures = 0;
    int skips = 0;
    for (const Criterion& criterion : criteria) {
        Result result;
        try {
            result = criterion.check();
        } catch (const std::exception& e) {
            result = fail(std::string("unexpected exception: ") + e.what());
        }
        const char* label = result.status == Status::pass   ? "PASS"
                            : result.status == Status::skip ? "SKIP"
                                                            : "FAIL";
        if (result.status == Status::fail) ++failures;
        if (result.status == Status::skip) ++skips;
        std::cout << label << " criterion " << criterion.number << ": " << criterion.title;
        if (!result.detail.empty()) std::cout << " (" << result.detail << ")";
        std::cout << '\n';
    }
    std::cout << "acceptance: " << (criteria.size() - failures - skips) << " passed, "
              << failures << " failed, " << skips << " skipped\n";
    return failures == 0 ? 0 : 1;
}
