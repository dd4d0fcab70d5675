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
#include "lexret/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lexret/errors.hpp"

namespace lexret {

EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, size_t k, int rel_threshold,
                        std::ostream& warnings) {
    EvalReport report;
    report.k = k;
    report.rel_threshold = rel_threshold;

    std::unordered_map<std::string_view, const std::vector<ScoredDoc>*> run_lists;
    run_lists.reserve(run.queries.size());
    for (const auto& [qid, hits] : run.queries) {
        if (!run_lists.emplace(qid, &hits).second) {
            throw data_error("duplicate query block `" + qid + "` in run");
        }
        // A repeated document would be counted twice by recall.
        std::unordered_set<std::string_view> docs;
        docs.reserve(hits.size());
        for (const ScoredDoc& hit : hits) {
            if (!docs.insert(hit.doc_id).second) {
                throw data_error("duplicate document `" + hit.doc_id + "` for query `" + qid +
                                 "` in run");
            }
        }
    }

    for (const auto& [qid, hits] : run.queries) {
        if (qrels.judgments.find(qid) == qrels.judgments.end()) {
            warnings << "warning: query `" << qid << "` in run but not in qrels; excluded\n";
        }
    }

    double rr_sum = 0.0;
    double recall_sum = 0.0;
    /* Qrels order (sorted by query_id) fixes per_query order and the
     * aggregate summation order. */
    for (const auto& [qid, docs] : qrels.judgments) {
        size_t rel_total = qrels.relevant_count(qid, rel_threshold);
        if (rel_total == 0) {
            ++report.skipped_no_relevant;
            continue;
        }
        EvalReport::PerQuery pq;
        pq.query_id = qid;
        auto it = run_lists.find(qid);
        if (it != run_lists.end()) {
            const std::vector<ScoredDoc>& hits = *it->second;
            size_t limit = std::min(k, hits.size());
            size_t found = 0;
            for (size_t i = 0; i < limit; ++i) {
                if (qrels.is_relevant(qid, hits[i].doc_id, rel_threshold)) {
                    if (found == 0) {
                        pq.reciprocal_rank = 1.0 / static_cast<double>(i + 1);
                    }
                    ++found;
                }
            }
            pq.recall = static_cast<double>(found) / static_cast<double>(rel_total);
        }
        rr_sum += pq.reciprocal_rank;
        recall_sum += pq.recall;
        report.per_query.push_back(std::move(pq));
    }
    report.evaluated_count = report.per_query.size();
    if (report.evaluated_count == 0) {
        throw data_error("qrels contain no query with a relevant document");
    }
    report.mrr_at_k = rr_sum / static_cast<double>(report.evaluated_count);
    report.recall_at_k = recall_sum / static_cast<double>(report.evaluated_count);
    return report;
}

EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, size_t k, int rel_threshold) {
    return evaluate_run(run, qrels, k, rel_threshold, std::cerr);
}

EvalReport mrr_at_k(const RunFile& run, const Qrels& qrels, size_t k, int rel_threshold) {
    return evaluate_run(run, qrels, k, rel_threshold);
}

EvalReport recall_at_k(const RunFile& run, const Qrels& qrels, size_t k, int rel_threshold) {
    return evaluate_run(run, qrels, k, rel_threshold);
}

namespace {

void write_metric_rows(std::ostream& out, const std::string& label, const EvalReport& report,
                       bool use_rr) {
    char buf[64];
    for (const EvalReport::PerQuery& pq : report.per_query) {
        double value = use_rr ? pq.reciprocal_rank : pq.recall;
        std::snprintf(buf, sizeof(buf), "%.6f", value);
        out << label << '\t' << pq.query_id << '\t' << buf << '\n';
    }
    double aggregate = use_rr ? report.mrr_at_k : report.recall_at_k;
    std::snprintf(buf, sizeof(buf), "%.6f", aggregate);
    out << label << '\t' << "ALL" << '\t' << buf << '\n';
}

}  // namespace

void write_eval_report(const EvalReport& report, Metric metric, std::ostream& out) {
    std::string k_str = std::to_string(report.k);
    if (metric == Metric::mrr || metric == Metric::both) {
        write_metric_rows(out, "mrr@" + k_str, report, true);
    }
    if (metric == Metric::recall || metric == Metric::both) {
        write_metric_rows(out, "recall@" + k_str, report, false);
    }
}

std::vector<LanguageStats> load_language_stats(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open language stats file: " + path.string());
    }
    std::vector<LanguageStats> stats;
    std::unordered_map<std::string, size_t> by_language;
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw data_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() != 4) {
            fail("expected 4 tab-separated fields `language article_count system_tag score`, "
                 "got " +
                 std::to_string(fields.size()));
        }
        const std::string& language = fields[0];
        if (language.empty()) {
            fail("empty language name");
        }
        uint64_t count = 0;
        {
            const char* first = fields[1].data();
            const char* last = first + fields[1].size();
            auto [ptr, ec] = std::from_chars(first, last, count);
            if (ec != std::errc() || ptr != last || count == 0) {
                fail("article count must be a positive integer");
            }
        }
        const std::string& tag = fields[2];
        if (tag.empty()) {
            fail("empty system tag");
        }
        double score = 0.0;
        {
            const char* first = fields[3].data();
            const char* last = first + fields[3].size();
            auto [ptr, ec] = std::from_chars(first, last, score);
            if (ec != std::errc() || ptr != last || !std::isfinite(score) || score < 0.0) {
                fail("score must be a finite number >= 0");
            }
        }
        auto [it, inserted] = by_language.emplace(language, stats.size());
        if (inserted) {
            LanguageStats ls;
            ls.language = language;
            ls.wiki_article_count = count;
            stats.push_back(std::move(ls));
        }
        LanguageStats& ls = stats[it->second];
        if (ls.wiki_article_count != count) {
            fail("article count for language `" + language + "` disagrees with an earlier row");
        }
        if (!ls.scores.emplace(tag, score).second) {
            fail("duplicate system `" + tag + "` for language `" + language + "`");
        }
    }
    if (in.bad()) {
        throw data_error("i/o error reading language stats file: " + path.string());
    }
    return stats;
}

std::map<std::string, std::map<std::string, double>> normalize_scores(
    const std::vector<LanguageStats>& stats,
    const std::map<std::string, std::string>& reference_tag_per_language) {
    std::map<std::string, std::map<std::string, double>> out;
    for (const LanguageStats& ls : stats) {
        if (out.find(ls.language) != out.end()) {
            throw data_error("duplicate language `" + ls.language + "` in stats");
        }
        auto ref_it = reference_tag_per_language.find(ls.language);
        if (ref_it == reference_tag_per_language.end()) {
            throw data_error("no reference system designated for language `" + ls.language + "`");
        }
        auto score_it = ls.scores.find(ref_it->second);
        if (score_it == ls.scores.end()) {
            throw data_error("reference system `" + ref_it->second +
                             "` has no score for language `" + ls.language + "`");
        }
        double ref_score = score_it->second;
        if (!(ref_score > 0.0)) {
            throw data_error("reference score is not positive for language `" + ls.language +
                             "`");
        }
        std::map<std::string, double> normalized;
        for (const auto& [tag, score] : ls.scores) {
            /* The reference maps to exactly 1.0, not score/score. */
            normalized[tag] = tag == ref_it->second ? 1.0 : score / ref_score;
        }
        out.emplace(ls.language, std::move(normalized));
    }
    return out;
}

double pearson_r(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw data_error("pearson_r requires equal-length inputs, got " +
                         std::to_string(xs.size()) + " and " + std::to_string(ys.size()));
    }
    if (xs.size() < 2) {
        throw data_error("pearson_r requires at least 2 points");
    }
    double n = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mean_x;
        double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw data_error("pearson_r undefined for a constant input list");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace lexret
