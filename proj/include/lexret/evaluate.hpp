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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lexret/corpus_io.hpp"
#include "lexret/retrieval.hpp"

namespace lexret {

/// MRR@k and Recall@k for one run against one qrels set.
///
/// Judged queries drive the evaluation: every qrels query with at least
/// one relevant document is scored, contributing 0 when the run has no
/// list for it. Qrels queries with no relevant document are excluded from
/// the aggregates; their count is reported. Run queries absent from the
/// qrels are excluded with a warning.
struct EvalReport {
    struct PerQuery {
        std::string query_id;
        double reciprocal_rank = 0.0;
        double recall = 0.0;
    };

    size_t k = 100;
    int rel_threshold = 1;
    /// Evaluated queries in ascending query_id order.
    std::vector<PerQuery> per_query;
    double mrr_at_k = 0.0;
    double recall_at_k = 0.0;
    size_t evaluated_count = 0;
    size_t skipped_no_relevant = 0;
};

/// Computes both metrics in one pass. Reciprocal rank is 1/r for the
/// first doc with grade >= rel_threshold in the top k, else 0; recall is
/// |relevant in top k| / |relevant|. Aggregates are arithmetic means over
/// evaluated queries. Throws data_error when the qrels contain no query
/// with a relevant document. Warnings go to the given stream.
EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, size_t k, int rel_threshold,
                        std::ostream& warnings);
EvalReport evaluate_run(const RunFile& run, const Qrels& qrels, size_t k = 100,
                        int rel_threshold = 1);

/// Named per-metric entry points; both return the full report.
EvalReport mrr_at_k(const RunFile& run, const Qrels& qrels, size_t k = 100,
                    int rel_threshold = 1);
EvalReport recall_at_k(const RunFile& run, const Qrels& qrels, size_t k = 100,
                       int rel_threshold = 1);

enum class Metric { mrr, recall, both };

/// TSV rows `<metric>@<k>  <query_id>  <value>` per query plus one `ALL`
/// aggregate row per selected metric, values with six decimal places.
void write_eval_report(const EvalReport& report, Metric metric, std::ostream& out);

/// Per-language effectiveness joined with Wikipedia size.
struct LanguageStats {
    std::string language;
    uint64_t wiki_article_count = 0;
    /// System tag -> MRR@k.
    std::map<std::string, double> scores;
};

/// Reads TSV rows `language  article_count  system_tag  score`. Blank
/// lines and lines starting with `#` are skipped. Languages keep first-
/// appearance order; all rows of a language must agree on a positive
/// article count; duplicate (language, system) pairs are rejected.
std::vector<LanguageStats> load_language_stats(const std::filesystem::path& path);

/// normalized(lang, sys) = scores[sys] / scores[reference_tag(lang)]; the
/// reference system maps to exactly 1.0. Throws data_error naming the
/// language when its reference tag is missing, its reference score is not
/// positive, or the language has no entry in the reference map.
std::map<std::string, std::map<std::string, double>> normalize_scores(
    const std::vector<LanguageStats>& stats,
    const std::map<std::string, std::string>& reference_tag_per_language);

/// Sample Pearson correlation coefficient. Requires equal lengths >= 2;
/// throws data_error on length mismatch, short input, or a constant list
/// (undefined correlation).
double pearson_r(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace lexret
