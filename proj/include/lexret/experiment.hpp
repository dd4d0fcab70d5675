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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lexret/retrieval.hpp"
#include "lexret/tokenizer.hpp"

namespace lexret {

/// One tokenizer condition of the comparison. `tag` names the run and the
/// table row. Per-mechanism fields: `vocab` (wordpiece, required),
/// `lowercase`/`drop_unknown` (wordpiece), `stopwords` file (analyzer,
/// optional; built-in English list otherwise), `fold_case` (whitespace).
struct TokenizerSpec {
    std::string tag;
    Mechanism mechanism = Mechanism::whitespace;
    std::filesystem::path vocab;
    std::filesystem::path stopwords;
    bool lowercase = true;
    bool drop_unknown = true;
    bool fold_case = false;

    /// Loads vocab/stopword files and assembles the runtime config.
    TokenizerConfig make_config() const;
};

/// Hybrid of two earlier runs, addressed by their tags. A fusion's own
/// tag is fuse(<a>,<b>,<alpha>), so later fusions can reference it.
struct FusionSpec {
    std::string a;
    std::string b;
    double alpha = 0.5;
};

/// Cross-language correlation of normalized effectiveness with corpus
/// size. Per language, `system`'s score is normalized by `reference`;
/// languages lacking the reference fall back to `fallback_reference` and
/// are excluded from the correlation itself (their normalizer is not
/// commensurable), though they still appear as table rows.
struct CorrelationSpec {
    std::filesystem::path language_stats;
    std::string system;
    std::string reference;
    std::string fallback_reference;
};

/// Declarative description of a full comparison: index the corpus once
/// per tokenizer, run all queries, fuse designated pairs, evaluate
/// everything, and emit per-system and normalized score tables.
struct ExperimentConfig {
    std::filesystem::path corpus;
    std::filesystem::path queries;
    std::filesystem::path qrels;
    std::filesystem::path out_dir;
    size_t k = 100;
    BM25Params bm25;
    bool include_title = true;
    unsigned threads = 1;
    std::vector<TokenizerSpec> tokenizers;
    std::vector<FusionSpec> fusions;
    /// System whose scores define 1.0 in normalized.tsv.
    std::string reference_tag;
    std::optional<CorrelationSpec> correlation;

    /// Parses the JSON config; relative paths are resolved against the
    /// config file's directory; unknown keys are rejected.
    static ExperimentConfig from_json_file(const std::filesystem::path& path);

    /// Throws data_error on structural problems: no tokenizers, duplicate
    /// or whitespace-containing tags, fusion references to undefined tags,
    /// a reference_tag naming no produced run, or invalid parameters.
    void validate() const;
};

/// Run file name for a tag: `run_<tag>.txt` with characters outside
/// [A-Za-z0-9._-] replaced by `_`.
std::string run_filename(const std::string& tag);

/// Executes the experiment. Writes to out_dir: one run file per system,
/// `table2.tsv` (system, MRR@k, Recall@k), `normalized.tsv` (system,
/// MRR@k, score normalized by reference_tag), and `correlation.tsv` when
/// configured (per-language rows plus a trailing `# pearson_r` line).
/// Outputs are byte-identical for any thread count. Progress and warnings
/// go to `log`.
void run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace lexret
