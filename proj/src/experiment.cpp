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
#include "lexret/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "lexret/corpus_io.hpp"
#include "lexret/errors.hpp"
#include "lexret/evaluate.hpp"
#include "lexret/fusion.hpp"
#include "lexret/index.hpp"

namespace lexret {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
    throw data_error("experiment config: " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            config_error("unknown key `" + item.key() + "` in " + where);
        }
    }
}

const json* find_key(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    const json* value = find_key(obj, key);
    if (value == nullptr) {
        config_error("missing required key `" + std::string(key) + "` in " + where);
    }
    if (!value->is_string()) {
        config_error("`" + std::string(key) + "` in " + where + " must be a string");
    }
    return value->get<std::string>();
}

std::string get_string_or(const json& obj, const char* key, const std::string& where,
                          const std::string& fallback) {
    if (find_key(obj, key) == nullptr) {
        return fallback;
    }
    return get_string(obj, key, where);
}

bool get_bool_or(const json& obj, const char* key, const std::string& where, bool fallback) {
    const json* value = find_key(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_boolean()) {
        config_error("`" + std::string(key) + "` in " + where + " must be a boolean");
    }
    return value->get<bool>();
}

uint64_t get_uint_or(const json& obj, const char* key, const std::string& where,
                     uint64_t fallback) {
    const json* value = find_key(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_number_unsigned()) {
        config_error("`" + std::string(key) + "` in " + where +
                     " must be a non-negative integer");
    }
    return value->get<uint64_t>();
}

double get_double_or(const json& obj, const char* key, const std::string& where,
                     double fallback) {
    const json* value = find_key(obj, key);
    if (value == nullptr) {
        return fallback;
    }
    if (!value->is_number()) {
        config_error("`" + std::string(key) + "` in " + where + " must be a number");
    }
    return value->get<double>();
}

std::string format6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot open output file for writing: " + path.string());
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw data_error("failed writing output file: " + path.string());
    }
}

}  // namespace

TokenizerConfig TokenizerSpec::make_config() const {
    switch (mechanism) {
        case Mechanism::whitespace:
            return TokenizerConfig::whitespace(fold_case);
        case Mechanism::analyzer: {
            auto list = stopwords.empty()
                            ? std::make_shared<const std::vector<std::string>>(
                                  default_english_stopwords())
                            : std::make_shared<const std::vector<std::string>>(
                                  load_stopwords(stopwords));
            return TokenizerConfig::analyzer(std::move(list));
        }
        case Mechanism::wordpiece: {
            if (vocab.empty()) {
                throw data_error("tokenizer `" + tag + "` requires a vocab file");
            }
            auto loaded = std::make_shared<const WordPieceVocab>(load_vocab(vocab));
            return TokenizerConfig::wordpiece(std::move(loaded), lowercase, drop_unknown);
        }
    }
    throw internal_error("unknown tokenizer mechanism");
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open experiment config: " + path.string());
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw data_error("experiment config " + path.string() + ": " + e.what());
    }
    if (!root.is_object()) {
        config_error("top level must be an object");
    }
    check_keys(root,
               {"corpus", "queries", "qrels", "out", "k", "bm25", "include_title", "threads",
                "tokenizers", "fusions", "reference_tag", "correlation"},
               "config");

    ExperimentConfig config;
    std::filesystem::path base = path.parent_path();
    auto resolve = [&](const std::string& raw) {
        std::filesystem::path p(raw);
        return p.is_absolute() ? p : base / p;
    };

    config.corpus = resolve(get_string(root, "corpus", "config"));
    config.queries = resolve(get_string(root, "queries", "config"));
    config.qrels = resolve(get_string(root, "qrels", "config"));
    config.out_dir = resolve(get_string(root, "out", "config"));
    config.k = static_cast<size_t>(get_uint_or(root, "k", "config", 100));
    config.include_title = get_bool_or(root, "include_title", "config", true);
    config.threads = static_cast<unsigned>(get_uint_or(root, "threads", "config", 1));
    config.reference_tag = get_string(root, "reference_tag", "config");

    if (const json* bm25 = find_key(root, "bm25")) {
        if (!bm25->is_object()) {
            config_error("`bm25` must be an object");
        }
        check_keys(*bm25, {"k1", "b"}, "bm25");
        config.bm25.k1 = get_double_or(*bm25, "k1", "bm25", config.bm25.k1);
        config.bm25.b = get_double_or(*bm25, "b", "bm25", config.bm25.b);
    }

    const json* tokenizers = find_key(root, "tokenizers");
    if (tokenizers == nullptr || !tokenizers->is_array()) {
        config_error("`tokenizers` must be an array");
    }
    for (const json& entry : *tokenizers) {
        if (!entry.is_object()) {
            config_error("each tokenizer must be an object");
        }
        TokenizerSpec spec;
        spec.tag = get_string(entry, "tag", "tokenizer");
        std::string where = "tokenizer `" + spec.tag + "`";
        spec.mechanism = mechanism_from_name(get_string(entry, "mechanism", where));
        switch (spec.mechanism) {
            case Mechanism::whitespace:
                check_keys(entry, {"tag", "mechanism", "fold_case"}, where);
                spec.fold_case = get_bool_or(entry, "fold_case", where, false);
                break;
            case Mechanism::analyzer: {
                check_keys(entry, {"tag", "mechanism", "stopwords"}, where);
                std::string stopwords = get_string_or(entry, "stopwords", where, "");
                if (!stopwords.empty()) {
                    spec.stopwords = resolve(stopwords);
                }
                break;
            }
            case Mechanism::wordpiece:
                check_keys(entry, {"tag", "mechanism", "vocab", "lowercase", "drop_unknown"},
                           where);
                spec.vocab = resolve(get_string(entry, "vocab", where));
                spec.lowercase = get_bool_or(entry, "lowercase", where, true);
                spec.drop_unknown = get_bool_or(entry, "drop_unknown", where, true);
                break;
        }
        config.tokenizers.push_back(std::move(spec));
    }

    if (const json* fusions = find_key(root, "fusions")) {
        if (!fusions->is_array()) {
            config_error("`fusions` must be an array");
        }
        for (const json& entry : *fusions) {
            if (!entry.is_object()) {
                config_error("each fusion must be an object");
            }
            check_keys(entry, {"a", "b", "alpha"}, "fusion");
            FusionSpec spec;
            spec.a = get_string(entry, "a", "fusion");
            spec.b = get_string(entry, "b", "fusion");
            spec.alpha = get_double_or(entry, "alpha", "fusion", 0.5);
            config.fusions.push_back(std::move(spec));
        }
    }

    if (const json* correlation = find_key(root, "correlation")) {
        if (!correlation->is_object()) {
            config_error("`correlation` must be an object");
        }
        check_keys(*correlation,
                   {"language_stats", "system", "reference", "fallback_reference"},
                   "correlation");
        CorrelationSpec spec;
        spec.language_stats = resolve(get_string(*correlation, "language_stats", "correlation"));
        spec.system = get_string(*correlation, "system", "correlation");
        spec.reference = get_string(*correlation, "reference", "correlation");
        spec.fallback_reference =
            get_string_or(*correlation, "fallback_reference", "correlation", "");
        config.correlation = std::move(spec);
    }

    config.validate();
    return config;
}

std::string run_filename(const std::string& tag) {
    std::string name = "run_";
    for (char c : tag) {
        bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
        name += keep ? c : '_';
    }
    name += ".txt";
    return name;
}

void ExperimentConfig::validate() const {
    if (corpus.empty() || queries.empty() || qrels.empty() || out_dir.empty()) {
        config_error("corpus, queries, qrels, and out are required");
    }
    if (k == 0) {
        config_error("k must be >= 1");
    }
    bm25.validate();
    if (tokenizers.empty()) {
        config_error("at least one tokenizer is required");
    }
    std::set<std::string> tags;
    std::set<std::string> filenames;
    auto claim_tag = [&](const std::string& tag) {
        if (tag.empty()) {
            config_error("empty system tag");
        }
        for (char c : tag) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                config_error("tag `" + tag + "` contains whitespace");
            }
        }
        if (!tags.insert(tag).second) {
            config_error("duplicate system tag `" + tag + "`");
        }
        if (!filenames.insert(run_filename(tag)).second) {
            config_error("tag `" + tag + "` collides with another tag's run file name `" +
                         run_filename(tag) + "`");
        }
    };
    for (const TokenizerSpec& spec : tokenizers) {
        claim_tag(spec.tag);
        if (spec.mechanism == Mechanism::wordpiece && spec.vocab.empty()) {
            config_error("tokenizer `" + spec.tag + "` requires a vocab file");
        }
    }
    for (const FusionSpec& spec : fusions) {
        if (tags.find(spec.a) == tags.end()) {
            config_error("fusion input `" + spec.a + "` does not name an earlier system");
        }
        if (tags.find(spec.b) == tags.end()) {
            config_error("fusion input `" + spec.b + "` does not name an earlier system");
        }
        FusionParams params;
        params.alpha = spec.alpha;
        params.k = k;
        params.validate();
        claim_tag(fused_run_tag(spec.a, spec.b, spec.alpha));
    }
    if (tags.find(reference_tag) == tags.end()) {
        config_error("reference_tag `" + reference_tag + "` does not name a produced run");
    }
    if (correlation.has_value()) {
        if (correlation->language_stats.empty()) {
            config_error("correlation requires a language_stats file");
        }
        if (correlation->system.empty() || correlation->reference.empty()) {
            config_error("correlation requires `system` and `reference` tags");
        }
    }
}

namespace {

void write_correlation_table(const CorrelationSpec& spec, const std::filesystem::path& out_path) {
    std::vector<LanguageStats> stats = load_language_stats(spec.language_stats);
    std::map<std::string, std::string> reference_per_language;
    std::map<std::string, bool> used_fallback;
    for (const LanguageStats& ls : stats) {
        if (ls.scores.find(spec.reference) != ls.scores.end()) {
            reference_per_language[ls.language] = spec.reference;
            used_fallback[ls.language] = false;
        } else if (!spec.fallback_reference.empty() &&
                   ls.scores.find(spec.fallback_reference) != ls.scores.end()) {
            reference_per_language[ls.language] = spec.fallback_reference;
            used_fallback[ls.language] = true;
        } else {
            throw data_error("language `" + ls.language + "` has neither reference system `" +
                             spec.reference + "` nor a usable fallback");
        }
    }
    auto normalized = normalize_scores(stats, reference_per_language);

    std::ofstream out = open_output(out_path);
    out << "language\tlog_articles\tnormalized\treference\tin_correlation\n";
    std::vector<double> xs;
    std::vector<double> ys;
    for (const LanguageStats& ls : stats) {
        const auto& lang_scores = normalized.at(ls.language);
        auto it = lang_scores.find(spec.system);
        if (it == lang_scores.end()) {
            throw data_error("system `" + spec.system + "` has no score for language `" +
                             ls.language + "`");
        }
        double log_articles = std::log(static_cast<double>(ls.wiki_article_count));
        bool fallback = used_fallback.at(ls.language);
        /* Fallback-normalized rows use a different yardstick; they appear
         * in the table but stay out of the correlation. */
        if (!fallback) {
            xs.push_back(log_articles);
            ys.push_back(it->second);
        }
        out << ls.language << '\t' << format6(log_articles) << '\t' << format6(it->second)
            << '\t' << reference_per_language.at(ls.language) << '\t'
            << (fallback ? "no" : "yes") << '\n';
    }
    double r = pearson_r(xs, ys);
    out << "# pearson_r\t" << format6(r) << '\n';
    finish_output(out, out_path);
}

}  // namespace

void run_experiment(const ExperimentConfig& config, std::ostream& log) {
    config.validate();
    std::vector<Document> docs = load_corpus(config.corpus);
    std::vector<Query> queries = load_queries(config.queries);
    Qrels qrels = load_qrels(config.qrels, log);
    std::filesystem::create_directories(config.out_dir);

    std::vector<std::pair<std::string, RunFile>> runs;
    auto run_by_tag = [&](const std::string& tag) -> const RunFile& {
        for (const auto& [t, run] : runs) {
            if (t == tag) {
                return run;
            }
        }
        throw internal_error("run `" + tag + "` not produced");
    };

    for (const TokenizerSpec& spec : config.tokenizers) {
        TokenizerConfig tc = spec.make_config();
        log << "indexing `" << spec.tag << "` (" << mechanism_name(spec.mechanism) << ")\n";
        InvertedIndex index =
            InvertedIndex::build(docs, tc, config.include_title, config.threads);
        log << "running " << queries.size() << " queries against `" << spec.tag << "`\n";
        RunFile run = run_queries(index, queries, tc, config.bm25, config.k, spec.tag,
                                  config.threads);
        save_run(run, config.out_dir / run_filename(spec.tag));
        runs.emplace_back(spec.tag, std::move(run));
    }
    for (const FusionSpec& spec : config.fusions) {
        FusionParams params;
        params.alpha = spec.alpha;
        params.k = config.k;
        log << "fusing `" << spec.a << "` + `" << spec.b << "`\n";
        RunFile fused = fuse(run_by_tag(spec.a), run_by_tag(spec.b), params);
        std::string tag = fused.run_tag;
        save_run(fused, config.out_dir / run_filename(tag));
        runs.emplace_back(std::move(tag), std::move(fused));
    }

    std::vector<std::pair<std::string, EvalReport>> reports;
    reports.reserve(runs.size());
    for (const auto& [tag, run] : runs) {
        reports.emplace_back(tag, evaluate_run(run, qrels, config.k, 1, log));
    }

    std::string k_str = std::to_string(config.k);
    {
        std::filesystem::path table_path = config.out_dir / "table2.tsv";
        std::ofstream out = open_output(table_path);
        out << "system\tmrr@" << k_str << "\trecall@" << k_str << '\n';
        for (const auto& [tag, report] : reports) {
            out << tag << '\t' << format6(report.mrr_at_k) << '\t' << format6(report.recall_at_k)
                << '\n';
        }
        finish_output(out, table_path);
    }
    {
        double reference_mrr = 0.0;
        for (const auto& [tag, report] : reports) {
            if (tag == config.reference_tag) {
                reference_mrr = report.mrr_at_k;
            }
        }
        if (!(reference_mrr > 0.0)) {
            throw data_error("reference system `" + config.reference_tag +
                             "` has MRR 0; cannot normalize");
        }
        std::filesystem::path norm_path = config.out_dir / "normalized.tsv";
        std::ofstream out = open_output(norm_path);
        out << "system\tmrr@" << k_str << "\tnormalized\n";
        for (const auto& [tag, report] : reports) {
            double normalized =
                tag == config.reference_tag ? 1.0 : report.mrr_at_k / reference_mrr;
            out << tag << '\t' << format6(report.mrr_at_k) << '\t' << format6(normalized)
                << '\n';
        }
        finish_output(out, norm_path);
    }
    if (config.correlation.has_value()) {
        write_correlation_table(*config.correlation, config.out_dir / "correlation.tsv");
    }
    log << "wrote " << (runs.size() + 2 + (config.correlation.has_value() ? 1 : 0))
        << " files to " << config.out_dir.string() << "\n";
}

}  // namespace lexret
