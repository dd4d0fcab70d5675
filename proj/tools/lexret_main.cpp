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
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lexret/corpus_io.hpp"
#include "lexret/errors.hpp"
#include "lexret/evaluate.hpp"
#include "lexret/experiment.hpp"
#include "lexret/fusion.hpp"
#include "lexret/index.hpp"
#include "lexret/retrieval.hpp"
#include "lexret/tokenizer.hpp"
#include "lexret/wordpiece_trainer.hpp"

namespace {

/* Tokenizer flags shared by `index` and `search`; `search` must rebuild
 * the exact config the index was built with (the index stores only its
 * fingerprint, not the vocabulary itself). */
struct TokenizerFlags {
    std::string mechanism;
    std::string vocab;
    std::string stopwords;
    bool no_lowercase = false;
    bool keep_unk = false;
    bool fold_case = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--tokenizer", mechanism, "Tokenizer mechanism")
            ->required()
            ->check(CLI::IsMember({"whitespace", "analyzer", "wordpiece"}));
        cmd.add_option("--vocab", vocab, "WordPiece vocabulary file (wordpiece only)");
        cmd.add_option("--stopwords", stopwords,
                       "Stopword file, one word per line (analyzer only; built-in English "
                       "list by default)");
        cmd.add_flag("--no-lowercase", no_lowercase,
                     "Skip lowercasing and accent stripping (wordpiece only)");
        cmd.add_flag("--keep-unk", keep_unk,
                     "Emit [UNK] tokens instead of dropping them (wordpiece only)");
        cmd.add_flag("--fold-case", fold_case, "Lowercase tokens (whitespace only)");
    }

    lexret::TokenizerConfig make_config() const {
        lexret::TokenizerSpec spec;
        spec.tag = mechanism;
        spec.mechanism = lexret::mechanism_from_name(mechanism);
        spec.vocab = vocab;
        spec.stopwords = stopwords;
        spec.lowercase = !no_lowercase;
        spec.drop_unknown = !keep_unk;
        spec.fold_case = fold_case;
        return spec.make_config();
    }
};

struct IndexArgs {
    std::string corpus;
    std::string out;
    TokenizerFlags tokenizer;
    bool no_title = false;
    unsigned threads = 1;
};

struct SearchArgs {
    std::string index_dir;
    std::string queries;
    std::string out;
    TokenizerFlags tokenizer;
    size_t k = 100;
    double k1 = 0.9;
    double b = 0.4;
    std::string tag;
    unsigned threads = 1;
};

struct TrainArgs {
    std::string corpus;
    uint32_t size = 0;
    uint64_t min_freq = 2;
    std::string out;
    bool no_lowercase = false;
};

struct FuseArgs {
    std::string run_a;
    std::string run_b;
    double alpha = 0.5;
    size_t k = 100;
    bool raw = false;
    std::string out;
};

struct EvalArgs {
    std::string run;
    std::string qrels;
    std::string metric = "both";
    size_t k = 100;
    int threshold = 1;
    std::string out;
};

struct ExperimentArgs {
    std::string config;
    unsigned threads = 0;
    bool threads_set = false;
};

int cmd_index(const IndexArgs& args) {
    lexret::TokenizerConfig config = args.tokenizer.make_config();
    lexret::CorpusReader reader(args.corpus);
    lexret::InvertedIndex index =
        lexret::InvertedIndex::build(reader, config, !args.no_title, args.threads);
    index.save(args.out);
    const lexret::IndexStats& stats = index.stats();
    std::cout << "indexed " << stats.doc_count << " documents, " << index.terms().size()
              << " terms, " << stats.total_tokens << " tokens -> " << args.out << '\n';
    return 0;
}

int cmd_search(const SearchArgs& args) {
    lexret::InvertedIndex index = lexret::InvertedIndex::load(args.index_dir);
    lexret::TokenizerConfig config = args.tokenizer.make_config();
    std::vector<lexret::Query> queries = lexret::load_queries(args.queries);
    lexret::BM25Params params;
    params.k1 = args.k1;
    params.b = args.b;
    std::string tag = args.tag.empty() ? args.tokenizer.mechanism : args.tag;
    lexret::RunFile run =
        lexret::run_queries(index, queries, config, params, args.k, tag, args.threads);
    lexret::save_run(run, args.out);
    std::cout << "ran " << queries.size() << " queries -> " << args.out << '\n';
    return 0;
}

int cmd_train_vocab(const TrainArgs& args) {
    lexret::TrainerOptions options;
    options.vocab_size = args.size;
    options.min_pair_freq = args.min_freq;
    options.lowercase = !args.no_lowercase;
    lexret::CorpusReader reader(args.corpus);
    lexret::WordPieceVocab vocab = lexret::train_wordpiece(reader, options);
    lexret::save_vocab(vocab, args.out);
    std::cout << "trained vocabulary of " << vocab.entries().size() << " entries -> " << args.out
              << '\n';
    return 0;
}

int cmd_fuse(const FuseArgs& args) {
    lexret::RunFile run_a = lexret::load_run(args.run_a);
    lexret::RunFile run_b = lexret::load_run(args.run_b);
    lexret::FusionParams params;
    params.alpha = args.alpha;
    params.k = args.k;
    params.raw_scores = args.raw;
    lexret::RunFile fused = lexret::fuse(run_a, run_b, params);
    lexret::save_run(fused, args.out);
    std::cout << "fused " << fused.queries.size() << " queries as `" << fused.run_tag << "` -> "
              << args.out << '\n';
    return 0;
}

int cmd_eval(const EvalArgs& args) {
    lexret::RunFile run = lexret::load_run(args.run);
    lexret::Qrels qrels = lexret::load_qrels(args.qrels);
    lexret::EvalReport report =
        lexret::evaluate_run(run, qrels, args.k, args.threshold, std::cerr);
    lexret::Metric metric = lexret::Metric::both;
    if (args.metric == "mrr") {
        metric = lexret::Metric::mrr;
    } else if (args.metric == "recall") {
        metric = lexret::Metric::recall;
    }
    if (args.out.empty()) {
        lexret::write_eval_report(report, metric, std::cout);
    } else {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) {
            throw lexret::data_error("cannot open output file for writing: " + args.out);
        }
        lexret::write_eval_report(report, metric, out);
        out.flush();
        if (!out) {
            throw lexret::data_error("failed writing output file: " + args.out);
        }
    }
    if (report.skipped_no_relevant > 0) {
        std::cerr << report.skipped_no_relevant
                  << " qrels queries had no relevant documents and were excluded\n";
    }
    return 0;
}

int cmd_experiment(const ExperimentArgs& args) {
    lexret::ExperimentConfig config = lexret::ExperimentConfig::from_json_file(args.config);
    if (args.threads_set) {
        config.threads = args.threads;
    }
    lexret::run_experiment(config, std::cerr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexical retrieval toolkit: tokenize, index, search, fuse, evaluate"};
    app.require_subcommand(1);

    IndexArgs index_args;
    CLI::App* index_cmd = app.add_subcommand("index", "Build an inverted index from a corpus");
    index_cmd->add_option("--corpus", index_args.corpus, "Corpus JSONL file")->required();
    index_cmd->add_option("--out", index_args.out, "Output index directory")->required();
    index_args.tokenizer.attach(*index_cmd);
    index_cmd->add_flag("--no-title", index_args.no_title, "Index document bodies only");
    index_cmd->add_option("--threads", index_args.threads, "Worker threads (default 1)");

    SearchArgs search_args;
    CLI::App* search_cmd = app.add_subcommand("search", "Run queries against an index");
    search_cmd->add_option("--index", search_args.index_dir, "Index directory")->required();
    search_cmd->add_option("--queries", search_args.queries, "Query TSV file (id<TAB>text)")
        ->required();
    search_cmd->add_option("--out", search_args.out, "Output run file")->required();
    search_args.tokenizer.attach(*search_cmd);
    search_cmd->add_option("--k", search_args.k, "Hits per query (default 100)");
    search_cmd->add_option("--k1", search_args.k1, "BM25 k1 (default 0.9)");
    search_cmd->add_option("--b", search_args.b, "BM25 b (default 0.4)");
    search_cmd->add_option("--tag", search_args.tag,
                           "Run tag (defaults to the tokenizer mechanism)");
    search_cmd->add_option("--threads", search_args.threads, "Worker threads (default 1)");

    TrainArgs train_args;
    CLI::App* train_cmd =
        app.add_subcommand("train-vocab", "Train a WordPiece vocabulary from a corpus");
    train_cmd->add_option("--corpus", train_args.corpus, "Corpus JSONL file")->required();
    train_cmd->add_option("--size", train_args.size, "Total vocabulary size")->required();
    train_cmd->add_option("--min-freq", train_args.min_freq,
                          "Minimum pair frequency to merge (default 2)");
    train_cmd->add_option("--out", train_args.out, "Output vocabulary file")->required();
    train_cmd->add_flag("--no-lowercase", train_args.no_lowercase,
                        "Skip lowercasing and accent stripping");

    FuseArgs fuse_args;
    CLI::App* fuse_cmd = app.add_subcommand("fuse", "Fuse two runs into a hybrid run");
    fuse_cmd->add_option("--a", fuse_args.run_a, "First run file")->required();
    fuse_cmd->add_option("--b", fuse_args.run_b, "Second run file")->required();
    fuse_cmd->add_option("--alpha", fuse_args.alpha, "Weight of the first run (default 0.5)");
    fuse_cmd->add_option("--k", fuse_args.k, "Hits per query (default 100)");
    fuse_cmd->add_flag("--raw", fuse_args.raw, "Combine raw scores without normalization");
    fuse_cmd->add_option("--out", fuse_args.out, "Output run file")->required();

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a run against qrels");
    eval_cmd->add_option("--run", eval_args.run, "Run file")->required();
    eval_cmd->add_option("--qrels", eval_args.qrels, "Qrels file")->required();
    eval_cmd->add_option("--metric", eval_args.metric, "Metric to report (default both)")
        ->check(CLI::IsMember({"mrr", "recall", "both"}));
    eval_cmd->add_option("--k", eval_args.k, "Cutoff (default 100)");
    eval_cmd->add_option("--threshold", eval_args.threshold,
                         "Minimum grade counted as relevant (default 1)");
    eval_cmd->add_option("--out", eval_args.out, "Output TSV file (default stdout)");

    ExperimentArgs experiment_args;
    CLI::App* experiment_cmd =
        app.add_subcommand("experiment", "Run a full tokenizer comparison from a JSON config");
    experiment_cmd->add_option("--config", experiment_args.config, "Experiment JSON config")
        ->required();
    CLI::Option* threads_opt = experiment_cmd->add_option(
        "--threads", experiment_args.threads, "Override the config's thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(lexret::errc::usage);
    }
    experiment_args.threads_set = threads_opt->count() > 0;

    try {
        if (app.got_subcommand(index_cmd)) {
            return cmd_index(index_args);
        }
        if (app.got_subcommand(search_cmd)) {
            return cmd_search(search_args);
        }
        if (app.got_subcommand(train_cmd)) {
            return cmd_train_vocab(train_args);
        }
        if (app.got_subcommand(fuse_cmd)) {
            return cmd_fuse(fuse_args);
        }
        if (app.got_subcommand(eval_cmd)) {
            return cmd_eval(eval_args);
        }
        if (app.got_subcommand(experiment_cmd)) {
            return cmd_experiment(experiment_args);
        }
        std::cerr << "error: no subcommand selected\n";
        return static_cast<int>(lexret::errc::usage);
    } catch (const lexret::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(lexret::errc::internal);
    }
}
