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
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexret {

struct Document {
    std::string doc_id;
    std::string title;  // may be empty
    std::string body;
};

struct Query {
    std::string query_id;
    std::string text;
};

/// Relevance judgments. A document is relevant iff grade >= threshold.
struct Qrels {
    // query_id -> doc_id -> grade; ordered for deterministic iteration.
    std::map<std::string, std::map<std::string, int>> judgments;

    bool is_relevant(const std::string& query_id, const std::string& doc_id,
                     int threshold = 1) const;
    size_t relevant_count(const std::string& query_id, int threshold = 1) const;
};

/// Streaming JSONL corpus reader: one object per line with string fields
/// `id`, `title`, `text`. Holds one document at a time plus the set of ids
/// seen so far (for duplicate detection).
class CorpusReader {
public:
    explicit CorpusReader(const std::filesystem::path& path);

    /// Next document in file order, or nullopt at end of file.
    /// Throws data_error on malformed JSON (naming the line number),
    /// missing/ill-typed fields, or a duplicate id.
    std::optional<Document> next();

    size_t line_number() const { return lineno_; }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::string line_;
    size_t lineno_ = 0;
    std::unordered_set<std::string> seen_ids_;
};

/// Entire corpus in memory; convenience over CorpusReader for small inputs.
std::vector<Document> load_corpus(const std::filesystem::path& path);

/// One document per line as {"id":…,"title":…,"text":…}. Inverse of
/// load_corpus up to JSON key order.
void write_corpus(const std::vector<Document>& docs, const std::filesystem::path& path);

/// TSV `query_id<TAB>text`, split on the first tab; empty lines skipped.
std::vector<Query> load_queries(const std::filesystem::path& path);

/// TREC qrels `query_id 0 doc_id grade` (whitespace-separated, second column
/// ignored). A later duplicate (query, doc) pair overrides the earlier one
/// and emits a warning to `warnings`.
Qrels load_qrels(const std::filesystem::path& path, std::ostream& warnings);
Qrels load_qrels(const std::filesystem::path& path);

}  // namespace lexret
