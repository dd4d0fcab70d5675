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
#include "lexret/corpus_io.hpp"

#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lexret/errors.hpp"

namespace lexret {

namespace {

using nlohmann::json;

std::string location(const std::filesystem::path& path, size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
}

std::string require_string_field(const json& object, const char* key,
                                 const std::filesystem::path& path, size_t lineno) {
    auto it = object.find(key);
    if (it == object.end()) {
        throw data_error(location(path, lineno) + ": missing field '" + key + "'");
    }
    if (!it->is_string()) {
        throw data_error(location(path, lineno) + ": field '" + key + "' is not a string");
    }
    return it->get<std::string>();
}

}  // namespace

bool Qrels::is_relevant(const std::string& query_id, const std::string& doc_id,
                        int threshold) const {
    auto qit = judgments.find(query_id);
    if (qit == judgments.end()) return false;
    auto dit = qit->second.find(doc_id);
    return dit != qit->second.end() && dit->second >= threshold;
}

size_t Qrels::relevant_count(const std::string& query_id, int threshold) const {
    auto qit = judgments.find(query_id);
    if (qit == judgments.end()) return 0;
    size_t count = 0;
    for (const auto& [doc_id, grade] : qit->second) {
        if (grade >= threshold) ++count;
    }
    return count;
}

CorpusReader::CorpusReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw data_error("cannot open corpus file: " + path.string());
}

std::optional<Document> CorpusReader::next() {
    // Blank lines are skipped, as in the other line-oriented readers.
    do {
        if (!std::getline(in_, line_)) {
            if (in_.bad()) throw data_error("read error on corpus file: " + path_.string());
            return std::nullopt;
        }
        ++lineno_;
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    } while (line_.empty());
    json object;
    try {
        object = json::parse(line_);
    } catch (const json::parse_error& e) {
        throw data_error(location(path_, lineno_) + ": malformed JSON: " + e.what());
    }
    if (!object.is_object()) {
        throw data_error(location(path_, lineno_) + ": line is not a JSON object");
    }
    Document doc;
    doc.doc_id = require_string_field(object, "id", path_, lineno_);
    doc.title = require_string_field(object, "title", path_, lineno_);
    doc.body = require_string_field(object, "text", path_, lineno_);
    if (doc.doc_id.empty()) {
        throw data_error(location(path_, lineno_) + ": empty document id");
    }
    if (!seen_ids_.insert(doc.doc_id).second) {
        throw data_error(location(path_, lineno_) + ": duplicate document id '" + doc.doc_id +
                         "'");
    }
    return doc;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    CorpusReader reader(path);
    std::vector<Document> docs;
    while (auto doc = reader.next()) docs.push_back(std::move(*doc));
    return docs;
}

void write_corpus(const std::vector<Document>& docs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot open corpus file for writing: " + path.string());
    for (const Document& doc : docs) {
        json object;
        object["id"] = doc.doc_id;
        object["title"] = doc.title;
        object["text"] = doc.body;
        out << object.dump() << '\n';
    }
    out.flush();
    if (!out) throw data_error("write error on corpus file: " + path.string());
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open query file: " + path.string());
    std::vector<Query> queries;
    std::unordered_set<std::string> seen;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw data_error(location(path, lineno) + ": expected 'query_id<TAB>text'");
        }
        Query query{line.substr(0, tab), line.substr(tab + 1)};
        if (query.query_id.empty()) {
            throw data_error(location(path, lineno) + ": empty query id");
        }
        if (!seen.insert(query.query_id).second) {
            throw data_error(location(path, lineno) + ": duplicate query id '" +
                             query.query_id + "'");
        }
        queries.push_back(std::move(query));
    }
    if (in.bad()) throw data_error("read error on query file: " + path.string());
    return queries;
}

Qrels load_qrels(const std::filesystem::path& path, std::ostream& warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open qrels file: " + path.string());
    Qrels qrels;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string query_id, ignored, doc_id, grade_text, extra;
        if (!(fields >> query_id >> ignored >> doc_id >> grade_text)) {
            throw data_error(location(path, lineno) +
                             ": expected 'query_id 0 doc_id grade'");
        }
        if (fields >> extra) {
            throw data_error(location(path, lineno) + ": trailing field '" + extra + "'");
        }
        int grade = 0;
        try {
            size_t consumed = 0;
            grade = std::stoi(grade_text, &consumed);
            if (consumed != grade_text.size()) throw std::invalid_argument(grade_text);
        } catch (const std::exception&) {
            throw data_error(location(path, lineno) + ": non-integer grade '" + grade_text +
                             "'");
        }
        if (grade < 0) {
            throw data_error(location(path, lineno) + ": negative grade " + grade_text);
        }
        auto& by_doc = qrels.judgments[query_id];
        auto [it, inserted] = by_doc.emplace(doc_id, grade);
        if (!inserted) {
            warnings << "warning: " << location(path, lineno) << ": duplicate judgment for ("
                     << query_id << ", " << doc_id << "); grade " << it->second
                     << " overridden by " << grade << "\n";
            it->second = grade;
        }
    }
    if (in.bad()) throw data_error("read error on qrels file: " + path.string());
    return qrels;
}

Qrels load_qrels(const std::filesystem::path& path) { return load_qrels(path, std::cerr); }

}  // namespace lexret
