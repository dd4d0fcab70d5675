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
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexret/errors.hpp"
#include "lexret/index.hpp"

using namespace lexret;
namespace fs = std::filesystem;

namespace {

std::vector<Document> small_corpus() {
    return {
        {"d1", "", "a a b"},
        {"d2", "", "b c"},
    };
}

// Deterministic corpus with enough documents to exercise batched builds.
std::vector<Document> random_corpus(uint32_t seed, size_t n_docs) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> n_tokens(0, 40), word(0, 49);
    std::vector<Document> docs;
    docs.reserve(n_docs);
    for (size_t i = 0; i < n_docs; ++i) {
        std::string body;
        int n = n_tokens(rng);
        for (int t = 0; t < n; ++t) {
            if (t) body += ' ';
            body += "w" + std::to_string(word(rng));
        }
        docs.push_back({"doc" + std::to_string(i), "title w" + std::to_string(word(rng)), body});
    }
    return docs;
}

bool index_equal(const InvertedIndex& a, const InvertedIndex& b) {
    if (a.terms() != b.terms()) return false;
    if (a.doc_lengths() != b.doc_lengths()) return false;
    if (a.doc_ids() != b.doc_ids()) return false;
    if (a.tokenizer_fingerprint() != b.tokenizer_fingerprint()) return false;
    if (a.title_indexed() != b.title_indexed()) return false;
    if (a.stats().doc_count != b.stats().doc_count) return false;
    if (a.stats().total_tokens != b.stats().total_tokens) return false;
    if (a.stats().avg_doc_len != b.stats().avg_doc_len) return false;
    if (a.posting_lists().size() != b.posting_lists().size()) return false;
    for (size_t i = 0; i < a.posting_lists().size(); ++i) {
        if (a.posting_lists()[i].docs != b.posting_lists()[i].docs) return false;
        if (a.posting_lists()[i].tfs != b.posting_lists()[i].tfs) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("build produces sorted terms and ascending postings") {
    InvertedIndex index = InvertedIndex::build(small_corpus(), TokenizerConfig::whitespace());
    CHECK_EQ(index.terms(), std::vector<std::string>({"a", "b", "c"}));
    CHECK_EQ(index.doc_ids(), std::vector<std::string>({"d1", "d2"}));
    CHECK_EQ(index.doc_lengths(), std::vector<uint32_t>({3, 2}));
    CHECK_EQ(index.stats().doc_count, 2);
    CHECK_EQ(index.stats().total_tokens, 5);
    CHECK_EQ(index.stats().avg_doc_len, doctest::Approx(2.5));
    CHECK_EQ(index.tokenizer_fingerprint(), TokenizerConfig::whitespace().fingerprint());
    CHECK(index.title_indexed());

    const auto* a = index.postings("a");
    REQUIRE(a != nullptr);
    CHECK_EQ(a->docs, std::vector<uint32_t>{0});
    CHECK_EQ(a->tfs, std::vector<uint32_t>{2});
    const auto* b = index.postings("b");
    REQUIRE(b != nullptr);
    CHECK_EQ(b->docs, std::vector<uint32_t>({0, 1}));
    CHECK_EQ(b->tfs, std::vector<uint32_t>({1, 1}));
    CHECK_EQ(index.postings("zzz"), nullptr);
    CHECK_NOTHROW(index.verify());
}

TEST_CASE("title text is indexed only when requested") {
    std::vector<Document> docs = {{"d1", "shared title", "body only"}};
    InvertedIndex with_title =
        InvertedIndex::build(docs, TokenizerConfig::whitespace(), true);
    InvertedIndex body_only =
        InvertedIndex::build(docs, TokenizerConfig::whitespace(), false);
    CHECK(with_title.postings("title") != nullptr);
    CHECK(with_title.postings("shared") != nullptr);
    CHECK_EQ(body_only.postings("title"), nullptr);
    CHECK(body_only.postings("body") != nullptr);
    CHECK_EQ(with_title.doc_lengths()[0], 4);
    CHECK_EQ(body_only.doc_lengths()[0], 2);
    CHECK_FALSE(body_only.title_indexed());
}

TEST_CASE("documents with no tokens get length zero") {
    std::vector<Document> docs = {{"d1", "", "   "}, {"d2", "", "a"}};
    InvertedIndex index = InvertedIndex::build(docs, TokenizerConfig::whitespace());
    CHECK_EQ(index.doc_lengths(), std::vector<uint32_t>({0, 1}));
    CHECK_EQ(index.stats().total_tokens, 1);
    CHECK_NOTHROW(index.verify());
}

TEST_CASE("build rejects bad corpora") {
    CHECK_THROWS_AS(InvertedIndex::build({}, TokenizerConfig::whitespace()), data_error);
    std::vector<Document> dup = {{"d1", "", "a"}, {"d1", "", "b"}};
    CHECK_THROWS_AS(InvertedIndex::build(dup, TokenizerConfig::whitespace()), data_error);
    std::vector<Document> spacey = {{"doc 1", "", "a"}};
    CHECK_THROWS_AS(InvertedIndex::build(spacey, TokenizerConfig::whitespace()), data_error);
    std::vector<Document> tabbed = {{"doc\t1", "", "a"}};
    CHECK_THROWS_AS(InvertedIndex::build(tabbed, TokenizerConfig::whitespace()), data_error);
}

TEST_CASE("the index is independent of the builder thread count") {
    std::vector<Document> docs = random_corpus(7, 257);
    InvertedIndex one = InvertedIndex::build(docs, TokenizerConfig::whitespace(), true, 1);
    for (unsigned threads : {2u, 4u, 8u}) {
        CAPTURE(threads);
        InvertedIndex many = InvertedIndex::build(docs, TokenizerConfig::whitespace(), true,
                                                  threads);
        CHECK(index_equal(one, many));
        CHECK_NOTHROW(many.verify());
    }
}

TEST_CASE("save and load round-trip the whole index") {
    std::vector<Document> docs = random_corpus(11, 60);
    InvertedIndex index = InvertedIndex::build(docs, TokenizerConfig::whitespace());
    fs::path dir = fs::temp_directory_path() / "lexret_index_rt";
    fs::remove_all(dir);
    index.save(dir);
    for (const char* name : {"meta.json", "dict.bin", "postings.bin", "doclen.bin",
                             "docids.tsv"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }
    InvertedIndex loaded = InvertedIndex::load(dir);
    CHECK(index_equal(index, loaded));
    CHECK_NOTHROW(loaded.verify());
    fs::remove_all(dir);
}

TEST_CASE("load rejects missing or corrupted files") {
    std::vector<Document> docs = small_corpus();
    InvertedIndex index = InvertedIndex::build(docs, TokenizerConfig::whitespace());
    fs::path dir = fs::temp_directory_path() / "lexret_index_corrupt";

    SUBCASE("missing directory") {
        fs::remove_all(dir);
        CHECK_THROWS_AS(InvertedIndex::load(dir), data_error);
    }
    SUBCASE("flipped byte fails the checksum") {
        for (const char* victim : {"dict.bin", "postings.bin", "doclen.bin", "docids.tsv"}) {
            CAPTURE(victim);
            fs::remove_all(dir);
            index.save(dir);
            fs::path file = dir / victim;
            auto size = static_cast<std::streamoff>(fs::file_size(file));
            std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
            f.seekg(size / 2);
            char byte = 0;
            f.get(byte);
            f.seekp(size / 2);
            f.put(static_cast<char>(byte ^ 0x5a));
            f.close();
            CHECK_THROWS_AS(InvertedIndex::load(dir), data_error);
        }
        fs::remove_all(dir);
    }
    SUBCASE("truncated payload") {
        fs::remove_all(dir);
        index.save(dir);
        auto size = fs::file_size(dir / "postings.bin");
        fs::resize_file(dir / "postings.bin", size - 1);
        CHECK_THROWS_AS(InvertedIndex::load(dir), data_error);
        fs::remove_all(dir);
    }
    SUBCASE("unsupported format version") {
        fs::remove_all(dir);
        index.save(dir);
        std::ifstream in(dir / "meta.json", std::ios::binary);
        std::string meta((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        in.close();
        std::string needle = "\"format_version\":";
        size_t pos = meta.find(needle);
        REQUIRE(pos != std::string::npos);
        meta.replace(pos + needle.size(), meta.find_first_of(",}", pos + needle.size()) -
                                              (pos + needle.size()),
                     " 999");
        std::ofstream out(dir / "meta.json", std::ios::binary);
        out << meta;
        out.close();
        CHECK_THROWS_AS(InvertedIndex::load(dir), data_error);
        fs::remove_all(dir);
    }
    SUBCASE("meta.json is not json") {
        fs::remove_all(dir);
        index.save(dir);
        std::ofstream out(dir / "meta.json", std::ios::binary);
        out << "not json";
        out.close();
        CHECK_THROWS_AS(InvertedIndex::load(dir), data_error);
        fs::remove_all(dir);
    }
}

TEST_CASE("save load round-trip preserves a wordpiece fingerprint") {
    auto vocab = std::make_shared<WordPieceVocab>(
        std::vector<std::string>{"[UNK]", "a", "b", "##a", "##b"});
    TokenizerConfig config = TokenizerConfig::wordpiece(vocab, true, false);
    std::vector<Document> docs = {{"d1", "", "ab ba"}};
    InvertedIndex index = InvertedIndex::build(docs, config);
    fs::path dir = fs::temp_directory_path() / "lexret_index_wp";
    fs::remove_all(dir);
    index.save(dir);
    InvertedIndex loaded = InvertedIndex::load(dir);
    CHECK_EQ(loaded.tokenizer_fingerprint(), config.fingerprint());
    fs::remove_all(dir);
}
