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
#include "lexret/index.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lexret/detail/crc32.hpp"
#include "lexret/detail/varint.hpp"
#include "lexret/errors.hpp"

namespace lexret {

namespace {

using nlohmann::json;

constexpr std::string_view kMetaMagic = "lexret-index";
constexpr std::string_view kDictMagic = "LXDICT01";
constexpr std::string_view kPostMagic = "LXPOST01";
constexpr std::string_view kDlenMagic = "LXDLEN01";
constexpr size_t kBatchDocs = 256;

void put_u32(std::string& out, uint32_t value) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<char>((value >> shift) & 0xFF));
    }
}

void put_u64(std::string& out, uint64_t value) {
    for (int shift = 0; shift < 64; shift += 8) {
        out.push_back(static_cast<char>((value >> shift) & 0xFF));
    }
}

uint32_t get_u32(std::string_view data, size_t& pos) {
    if (pos + 4 > data.size()) throw data_error("truncated integer field");
    uint32_t value = 0;
    for (int shift = 0; shift < 32; shift += 8) {
        value |= static_cast<uint32_t>(static_cast<uint8_t>(data[pos++])) << shift;
    }
    return value;
}

uint64_t get_u64(std::string_view data, size_t& pos) {
    if (pos + 8 > data.size()) throw data_error("truncated integer field");
    uint64_t value = 0;
    for (int shift = 0; shift < 64; shift += 8) {
        value |= static_cast<uint64_t>(static_cast<uint8_t>(data[pos++])) << shift;
    }
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open index file: " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw data_error("read error on index file: " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot open index file for writing: " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw data_error("write error on index file: " + path.string());
}

void expect_magic(std::string_view data, std::string_view magic,
                  const std::filesystem::path& path, size_t& pos) {
    if (data.size() < magic.size() || std::string_view(data.data(), magic.size()) != magic) {
        throw data_error(path.string() + ": bad magic header (expected '" +
                         std::string(magic) + "')");
    }
    pos = magic.size();
}

struct Batch {
    size_t index = 0;
    uint32_t first_ordinal = 0;
    std::vector<Document> docs;
};

struct BatchResult {
    std::vector<std::string> doc_ids;
    std::vector<uint32_t> doc_lengths;
    // term -> (ordinal, tf) pairs, ordinals ascending within the batch
    std::unordered_map<std::string, std::vector<std::pair<uint32_t, uint32_t>>> postings;
};

BatchResult process_batch(const Batch& batch, const TokenizerConfig& config,
                          bool include_title) {
    BatchResult result;
    result.doc_ids.reserve(batch.docs.size());
    result.doc_lengths.reserve(batch.docs.size());
    std::unordered_map<std::string, uint32_t> tf;
    for (size_t i = 0; i < batch.docs.size(); ++i) {
        const Document& doc = batch.docs[i];
        uint32_t ordinal = batch.first_ordinal + static_cast<uint32_t>(i);
        std::string text;
        if (include_title) {
            text = doc.title;
            text += '\n';
            text += doc.body;
        } else {
            text = doc.body;
        }
        std::vector<Token> tokens = tokenize(text, config);
        tf.clear();
        for (const Token& token : tokens) ++tf[token];
        for (const auto& [term, freq] : tf) {
            result.postings[term].emplace_back(ordinal, freq);
        }
        result.doc_ids.push_back(doc.doc_id);
        result.doc_lengths.push_back(static_cast<uint32_t>(tokens.size()));
    }
    return result;
}

void check_doc_id(const std::string& doc_id) {
    if (doc_id.empty()) throw data_error("empty document id");
    if (doc_id.find_first_of(" \t\n\r") != std::string::npos) {
        throw data_error("document id '" + doc_id +
                         "' contains whitespace, which the run and qrels formats cannot "
                         "represent");
    }
}

struct BuildOutput {
    std::vector<std::string> terms;
    std::vector<InvertedIndex::PostingList> postings;
    std::vector<uint32_t> doc_lengths;
    std::vector<std::string> doc_ids;
    uint64_t total_tokens = 0;
};

// Shared build core: pulls batches from `read_batch_fn` (documents in
// ingestion order with preassigned ordinals), tokenizes them on `threads`
// workers, and merges results strictly in batch order so the output is
// independent of the thread count.
BuildOutput run_build(const std::function<std::optional<Batch>()>& read_batch_fn,
                      const TokenizerConfig& config, bool include_title, unsigned threads) {
    if (threads == 0) threads = 1;
    BuildOutput out;
    std::unordered_map<std::string, InvertedIndex::PostingList> dictionary;
    auto merge_result = [&](const BatchResult& result) {
        for (const std::string& doc_id : result.doc_ids) {
            check_doc_id(doc_id);
            out.doc_ids.push_back(doc_id);
        }
        for (uint32_t dl : result.doc_lengths) {
            out.doc_lengths.push_back(dl);
            out.total_tokens += dl;
        }
        for (const auto& [term, entries] : result.postings) {
            InvertedIndex::PostingList& list = dictionary[term];
            for (const auto& [ordinal, freq] : entries) {
                list.docs.push_back(ordinal);
                list.tfs.push_back(freq);
            }
        }
    };

    if (threads == 1) {
        while (auto batch = read_batch_fn()) {
            merge_result(process_batch(*batch, config, include_title));
        }
    } else {
        // Bounded pipeline: the main thread reads batches and merges results
        // in batch order; workers tokenize. Merge order fixes the result
        // independent of thread count.
        std::mutex mu;
        std::condition_variable queue_cv, result_cv;
        std::deque<Batch> queue;
        std::map<size_t, BatchResult> ready;
        bool done_reading = false;
        size_t produced = 0;
        size_t merged = 0;
        const size_t queue_limit = static_cast<size_t>(threads) * 4;
        std::exception_ptr failure;

        auto worker = [&] {
            while (true) {
                Batch batch;
                {
                    std::unique_lock lock(mu);
                    queue_cv.wait(lock,
                                  [&] { return !queue.empty() || done_reading || failure; });
                    if (failure || (queue.empty() && done_reading)) return;
                    batch = std::move(queue.front());
                    queue.pop_front();
                }
                queue_cv.notify_all();
                try {
                    BatchResult result = process_batch(batch, config, include_title);
                    {
                        std::lock_guard lock(mu);
                        ready.emplace(batch.index, std::move(result));
                    }
                    result_cv.notify_all();
                } catch (...) {
                    {
                        std::lock_guard lock(mu);
                        if (!failure) failure = std::current_exception();
                    }
                    queue_cv.notify_all();
                    result_cv.notify_all();
                    return;
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

        auto drain_ready = [&](std::unique_lock<std::mutex>& lock) {
            while (true) {
                auto it = ready.find(merged);
                if (it == ready.end()) break;
                BatchResult result = std::move(it->second);
                ready.erase(it);
                lock.unlock();
                merge_result(result);
                ++merged;
                lock.lock();
            }
        };

        try {
            while (true) {
                auto batch = read_batch_fn();
                if (!batch) break;
                batch->index = produced++;
                {
                    std::unique_lock lock(mu);
                    queue_cv.wait(lock, [&] { return queue.size() < queue_limit || failure; });
                    if (failure) break;
                    queue.push_back(std::move(*batch));
                    drain_ready(lock);
                }
                queue_cv.notify_one();
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
        }
        {
            std::lock_guard lock(mu);
            done_reading = true;
        }
        queue_cv.notify_all();
        {
            std::unique_lock lock(mu);
            while (!failure && merged < produced) {
                result_cv.wait(lock, [&] { return ready.count(merged) != 0 || failure; });
                if (failure) break;
                drain_ready(lock);
            }
        }
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    out.terms.reserve(dictionary.size());
    for (const auto& [term, list] : dictionary) out.terms.push_back(term);
    std::sort(out.terms.begin(), out.terms.end());
    out.postings.reserve(out.terms.size());
    for (const std::string& term : out.terms) {
        out.postings.push_back(std::move(dictionary[term]));
    }
    return out;
}

}  // namespace

InvertedIndex InvertedIndex::build(CorpusReader& docs, const TokenizerConfig& config,
                                   bool include_title, unsigned threads) {
    config.validate();
    uint32_t next_ordinal = 0;
    auto read_batch = [&]() -> std::optional<Batch> {
        Batch batch;
        batch.first_ordinal = next_ordinal;
        batch.docs.reserve(kBatchDocs);
        while (batch.docs.size() < kBatchDocs) {
            auto doc = docs.next();
            if (!doc) break;
            batch.docs.push_back(std::move(*doc));
        }
        if (batch.docs.empty()) return std::nullopt;
        next_ordinal += static_cast<uint32_t>(batch.docs.size());
        return batch;
    };
    BuildOutput out = run_build(read_batch, config, include_title, threads);
    return from_parts(std::move(out.terms), std::move(out.postings),
                      std::move(out.doc_lengths), std::move(out.doc_ids), out.total_tokens,
                      config.fingerprint(), include_title);
}

InvertedIndex InvertedIndex::build(const std::vector<Document>& docs,
                                   const TokenizerConfig& config, bool include_title,
                                   unsigned threads) {
    config.validate();
    std::unordered_set<std::string> seen;
    for (const Document& doc : docs) {
        if (!seen.insert(doc.doc_id).second) {
            throw data_error("duplicate document id '" + doc.doc_id + "'");
        }
    }
    size_t pos = 0;
    auto read_batch = [&]() -> std::optional<Batch> {
        if (pos >= docs.size()) return std::nullopt;
        Batch batch;
        batch.first_ordinal = static_cast<uint32_t>(pos);
        size_t take = std::min(kBatchDocs, docs.size() - pos);
        batch.docs.assign(docs.begin() + static_cast<std::ptrdiff_t>(pos),
                          docs.begin() + static_cast<std::ptrdiff_t>(pos + take));
        pos += take;
        return batch;
    };
    BuildOutput out = run_build(read_batch, config, include_title, threads);
    return from_parts(std::move(out.terms), std::move(out.postings),
                      std::move(out.doc_lengths), std::move(out.doc_ids), out.total_tokens,
                      config.fingerprint(), include_title);
}

InvertedIndex InvertedIndex::from_parts(std::vector<std::string> terms,
                                        std::vector<PostingList> postings,
                                        std::vector<uint32_t> doc_lengths,
                                        std::vector<std::string> doc_ids,
                                        uint64_t total_tokens, std::string fingerprint,
                                        bool title_indexed) {
    if (doc_ids.empty()) throw data_error("corpus contains no documents");
    InvertedIndex index;
    index.terms_ = std::move(terms);
    index.postings_ = std::move(postings);
    index.doc_lengths_ = std::move(doc_lengths);
    index.doc_ids_ = std::move(doc_ids);
    index.stats_.doc_count = index.doc_ids_.size();
    index.stats_.total_tokens = total_tokens;
    index.stats_.avg_doc_len = static_cast<double>(total_tokens) /
                               static_cast<double>(index.stats_.doc_count);
    index.fingerprint_ = std::move(fingerprint);
    index.title_indexed_ = title_indexed;
    index.verify();
    return index;
}

const InvertedIndex::PostingList* InvertedIndex::postings(std::string_view term) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it == terms_.end() || *it != term) return nullptr;
    return &postings_[static_cast<size_t>(it - terms_.begin())];
}

void InvertedIndex::verify() const {
    if (terms_.size() != postings_.size()) {
        throw internal_error("index corrupt: dictionary arrays disagree in size");
    }
    if (doc_ids_.size() != doc_lengths_.size()) {
        throw internal_error("index corrupt: doc id and length arrays disagree in size");
    }
    if (stats_.doc_count != doc_ids_.size()) {
        throw internal_error("index corrupt: doc_count does not match document array");
    }
    if (!std::is_sorted(terms_.begin(), terms_.end())) {
        throw internal_error("index corrupt: dictionary not sorted");
    }
    std::vector<uint64_t> per_doc(doc_ids_.size(), 0);
    uint64_t total = 0;
    for (size_t t = 0; t < terms_.size(); ++t) {
        const PostingList& list = postings_[t];
        if (list.docs.empty() || list.docs.size() != list.tfs.size()) {
            throw internal_error("index corrupt: malformed posting list for term '" +
                                 terms_[t] + "'");
        }
        uint32_t prev = 0;
        for (size_t i = 0; i < list.docs.size(); ++i) {
            uint32_t doc = list.docs[i];
            uint32_t tf = list.tfs[i];
            if (i > 0 && doc <= prev) {
                throw internal_error("index corrupt: postings not strictly ascending for '" +
                                     terms_[t] + "'");
            }
            prev = doc;
            if (doc >= doc_ids_.size()) {
                throw internal_error("index corrupt: posting ordinal out of range for '" +
                                     terms_[t] + "'");
            }
            if (tf == 0) {
                throw internal_error("index corrupt: zero term frequency for '" + terms_[t] +
                                     "'");
            }
            per_doc[doc] += tf;
            total += tf;
        }
    }
    for (size_t d = 0; d < per_doc.size(); ++d) {
        if (per_doc[d] != doc_lengths_[d]) {
            throw internal_error("index corrupt: document length mismatch at ordinal " +
                                 std::to_string(d));
        }
    }
    if (total != stats_.total_tokens) {
        throw internal_error("index corrupt: token total mismatch");
    }
    double expected_avg = stats_.doc_count == 0
                              ? 0.0
                              : static_cast<double>(stats_.total_tokens) /
                                    static_cast<double>(stats_.doc_count);
    if (stats_.avg_doc_len != expected_avg) {
        throw internal_error("index corrupt: avg_doc_len inconsistent with totals");
    }
}

void InvertedIndex::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);

    std::string post(kPostMagic);
    std::string dict(kDictMagic);
    put_u32(dict, static_cast<uint32_t>(terms_.size()));
    for (size_t t = 0; t < terms_.size(); ++t) {
        const PostingList& list = postings_[t];
        uint64_t offset = post.size();
        uint32_t prev = 0;
        for (size_t i = 0; i < list.docs.size(); ++i) {
            uint32_t doc = list.docs[i];
            detail::put_varint(post, i == 0 ? doc : doc - prev);
            detail::put_varint(post, list.tfs[i]);
            prev = doc;
        }
        put_u32(dict, static_cast<uint32_t>(terms_[t].size()));
        dict.append(terms_[t]);
        put_u32(dict, static_cast<uint32_t>(list.docs.size()));
        put_u64(dict, offset);
        put_u64(dict, post.size() - offset);
    }

    std::string dlen(kDlenMagic);
    put_u32(dlen, static_cast<uint32_t>(doc_lengths_.size()));
    for (uint32_t dl : doc_lengths_) put_u32(dlen, dl);

    std::string ids;
    for (size_t d = 0; d < doc_ids_.size(); ++d) {
        ids += std::to_string(d);
        ids += '\t';
        ids += doc_ids_[d];
        ids += '\n';
    }

    json meta;
    meta["magic"] = std::string(kMetaMagic);
    meta["format_version"] = kFormatVersion;
    meta["tokenizer_fingerprint"] = fingerprint_;
    meta["title_indexed"] = title_indexed_;
    meta["stats"] = {{"doc_count", stats_.doc_count},
                     {"total_tokens", stats_.total_tokens},
                     {"avg_doc_len", stats_.avg_doc_len}};
    meta["checksums"] = {{"dict.bin", detail::crc32(dict)},
                         {"postings.bin", detail::crc32(post)},
                         {"doclen.bin", detail::crc32(dlen)},
                         {"docids.tsv", detail::crc32(ids)}};

    write_file(dir / "dict.bin", dict);
    write_file(dir / "postings.bin", post);
    write_file(dir / "doclen.bin", dlen);
    write_file(dir / "docids.tsv", ids);
    write_file(dir / "meta.json", meta.dump(2) + "\n");
}

InvertedIndex InvertedIndex::load(const std::filesystem::path& dir) {
    const auto meta_path = dir / "meta.json";
    std::string meta_text = read_file(meta_path);
    json meta;
    try {
        meta = json::parse(meta_text);
    } catch (const json::parse_error& e) {
        throw data_error(meta_path.string() + ": malformed JSON: " + e.what());
    }
    try {
        if (meta.at("magic").get<std::string>() != kMetaMagic) {
            throw data_error(meta_path.string() + ": not an index directory (bad magic)");
        }
        if (meta.at("format_version").get<uint32_t>() != kFormatVersion) {
            throw data_error(meta_path.string() + ": unsupported format version " +
                             meta.at("format_version").dump() + " (expected " +
                             std::to_string(kFormatVersion) + ")");
        }
    } catch (const json::exception& e) {
        throw data_error(meta_path.string() + ": invalid metadata: " + e.what());
    }

    InvertedIndex index;
    std::string dict, post, dlen, ids;
    try {
        index.fingerprint_ = meta.at("tokenizer_fingerprint").get<std::string>();
        index.title_indexed_ = meta.at("title_indexed").get<bool>();
        const json& stats = meta.at("stats");
        index.stats_.doc_count = stats.at("doc_count").get<uint64_t>();
        index.stats_.total_tokens = stats.at("total_tokens").get<uint64_t>();
        index.stats_.avg_doc_len = stats.at("avg_doc_len").get<double>();

        const json& sums = meta.at("checksums");
        struct Payload {
            const char* name;
            std::string* data;
        };
        for (Payload p : {Payload{"dict.bin", &dict}, Payload{"postings.bin", &post},
                          Payload{"doclen.bin", &dlen}, Payload{"docids.tsv", &ids}}) {
            *p.data = read_file(dir / p.name);
            uint32_t expected = sums.at(p.name).get<uint32_t>();
            uint32_t actual = detail::crc32(*p.data);
            if (expected != actual) {
                throw data_error((dir / p.name).string() +
                                 ": checksum mismatch (index corrupted or incompletely "
                                 "written)");
            }
        }
    } catch (const json::exception& e) {
        throw data_error(meta_path.string() + ": invalid metadata: " + e.what());
    }

    size_t pos = 0;
    expect_magic(dlen, kDlenMagic, dir / "doclen.bin", pos);
    uint32_t doc_count = get_u32(dlen, pos);
    index.doc_lengths_.reserve(doc_count);
    for (uint32_t d = 0; d < doc_count; ++d) index.doc_lengths_.push_back(get_u32(dlen, pos));
    if (pos != dlen.size()) throw data_error("doclen.bin: trailing bytes");

    index.doc_ids_.reserve(doc_count);
    {
        size_t line_start = 0;
        size_t ordinal = 0;
        while (line_start < ids.size()) {
            size_t nl = ids.find('\n', line_start);
            if (nl == std::string::npos) throw data_error("docids.tsv: missing final newline");
            std::string_view line(ids.data() + line_start, nl - line_start);
            size_t tab = line.find('\t');
            if (tab == std::string_view::npos) {
                throw data_error("docids.tsv: malformed line " + std::to_string(ordinal + 1));
            }
            std::string ord_text(line.substr(0, tab));
            if (ord_text != std::to_string(ordinal)) {
                throw data_error("docids.tsv: ordinal mismatch on line " +
                                 std::to_string(ordinal + 1));
            }
            index.doc_ids_.emplace_back(line.substr(tab + 1));
            line_start = nl + 1;
            ++ordinal;
        }
    }

    pos = 0;
    expect_magic(dict, kDictMagic, dir / "dict.bin", pos);
    uint32_t term_count = get_u32(dict, pos);
    index.terms_.reserve(term_count);
    index.postings_.reserve(term_count);
    size_t post_pos = 0;
    expect_magic(post, kPostMagic, dir / "postings.bin", post_pos);
    for (uint32_t t = 0; t < term_count; ++t) {
        uint32_t name_len = get_u32(dict, pos);
        if (pos + name_len > dict.size()) throw data_error("dict.bin: truncated term name");
        std::string term = dict.substr(pos, name_len);
        pos += name_len;
        uint32_t df = get_u32(dict, pos);
        uint64_t offset = get_u64(dict, pos);
        uint64_t byte_len = get_u64(dict, pos);
        if (offset != post_pos) {
            throw data_error("dict.bin: posting offset mismatch for '" + term + "'");
        }
        if (offset + byte_len > post.size()) {
            throw data_error("dict.bin: posting extent out of range for '" + term + "'");
        }
        PostingList list;
        list.docs.reserve(df);
        list.tfs.reserve(df);
        uint32_t prev = 0;
        for (uint32_t i = 0; i < df; ++i) {
            uint64_t delta = detail::get_varint(post, post_pos);
            uint64_t tf = detail::get_varint(post, post_pos);
            uint64_t doc = i == 0 ? delta : static_cast<uint64_t>(prev) + delta;
            if (doc > 0xFFFFFFFFull || tf > 0xFFFFFFFFull) {
                throw data_error("postings.bin: value out of range for '" + term + "'");
            }
            list.docs.push_back(static_cast<uint32_t>(doc));
            list.tfs.push_back(static_cast<uint32_t>(tf));
            prev = static_cast<uint32_t>(doc);
        }
        if (post_pos != offset + byte_len) {
            throw data_error("postings.bin: extent mismatch for '" + term + "'");
        }
        index.terms_.push_back(std::move(term));
        index.postings_.push_back(std::move(list));
    }
    if (pos != dict.size()) throw data_error("dict.bin: trailing bytes");
    if (post_pos != post.size()) throw data_error("postings.bin: trailing bytes");

    index.verify();
    return index;
}

}  // namespace lexret
