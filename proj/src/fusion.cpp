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
#include "lexret/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <unordered_map>

#include "lexret/errors.hpp"

namespace lexret {

void FusionParams::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
        throw data_error("fusion alpha must be in [0, 1]");
    }
    if (k == 0) {
        throw data_error("fusion k must be >= 1");
    }
}

namespace {

using HitsByQuery = std::unordered_map<std::string_view, const std::vector<ScoredDoc>*>;

HitsByQuery index_run(const RunFile& run, const char* which) {
    HitsByQuery by_query;
    by_query.reserve(run.queries.size());
    for (const auto& [qid, hits] : run.queries) {
        if (!by_query.emplace(qid, &hits).second) {
            throw data_error(std::string("duplicate query block `") + std::string(qid) +
                             "` in run " + which);
        }
    }
    return by_query;
}

/// Scores for one run's list of one query, keyed by doc. Min-max
/// normalized unless raw is set; a list with fewer than two distinct
/// scores maps to all 1.0.
std::unordered_map<std::string_view, double> score_map(const std::vector<ScoredDoc>* hits,
                                                       bool raw, const char* which,
                                                       std::string_view qid) {
    std::unordered_map<std::string_view, double> out;
    if (hits == nullptr || hits->empty()) {
        return out;
    }
    out.reserve(hits->size());
    double lo = (*hits)[0].score;
    double hi = lo;
    for (const ScoredDoc& h : *hits) {
        lo = std::min(lo, h.score);
        hi = std::max(hi, h.score);
    }
    bool degenerate = !(hi > lo);
    for (const ScoredDoc& h : *hits) {
        double value;
        if (raw) {
            value = h.score;
        } else if (degenerate) {
            value = 1.0;
        } else {
            value = (h.score - lo) / (hi - lo);
        }
        if (!out.emplace(h.doc_id, value).second) {
            throw data_error(std::string("duplicate doc `") + h.doc_id + "` for query `" +
                             std::string(qid) + "` in run " + which);
        }
    }
    return out;
}

}  // namespace

std::string fused_run_tag(const std::string& tag_a, const std::string& tag_b, double alpha) {
    char alpha_buf[32];
    std::snprintf(alpha_buf, sizeof(alpha_buf), "%g", alpha);
    return "fuse(" + tag_a + "," + tag_b + "," + alpha_buf + ")";
}

RunFile fuse(const RunFile& run_a, const RunFile& run_b, const FusionParams& params) {
    params.validate();
    HitsByQuery by_query_a = index_run(run_a, "A");
    HitsByQuery by_query_b = index_run(run_b, "B");

    std::vector<std::string_view> query_order;
    query_order.reserve(run_a.queries.size() + run_b.queries.size());
    for (const auto& [qid, hits] : run_a.queries) {
        query_order.push_back(qid);
    }
    for (const auto& [qid, hits] : run_b.queries) {
        if (by_query_a.find(qid) == by_query_a.end()) {
            query_order.push_back(qid);
        }
    }

    RunFile out;
    out.run_tag = fused_run_tag(run_a.run_tag, run_b.run_tag, params.alpha);
    out.queries.reserve(query_order.size());
    for (std::string_view qid : query_order) {
        auto it_a = by_query_a.find(qid);
        auto it_b = by_query_b.find(qid);
        const std::vector<ScoredDoc>* hits_a = it_a == by_query_a.end() ? nullptr : it_a->second;
        const std::vector<ScoredDoc>* hits_b = it_b == by_query_b.end() ? nullptr : it_b->second;
        auto scores_a = score_map(hits_a, params.raw_scores, "A", qid);
        auto scores_b = score_map(hits_b, params.raw_scores, "B", qid);

        /* Candidate union in A-list order then B-only docs; the final sort
         * is total, so this order never shows in the output. */
        std::vector<ScoredDoc> fused;
        fused.reserve(scores_a.size() + scores_b.size());
        auto fused_score = [&](std::string_view doc) {
            auto a = scores_a.find(doc);
            auto b = scores_b.find(doc);
            double na = a == scores_a.end() ? 0.0 : a->second;
            double nb = b == scores_b.end() ? 0.0 : b->second;
            return params.alpha * na + (1.0 - params.alpha) * nb;
        };
        if (hits_a != nullptr) {
            for (const ScoredDoc& h : *hits_a) {
                fused.push_back(ScoredDoc{h.doc_id, fused_score(h.doc_id), 0});
            }
        }
        if (hits_b != nullptr) {
            for (const ScoredDoc& h : *hits_b) {
                if (scores_a.find(h.doc_id) == scores_a.end()) {
                    fused.push_back(ScoredDoc{h.doc_id, fused_score(h.doc_id), 0});
                }
            }
        }
        size_t top = std::min(params.k, fused.size());
        std::partial_sort(fused.begin(), fused.begin() + static_cast<std::ptrdiff_t>(top),
                          fused.end(), scored_doc_before);
        fused.resize(top);
        for (size_t i = 0; i < fused.size(); ++i) {
            fused[i].rank = static_cast<uint32_t>(i + 1);
        }
        out.queries.emplace_back(std::string(qid), std::move(fused));
    }
    return out;
}

}  // namespace lexret
