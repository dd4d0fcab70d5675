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

#include <cstddef>
#include <string>

#include "lexret/retrieval.hpp"

namespace lexret {

/// Tag of the run fuse() produces: `fuse(<tagA>,<tagB>,<alpha>)`, alpha
/// formatted with %g.
std::string fused_run_tag(const std::string& tag_a, const std::string& tag_b, double alpha);

struct FusionParams {
    double alpha = 0.5;
    size_t k = 100;
    /// Skip min-max normalization and combine raw scores. Off by default;
    /// raw scales from different tokenizers are not commensurable.
    bool raw_scores = false;

    /// Throws data_error unless alpha is finite in [0,1] and k >= 1.
    void validate() const;
};

/// Per-query weighted combination of two runs. Candidates are the union of
/// both lists; each run's scores are min-max normalized over its own list
/// for that query (a list with fewer than two distinct scores normalizes
/// to all 1.0; presence is positive evidence); a candidate absent from a
/// run contributes 0 for it. Fused score = alpha * norm_a + (1 - alpha) *
/// norm_b, ranked with the standard tie-break and cut at k.
///
/// Queries are the union of both runs' query sets: run_a's queries in
/// order, then queries only in run_b. A query missing from one run is
/// treated as an empty list there. Output run_tag is
/// `fuse(<tagA>,<tagB>,<alpha>)`.
///
/// Throws data_error on a duplicate doc or duplicate query block within
/// one input run.
RunFile fuse(const RunFile& run_a, const RunFile& run_b, const FusionParams& params = {});

}  // namespace lexret
