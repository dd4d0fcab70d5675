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
#include "lexret/kernels/bm25_kernels.hpp"

namespace lexret::kernels {

void score_postings_scalar(const uint32_t* docs, const uint32_t* tfs, size_t count,
                           double idf, double weight, const double* norms, double* acc) {
    for (size_t i = 0; i < count; ++i) {
        uint32_t d = docs[i];
        double ft = static_cast<double>(tfs[i]);
        double r = idf * ft / (ft + norms[d]);
        acc[d] += weight * r;
    }
}

}  // namespace lexret::kernels
