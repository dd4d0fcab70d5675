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
#include <cstdint>
#include <string_view>

namespace lexret::kernels {

/// BM25 length normalizer k1 * ((1 - b) + b * dl/avgdl). Every scorer goes
/// through this one definition so backends agree bit-for-bit.
inline double bm25_length_norm(uint32_t dl, double k1, double b, double avgdl) {
    double ratio = static_cast<double>(dl) / avgdl;
    return k1 * ((1.0 - b) + b * ratio);
}

/// Posting-scoring kernel: for each posting i,
///   acc[docs[i]] += weight * (idf * tf / (tf + norms[docs[i]]))
/// evaluated in exactly that operation order. norms holds the precomputed
/// length normalizer per ordinal. Backends must be bit-identical; the
/// vectorized variants therefore use no fused multiply-add and update the
/// accumulator in posting order. Values are assumed < 2^31 (ordinals and
/// term frequencies), which the index build guarantees in practice.
using ScorePostingsFn = void (*)(const uint32_t* docs, const uint32_t* tfs, size_t count,
                                 double idf, double weight, const double* norms,
                                 double* acc);

void score_postings_scalar(const uint32_t* docs, const uint32_t* tfs, size_t count,
                           double idf, double weight, const double* norms, double* acc);

#if defined(LEXRET_HAVE_AVX2)
void score_postings_avx2(const uint32_t* docs, const uint32_t* tfs, size_t count, double idf,
                         double weight, const double* norms, double* acc);
#endif

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);

/// True when the CPU supports AVX2 and the AVX2 variant was compiled in.
bool avx2_available();

/// Kernel selected at first use: AVX2 when available, scalar otherwise,
/// unless overridden by force_backend.
ScorePostingsFn score_postings_fn();
Backend active_backend();

/// Test hook: pin the backend. Throws data_error when the requested backend
/// is unavailable on this machine.
void force_backend(Backend backend);
void clear_forced_backend();

}  // namespace lexret::kernels
