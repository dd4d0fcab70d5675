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

#if defined(LEXRET_HAVE_AVX2)

#include <immintrin.h>

namespace lexret::kernels {

/*
 * Four postings per step. Multiply, add, and divide are correctly rounded
 * per IEEE 754 in both scalar and packed form, and no FMA is used, so each
 * lane computes the same bits as score_postings_scalar. The accumulator
 * update stays scalar and in posting order; a doc appears at most once per
 * posting list, so ordering across lists is preserved too.
 */
void score_postings_avx2(const uint32_t* docs, const uint32_t* tfs, size_t count, double idf,
                         double weight, const double* norms, double* acc) {
    const __m256d vidf = _mm256_set1_pd(idf);
    const __m256d vweight = _mm256_set1_pd(weight);
    size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m128i vdocs = _mm_loadu_si128(reinterpret_cast<const __m128i*>(docs + i));
        __m128i vtfs = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tfs + i));
        /* Gather indices and tf lanes are read as signed i32; values < 2^31
         * per the kernel contract. */
        __m256d vnorm = _mm256_i32gather_pd(norms, vdocs, 8);
        __m256d vft = _mm256_cvtepi32_pd(vtfs);
        __m256d num = _mm256_mul_pd(vidf, vft);
        __m256d den = _mm256_add_pd(vft, vnorm);
        __m256d r = _mm256_div_pd(num, den);
        __m256d contrib = _mm256_mul_pd(vweight, r);
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, contrib);
        acc[docs[i + 0]] += lanes[0];
        acc[docs[i + 1]] += lanes[1];
        acc[docs[i + 2]] += lanes[2];
        acc[docs[i + 3]] += lanes[3];
    }
    if (i < count) {
        score_postings_scalar(docs + i, tfs + i, count - i, idf, weight, norms, acc);
    }
}

}  // namespace lexret::kernels

#endif  /* LEXRET_HAVE_AVX2 */
