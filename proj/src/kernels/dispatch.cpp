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
#include <atomic>
#include <optional>

#include "lexret/errors.hpp"
#include "lexret/kernels/bm25_kernels.hpp"

namespace lexret::kernels {

namespace {

std::optional<Backend>& forced_backend() {
    static std::optional<Backend> forced;
    return forced;
}

Backend detect_backend() {
#if defined(LEXRET_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) {
        return Backend::avx2;
    }
#endif
    return Backend::scalar;
}

ScorePostingsFn backend_fn(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return &score_postings_scalar;
        case Backend::avx2:
#if defined(LEXRET_HAVE_AVX2)
            return &score_postings_avx2;
#else
            break;
#endif
    }
    throw internal_error("bm25 kernel backend not compiled in");
}

}  // namespace

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
    }
    throw internal_error("unknown bm25 kernel backend");
}

bool avx2_available() {
#if defined(LEXRET_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() {
    if (forced_backend().has_value()) {
        return *forced_backend();
    }
    static const Backend detected = detect_backend();
    return detected;
}

ScorePostingsFn score_postings_fn() { return backend_fn(active_backend()); }

void force_backend(Backend backend) {
    if (backend == Backend::avx2 && !avx2_available()) {
        throw data_error("avx2 backend unavailable on this machine");
    }
    forced_backend() = backend;
}

void clear_forced_backend() { forced_backend().reset(); }

}  // namespace lexret::kernels
