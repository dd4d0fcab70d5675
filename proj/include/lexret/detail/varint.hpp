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

#include <cstdint>
#include <string>
#include <string_view>

#include "lexret/errors.hpp"

namespace lexret::detail {

/// Unsigned LEB128.
inline void put_varint(std::string& out, uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<char>((value & 0x7f) | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<char>(value));
}

/// Reads one varint at `pos`, advancing it. Throws data_error on truncation
/// or a value that does not fit 64 bits.
inline uint64_t get_varint(std::string_view data, size_t& pos) {
    uint64_t value = 0;
    unsigned shift = 0;
    while (true) {
        if (pos >= data.size()) throw data_error("truncated varint");
        uint8_t byte = static_cast<uint8_t>(data[pos++]);
        if (shift == 63 && byte > 1) throw data_error("varint exceeds 64 bits");
        value |= static_cast<uint64_t>(byte & 0x7f) << shift;
        if ((byte & 0x80) == 0) return value;
        shift += 7;
        if (shift > 63) throw data_error("varint exceeds 64 bits");
    }
}

}  // namespace lexret::detail
