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

#include <string>
#include <string_view>

namespace lexret::unicode {

/// Decodes UTF-8, rejecting invalid byte sequences (overlong forms,
/// surrogates, out-of-range codepoints) with a data_error.
std::u32string decode_utf8(std::string_view s);

/// Decodes the codepoint starting at byte offset i and advances i past
/// it. Same validation as the whole-string form.
char32_t decode_utf8(std::string_view s, size_t& i);

/// Returns false instead of throwing.
bool is_valid_utf8(std::string_view s);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(std::u32string_view s);

// Property tests backed by the generated tables (see src/unicode_tables.inc).
bool is_control_removed(char32_t cp);   // category C* minus {\t, \n, \r}
bool is_bert_whitespace(char32_t cp);   // {\t, \n, \r} + Zs + Zl + Zp
bool is_whitespace(char32_t cp);        // general Unicode whitespace
bool is_punctuation(char32_t cp);       // ASCII punct ranges + category P*
bool is_nonspacing_mark(char32_t cp);   // Mn
bool is_mark(char32_t cp);              // M*
bool is_letter(char32_t cp);            // L*
bool is_digit(char32_t cp);             // Nd
bool is_cjk_ideograph(char32_t cp);

/// Full (context-free) lowercase mapping; one-to-many mappings expand.
void append_lowercase(std::u32string& out, char32_t cp);

/// Canonical decomposition, recursively expanded, Hangul included.
/// Appends cp itself when there is nothing to decompose.
void append_nfd(std::u32string& out, char32_t cp);

}  // namespace lexret::unicode
