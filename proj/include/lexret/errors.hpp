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

#include <stdexcept>
#include <string>

namespace lexret {

/// Error taxonomy mirrored by the CLI exit codes: usage -> 1, data -> 2,
/// internal -> 3.
enum class errc { usage = 1, data = 2, internal = 3 };

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

struct usage_error : error {
    explicit usage_error(const std::string& msg) : error(errc::usage, msg) {}
};

/// Malformed or inconsistent input data (file formats, contract violations
/// attributable to inputs).
struct data_error : error {
    explicit data_error(const std::string& msg) : error(errc::data, msg) {}
};

/// A broken internal invariant; never the caller's fault.
struct internal_error : error {
    explicit internal_error(const std::string& msg) : error(errc::internal, msg) {}
};

}  // namespace lexret
