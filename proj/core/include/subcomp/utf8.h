// Copyright 2026 The subcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBCOMP_UTF8_H_
#define SUBCOMP_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subcomp::utf8 {

bool is_valid(std::string_view text);

/// Number of Unicode scalar values. Input must be valid UTF-8.
std::size_t length(std::string_view text);

/// Byte offsets of every scalar boundary, including 0 and text.size().
std::vector<std::size_t> boundaries(std::string_view text);

/// Byte length of the first scalar, or 0 for empty input.
std::size_t first_scalar_size(std::string_view text);

std::string encode(char32_t codepoint);

/// Parses "U+2581" style notation into the encoded scalar.
std::optional<std::string> parse_codepoint_notation(std::string_view text);

}  // namespace subcomp::utf8

#endif  // SUBCOMP_UTF8_H_
