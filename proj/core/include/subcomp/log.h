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

#ifndef SUBCOMP_LOG_H_
#define SUBCOMP_LOG_H_

#include <functional>
#include <string_view>

namespace subcomp {

using WarningHandler = std::function<void(std::string_view)>;

/// Reports a non-fatal condition. Goes to stderr unless a handler is set.
void log_warning(std::string_view message);

/// Installs `handler` and returns the previous one. An empty handler restores
/// the stderr default.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace subcomp

#endif  // SUBCOMP_LOG_H_
