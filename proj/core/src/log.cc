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

#include "subcomp/log.h"

#include <iostream>
#include <mutex>
#include <utility>

namespace subcomp {
namespace {

std::mutex& handler_mutex() {
  static std::mutex mu;
  return mu;
}

WarningHandler& handler_slot() {
  static WarningHandler handler;
  return handler;
}

}  // namespace

void log_warning(std::string_view message) {
  std::lock_guard<std::mutex> lock(handler_mutex());
  if (auto const& handler = handler_slot()) {
    handler(message);
    return;
  }
  std::cerr << "warning: " << message << '\n';
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(handler_mutex());
  return std::exchange(handler_slot(), std::move(handler));
}

}  // namespace subcomp
