// Copyright 2026 The flexsync Authors
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

#ifndef FLEXSYNC_ERRORS_HPP_
#define FLEXSYNC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace flexsync {

// A precondition on a mathematical argument was violated (delta out of
// range, empty message, t1 > t2, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The run was configured inconsistently: malformed textual input, or an
// adversary resolution stream too short for the nondeterminism it must cover.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flexsync

#endif  // FLEXSYNC_ERRORS_HPP_
