// Copyright 2026 The matchmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHMAP_ERROR_H_
#define MATCHMAP_ERROR_H_

#include <stdexcept>
#include <string>

namespace matchmap {

// Raised when caller-supplied data violates a documented precondition
// (shape mismatch, non-finite cost, bad noise level, malformed file, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised for inconsistent experiment or command configuration.
class ConfigError : public InvalidInput {
 public:
  explicit ConfigError(const std::string& what) : InvalidInput(what) {}
};

}  // namespace matchmap

#endif  // MATCHMAP_ERROR_H_
