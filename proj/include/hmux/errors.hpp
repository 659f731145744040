// Copyright 2026 The hmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HMUX_ERRORS_HPP
#define HMUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmux {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative photon number, bin index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for malformed or inconsistent configuration. `key()` names the
/// offending setting when there is one.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::invalid_argument(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace hmux

#endif  // HMUX_ERRORS_HPP
