// Copyright 2026 The QBA Toolkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qba {

/// A value is outside the domain an operation accepts (residue >= P, b == 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Protocol or run configuration violates an invariant (N >= P, t >= N/3, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sparse state would exceed its term budget. Never silently truncated.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse such as aliased operands or dangling handles.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An agreement run exhausted its round cap without every honest node deciding.
class NonTerminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qba
