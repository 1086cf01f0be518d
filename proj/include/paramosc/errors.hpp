// Copyright 2026 The paramosc Authors
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

#ifndef PARAMOSC_ERRORS_HPP
#define PARAMOSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paramosc {

/// A numerical contract was violated (tag check, norm, step policy, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The truncated basis is too small for the requested state or evolution.
class TruncationError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A time step exceeds what the step policy allows for a schedule.
class StepPolicyError : public ContractError {
 public:
  using ContractError::ContractError;
};

}  // namespace paramosc

#endif  // PARAMOSC_ERRORS_HPP
