// Copyright 2026 The kxdyn Authors
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

#ifndef KXDYN_ERROR_H_
#define KXDYN_ERROR_H_

#include <stdexcept>
#include <string>

namespace kxdyn {

// Invalid model parameters (probability bounds, sizes).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation applied to a pool in the wrong state (arrival past n, removing an
// inactive node, ...).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Policy or scenario description that cannot be run.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact solver or oracle asked to handle an instance beyond its budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kxdyn

#endif  // KXDYN_ERROR_H_
