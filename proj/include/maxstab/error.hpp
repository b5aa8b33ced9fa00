// Copyright 2026 The maxstab Authors.
//
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

#ifndef MAXSTAB_ERROR_HPP_
#define MAXSTAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace maxstab {

// Raised for inputs that violate a documented precondition (bad parameters,
// mismatched dimensions, measures off the sphere, non-PSD matrices, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace maxstab

#endif  // MAXSTAB_ERROR_HPP_
