// Copyright 2026 The qvlc Authors
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

#ifndef QVLC_ERROR_H_
#define QVLC_ERROR_H_

#include <stdexcept>
#include <string>

namespace qvlc {

// Precondition violations throw std::invalid_argument. The two types below
// carry the remaining failure classes so the CLI can map them to exit codes.

/// A dimension, sequence count, or memory cap would be exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal identity or invariant failed numerically.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qvlc

#endif  // QVLC_ERROR_H_
