// Copyright 2026 The ASC Codec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace asc {

// Error vocabulary, smallest to largest scope:
//   invalid_argument_error  caller broke an API precondition
//   mode_violation_error    data breaks the selected endpoint mode
//                           (one-endpoint mode requires non-negative samples)
//   corrupt_stream_error    a serialized container failed validation;
//                           fault() says which check tripped

class invalid_argument_error : public std::invalid_argument {
 public:
  explicit invalid_argument_error(const std::string& what) : std::invalid_argument(what) {}
};

class mode_violation_error : public std::runtime_error {
 public:
  explicit mode_violation_error(const std::string& what) : std::runtime_error(what) {}
};

enum class stream_fault {
  bad_magic,
  bad_version,
  bad_header,
  truncated,
  trailing_garbage,
  bad_mask,
  bad_block,
  bad_permutation,
  bad_value,  // decoded a sample/endpoint outside the format's domain (NaN, inf)
};

inline const char* to_string(stream_fault f) {
  switch (f) {
    case stream_fault::bad_magic: return "bad-magic";
    case stream_fault::bad_version: return "bad-version";
    case stream_fault::bad_header: return "bad-header";
    case stream_fault::truncated: return "truncated";
    case stream_fault::trailing_garbage: return "trailing-garbage";
    case stream_fault::bad_mask: return "bad-mask";
    case stream_fault::bad_block: return "bad-block";
    case stream_fault::bad_permutation: return "bad-permutation";
    case stream_fault::bad_value: return "bad-value";
  }
  return "unknown";
}

class corrupt_stream_error : public std::runtime_error {
 public:
  corrupt_stream_error(stream_fault fault, const std::string& what)
      : std::runtime_error(std::string("corrupt stream [") + to_string(fault) + "]: " + what),
        fault_(fault) {}

  stream_fault fault() const { return fault_; }

 private:
  stream_fault fault_;
};

}  // namespace asc
