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

#include <cstdint>
#include <type_traits>

#include "asc/half.hpp"

namespace asc {

enum class SampleFormat : uint8_t {
  int8 = 0,
  int16 = 1,
  fp16 = 2,
};

inline const char* to_string(SampleFormat f) {
  switch (f) {
    case SampleFormat::int8: return "int8";
    case SampleFormat::int16: return "int16";
    case SampleFormat::fp16: return "fp16";
  }
  return "unknown";
}

// Per-sample-type glue. `wide_type` is the lossless working domain
// (int64_t for the integer formats, double for fp16); every piece of
// interpolation math runs there and `narrow` is the only place precision is
// given up (exact for integers, round-to-nearest-even for fp16).
template <typename T>
struct sample_traits;

template <>
struct sample_traits<int8_t> {
  using wide_type = int64_t;
  static constexpr SampleFormat format = SampleFormat::int8;
  static constexpr int bit_width = 8;
  static constexpr bool integral = true;
  static constexpr double psnr_peak = 127.0;
  static constexpr int64_t widen(int8_t v) { return v; }
  static constexpr int8_t narrow(int64_t v) { return static_cast<int8_t>(v); }
  static constexpr uint16_t to_raw(int8_t v) { return static_cast<uint8_t>(v); }
  static constexpr int8_t from_raw(uint16_t r) {
    return static_cast<int8_t>(static_cast<uint8_t>(r));
  }
  static constexpr bool is_zero(int8_t v) { return v == 0; }
  static constexpr bool non_negative(int8_t v) { return v >= 0; }
  static constexpr bool finite(int8_t) { return true; }
  static constexpr bool less(int8_t a, int8_t b) { return a < b; }
};

template <>
struct sample_traits<int16_t> {
  using wide_type = int64_t;
  static constexpr SampleFormat format = SampleFormat::int16;
  static constexpr int bit_width = 16;
  static constexpr bool integral = true;
  static constexpr double psnr_peak = 32767.0;
  static constexpr int64_t widen(int16_t v) { return v; }
  static constexpr int16_t narrow(int64_t v) { return static_cast<int16_t>(v); }
  static constexpr uint16_t to_raw(int16_t v) { return static_cast<uint16_t>(v); }
  static constexpr int16_t from_raw(uint16_t r) { return static_cast<int16_t>(r); }
  static constexpr bool is_zero(int16_t v) { return v == 0; }
  static constexpr bool non_negative(int16_t v) { return v >= 0; }
  static constexpr bool finite(int16_t) { return true; }
  static constexpr bool less(int16_t a, int16_t b) { return a < b; }
};

template <>
struct sample_traits<half> {
  using wide_type = double;
  static constexpr SampleFormat format = SampleFormat::fp16;
  static constexpr int bit_width = 16;
  static constexpr bool integral = false;
  static constexpr double psnr_peak = 65504.0;
  static double widen(half v) { return v.to_double(); }
  static half narrow(double v) { return half::from_double(v); }
  static uint16_t to_raw(half v) { return v.bits(); }
  static half from_raw(uint16_t r) { return half::from_bits(r); }
  static bool is_zero(half v) { return v.is_zero(); }  // both signed zeros
  static bool non_negative(half v) { return !v.sign_bit() || v.is_zero(); }
  static bool finite(half v) { return v.is_finite(); }
  static bool less(half a, half b) { return a < b; }
};

template <typename T>
inline constexpr bool is_sample_type =
    std::is_same_v<T, int8_t> || std::is_same_v<T, int16_t> || std::is_same_v<T, half>;

}  // namespace asc
