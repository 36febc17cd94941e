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

#include <bit>
#include <cstdint>

namespace asc {

// IEEE 754 binary16 stored as raw bits.
//
// The codec never does arithmetic in half precision: samples are widened to
// double, all interpolation math happens there (it is exact, see scales.hpp),
// and values are narrowed back with a single round-to-nearest-even step only
// where a reconstructed sample is materialized. Narrowing goes directly from
// double to half; a double->float->half chain can round twice and land on the
// wrong side of a tie.
class half {
 public:
  half() = default;

  static constexpr half from_bits(uint16_t b) {
    half h;
    h.bits_ = b;
    return h;
  }

  constexpr uint16_t bits() const { return bits_; }

  float to_float() const {
    const uint32_t sign = static_cast<uint32_t>(bits_ & 0x8000u) << 16;
    const uint32_t exp = (bits_ >> 10) & 0x1Fu;
    const uint32_t frac = bits_ & 0x03FFu;
    uint32_t out;
    if (exp == 0) {
      if (frac == 0) {
        out = sign;  // signed zero
      } else {
        // Subnormal: value = frac * 2^-24. Renormalize into a float.
        uint32_t e = 127 - 15 + 1;
        uint32_t f = frac;
        while ((f & 0x0400u) == 0) {
          f <<= 1;
          --e;
        }
        out = sign | (e << 23) | ((f & 0x03FFu) << 13);
      }
    } else if (exp == 31) {
      out = sign | 0x7F800000u | (frac << 13);  // inf / NaN (payload kept)
    } else {
      out = sign | ((exp - 15 + 127) << 23) | (frac << 13);
    }
    return std::bit_cast<float>(out);
  }

  double to_double() const { return static_cast<double>(to_float()); }

  // Round-to-nearest-even conversion operating on the double's bits, so the
  // rounding happens exactly once.
  static half from_double(double v) {
    const uint64_t b = std::bit_cast<uint64_t>(v);
    const uint16_t sign = static_cast<uint16_t>((b >> 48) & 0x8000u);
    const uint64_t abs = b & 0x7FFFFFFFFFFFFFFFull;

    if (abs > 0x7FF0000000000000ull) return from_bits(sign | 0x7E00u);  // NaN
    // 65520 is the midpoint between the largest finite half (65504) and
    // 2^16; round-to-even resolves it upward, i.e. to infinity.
    if (abs >= std::bit_cast<uint64_t>(65520.0)) return from_bits(sign | 0x7C00u);
    if (abs == 0) return from_bits(sign);

    const int exp = static_cast<int>(abs >> 52);
    // Subnormal doubles are below 2^-1022, far under half's 2^-25 tie point.
    if (exp == 0) return from_bits(sign);

    const int e = exp - 1023;
    const uint64_t m = (abs & 0xFFFFFFFFFFFFFull) | (1ull << 52);  // 53 bits

    // Shift m so one unit equals one half ulp, keeping round and sticky bits.
    // Normal halves keep 11 significand bits (drop 42); subnormal results
    // shift further by the exponent deficit.
    int shift = 42;
    if (e < -14) shift += -14 - e;

    uint32_t q;
    bool round, sticky;
    if (shift >= 64) {
      q = 0;
      round = false;
      sticky = true;
    } else {
      q = static_cast<uint32_t>(m >> shift);
      round = (m >> (shift - 1)) & 1u;
      sticky = (m & ((1ull << (shift - 1)) - 1)) != 0;
    }
    if (round && (sticky || (q & 1u))) ++q;

    if (e >= -14) {
      uint32_t biased = static_cast<uint32_t>(e + 15);
      if (q == 0x800u) {  // rounding carried into the exponent
        q = 0x400u;
        ++biased;
      }
      if (biased >= 31) return from_bits(sign | 0x7C00u);  // defensive
      return from_bits(static_cast<uint16_t>(sign | (biased << 10) | (q & 0x3FFu)));
    }
    // Subnormal: q <= 0x400; the 0x400 case is exactly the smallest normal
    // and the encoding below produces it for free.
    return from_bits(static_cast<uint16_t>(sign | q));
  }

  bool is_nan() const { return (bits_ & 0x7C00u) == 0x7C00u && (bits_ & 0x03FFu) != 0; }
  bool is_inf() const { return (bits_ & 0x7FFFu) == 0x7C00u; }
  bool is_finite() const { return (bits_ & 0x7C00u) != 0x7C00u; }
  bool is_zero() const { return (bits_ & 0x7FFFu) == 0; }
  bool sign_bit() const { return (bits_ & 0x8000u) != 0; }

  friend bool operator==(half a, half b) { return a.to_float() == b.to_float(); }
  friend bool operator!=(half a, half b) { return !(a == b); }
  friend bool operator<(half a, half b) { return a.to_float() < b.to_float(); }
  friend bool operator<=(half a, half b) { return a.to_float() <= b.to_float(); }
  friend bool operator>(half a, half b) { return a.to_float() > b.to_float(); }
  friend bool operator>=(half a, half b) { return a.to_float() >= b.to_float(); }

 private:
  uint16_t bits_ = 0;
};

}  // namespace asc
