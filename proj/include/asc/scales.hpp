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

#include <array>
#include <cstdint>

#include "asc/error.hpp"
#include "asc/format.hpp"

namespace asc {

// The codec quantizes each block to 8 interpolation points between the block
// endpoints m <= M. Two point layouts are supported, both expressed as
// dyadic fractions of the range R = M - m so hardware can build every point
// and threshold from shifted multiples of R:
//
//   revised-linear  points     k*R/8  for k in {0,1,2,3,4,5,6,8}
//                   thresholds t*R/16 for t in {1,3,5,7,9,11,14}
//   log-linear      points     k*R/32 for k in {0,1,2,3,4,8,16,32}
//                   thresholds t*R/64 for t in {1,3,5,7,12,24,48}
//
// The revised-linear layout is the uniform 8-step ladder with the awkward
// divide-by-7 of a true linear ramp snapped to eighths (the top step spans
// 2R/8). The log-linear layout halves the range repeatedly, giving fine
// resolution near m for heavy-tailed data. Every threshold is the exact
// midpoint of its neighbouring points, so index assignment is a
// nearest-point decision with ties resolved to the lower point.
//
// Values above hold exactly in the wide domain: int64_t for integer formats
// (floor division) and double for fp16, where each product and sum fits well
// inside 53 significand bits and is therefore computed exactly.

enum class ScaleKind : uint8_t {
  revised_linear = 0,
  log_linear = 1,
};

inline const char* to_string(ScaleKind k) {
  return k == ScaleKind::revised_linear ? "revised-linear" : "log-linear";
}

namespace detail {

struct ScaleCoeffs {
  int point_num[8];
  int point_shift;      // divide by 2^point_shift
  int threshold_num[7];
  int threshold_shift;  // divide by 2^threshold_shift
};

inline constexpr ScaleCoeffs kRevisedCoeffs{{0, 1, 2, 3, 4, 5, 6, 8}, 3,
                                            {1, 3, 5, 7, 9, 11, 14}, 4};
inline constexpr ScaleCoeffs kLogCoeffs{{0, 1, 2, 3, 4, 8, 16, 32}, 5,
                                        {1, 3, 5, 7, 12, 24, 48}, 6};

inline constexpr const ScaleCoeffs& coeffs(ScaleKind k) {
  return k == ScaleKind::revised_linear ? kRevisedCoeffs : kLogCoeffs;
}

// Floor division for the wide domain: exact shift for non-negative int64
// numerators (all shifted-form numerators are >= 0), plain division for
// doubles where the dyadic scaling is exact anyway.
inline int64_t scaled(int64_t r, int num, int shift) { return (r * num) >> shift; }
inline double scaled(double r, int num, int shift) {
  return (r * num) / static_cast<double>(1 << shift);
}

// floor(a / b) for b > 0 (C++ integer division truncates toward zero).
inline constexpr int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

// Shifted-domain points: offsets from m, i.e. point_k - m, computed as
// floor(num_k * R / 2^s) in the wide domain.
template <typename T>
std::array<typename sample_traits<T>::wide_type, 8> shifted_points(
    ScaleKind kind, typename sample_traits<T>::wide_type range) {
  const detail::ScaleCoeffs& c = detail::coeffs(kind);
  std::array<typename sample_traits<T>::wide_type, 8> out{};
  for (int k = 0; k < 8; ++k) out[k] = detail::scaled(range, c.point_num[k], c.point_shift);
  return out;
}

// Shifted-domain thresholds, compared against x - m.
template <typename T>
std::array<typename sample_traits<T>::wide_type, 7> shifted_thresholds(
    ScaleKind kind, typename sample_traits<T>::wide_type range) {
  const detail::ScaleCoeffs& c = detail::coeffs(kind);
  std::array<typename sample_traits<T>::wide_type, 7> out{};
  for (int t = 0; t < 7; ++t)
    out[t] = detail::scaled(range, c.threshold_num[t], c.threshold_shift);
  return out;
}

// Complete block-local quantization table for endpoints m <= M.
// `points` are reconstruction values in the sample domain (m + shifted
// point); `thresholds` stay in the shifted domain.
template <typename T>
struct InterpolationTable {
  using wide = typename sample_traits<T>::wide_type;

  ScaleKind kind = ScaleKind::revised_linear;
  T m{};
  T M{};
  std::array<wide, 8> points{};
  std::array<wide, 7> thresholds{};
};

template <typename T>
InterpolationTable<T> build_table(ScaleKind kind, T m, T M) {
  using traits = sample_traits<T>;
  using wide = typename traits::wide_type;
  const wide mw = traits::widen(m);
  const wide Mw = traits::widen(M);
  if (mw > Mw) throw invalid_argument_error("endpoints out of order (m > M)");

  InterpolationTable<T> tbl;
  tbl.kind = kind;
  tbl.m = m;
  tbl.M = M;
  const wide range = Mw - mw;
  const auto pts = shifted_points<T>(kind, range);
  for (int k = 0; k < 8; ++k) tbl.points[k] = mw + pts[k];
  tbl.thresholds = shifted_thresholds<T>(kind, range);
  return tbl;
}

// Index of the quantization point for x: the largest i whose threshold is
// strictly exceeded by x - m, or 0. A hardware priority encoder over the
// seven comparison bits computes the same thing.
template <typename T>
int assign_index(T x, const InterpolationTable<T>& tbl) {
  const auto d = sample_traits<T>::widen(x) - sample_traits<T>::widen(tbl.m);
  int idx = 0;
  for (int i = 0; i < 7; ++i) {
    if (d > tbl.thresholds[i]) idx = i + 1;
  }
  return idx;
}

// Narrowed reconstruction value for an index. Exact for integer formats;
// one round-to-nearest-even step for fp16.
template <typename T>
T reconstruct(const InterpolationTable<T>& tbl, int index) {
  return sample_traits<T>::narrow(tbl.points[static_cast<size_t>(index)]);
}

// True linear ladder v_i = ((7-i)*m + i*M) / 7, floor for integer formats.
// Reference only: the codec never emits it, the datapath model uses it as
// the baseline its variants are measured against.
template <typename T>
std::array<typename sample_traits<T>::wide_type, 8> linear_reference_points(T m, T M) {
  using traits = sample_traits<T>;
  using wide = typename traits::wide_type;
  const wide mw = traits::widen(m);
  const wide Mw = traits::widen(M);
  if (mw > Mw) throw invalid_argument_error("endpoints out of order (m > M)");
  std::array<wide, 8> out{};
  for (int i = 0; i < 8; ++i) {
    if constexpr (traits::integral) {
      out[i] = detail::floor_div((7 - i) * mw + i * Mw, 7);
    } else {
      out[i] = ((7 - i) * mw + i * Mw) / 7.0;
    }
  }
  return out;
}

}  // namespace asc
