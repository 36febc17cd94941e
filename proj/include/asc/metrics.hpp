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

#include <cmath>
#include <cstdint>
#include <limits>

#include "asc/codec.hpp"
#include "asc/tensor.hpp"

namespace asc {

// Reconstruction quality between an original and a decoded map. PSNR uses
// the format's positive full scale as peak (127, 32767, 65504) and is
// +infinity exactly when the MSE is zero.
struct QualityReport {
  uint64_t samples = 0;
  double l1_total = 0.0;
  double l1_mean = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;
  double max_abs_error = 0.0;
  // Per-scale block usage, available when the caller also has the encoded
  // stream (compare() alone cannot know it).
  bool has_scale_usage = false;
  uint64_t revised_blocks = 0;
  uint64_t log_blocks = 0;
};

template <typename T>
QualityReport compare(const FeatureMap<T>& original, const FeatureMap<T>& decoded) {
  if (original.width != decoded.width || original.height != decoded.height ||
      original.channels != decoded.channels)
    throw invalid_argument_error("maps disagree on dimensions");
  if (original.data.size() != original.sample_count() ||
      decoded.data.size() != decoded.sample_count())
    throw invalid_argument_error("feature map data does not match its dimensions");
  if (original.sample_count() == 0) throw invalid_argument_error("feature map must be non-empty");

  QualityReport q;
  q.samples = original.sample_count();
  double sq = 0.0;
  for (size_t i = 0; i < original.data.size(); ++i) {
    const double d = static_cast<double>(sample_traits<T>::widen(original.data[i])) -
                     static_cast<double>(sample_traits<T>::widen(decoded.data[i]));
    const double a = std::fabs(d);
    q.l1_total += a;
    sq += d * d;
    if (a > q.max_abs_error) q.max_abs_error = a;
  }
  q.l1_mean = q.l1_total / static_cast<double>(q.samples);
  q.mse = sq / static_cast<double>(q.samples);
  if (q.mse == 0.0) {
    q.psnr_db = std::numeric_limits<double>::infinity();
  } else {
    const double peak = sample_traits<T>::psnr_peak;
    q.psnr_db = 10.0 * std::log10(peak * peak / q.mse);
  }
  return q;
}

template <typename T>
void attach_scale_usage(QualityReport& q, const EncodedTensor<T>& enc) {
  q.has_scale_usage = true;
  q.revised_blocks = 0;
  q.log_blocks = 0;
  for (const auto& b : enc.blocks) {
    if (b.scale == ScaleKind::revised_linear) {
      ++q.revised_blocks;
    } else {
      ++q.log_blocks;
    }
  }
}

}  // namespace asc
