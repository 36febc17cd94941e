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
#include <optional>
#include <utility>
#include <vector>

#include "asc/error.hpp"
#include "asc/parallel.hpp"
#include "asc/reorder.hpp"
#include "asc/scales.hpp"
#include "asc/tensor.hpp"

namespace asc {

// Endpoint storage per block. Two-endpoint keeps the block's (min, max) and
// works for any data. One-endpoint assumes non-negative samples, fixes
// m = 0, stores only the max, and spends the freed sign/top bit of the
// stored endpoint on the scale flag.
enum class EndpointMode : uint8_t {
  one = 0,
  two = 1,
};

// Scale selection policy. Adaptive picks the lower-L1 scale per block; the
// forced settings exist for ablation runs. A forced log-linear block with
// zero range is emitted as revised-linear: equal endpoints cannot signal the
// log choice on the wire and both scales reconstruct identically there.
enum class ScaleMode : uint8_t {
  adaptive = 0,
  revised_only = 1,
  log_only = 2,
};

struct CodecConfig {
  BlockShape shape{1, 8, 1};
  EndpointMode endpoints = EndpointMode::two;
  bool vbr = false;
  ScaleMode scale_mode = ScaleMode::adaptive;

  friend bool operator==(const CodecConfig& a, const CodecConfig& b) {
    return a.shape == b.shape && a.endpoints == b.endpoints && a.vbr == b.vbr &&
           a.scale_mode == b.scale_mode;
  }
};

template <typename T>
struct EncodedBlock {
  ScaleKind scale = ScaleKind::revised_linear;
  T endpoint_min{};  // one-endpoint mode: always the zero sample
  T endpoint_max{};
  std::vector<uint8_t> indices;  // one 3-bit entry per sample, block raster order

  friend bool operator==(const EncodedBlock& a, const EncodedBlock& b) {
    return a.scale == b.scale &&
           sample_traits<T>::to_raw(a.endpoint_min) == sample_traits<T>::to_raw(b.endpoint_min) &&
           sample_traits<T>::to_raw(a.endpoint_max) == sample_traits<T>::to_raw(b.endpoint_max) &&
           a.indices == b.indices;
  }
};

template <typename T>
struct EncodedTensor {
  using sample_type = T;

  CodecConfig config;
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 0;
  std::optional<ChannelPermutation> permutation;
  // Dense path: one entry per grid block in partition order.
  // Sparse path: one entry per compacted nonzero block.
  std::vector<EncodedBlock<T>> blocks;
  // Sparse path only: one bit per source sample in raster order, LSB-first
  // within each byte, 1 = nonzero.
  std::vector<uint8_t> mask;

  friend bool operator==(const EncodedTensor& a, const EncodedTensor& b) {
    return a.config == b.config && a.width == b.width && a.height == b.height &&
           a.channels == b.channels && a.permutation == b.permutation && a.blocks == b.blocks &&
           a.mask == b.mask;
  }
};

// (m, M) for a block under the given endpoint mode. One-endpoint mode
// requires non-negative data (mode violation otherwise) and canonicalizes a
// zero max to +0 so the stored endpoint's top bit is free for the scale
// flag. Scans are sequential, ties keep the earlier sample: deterministic.
template <typename T>
std::pair<T, T> find_endpoints(const std::vector<T>& values, EndpointMode mode) {
  using traits = sample_traits<T>;
  if (values.empty()) throw invalid_argument_error("block has no values");

  if (mode == EndpointMode::one) {
    T max = values[0];
    for (const T& v : values) {
      if (!traits::non_negative(v))
        throw mode_violation_error("one-endpoint mode requires non-negative samples");
      if (traits::less(max, v)) max = v;
    }
    if (traits::is_zero(max)) max = T{};  // normalize -0 to +0
    return {T{}, max};
  }

  T min = values[0];
  T max = values[0];
  for (const T& v : values) {
    if (traits::less(v, min)) min = v;
    if (traits::less(max, v)) max = v;
  }
  return {min, max};
}

// Sum of absolute reconstruction errors for a block under a table, in the
// wide domain, measured against what the decoder will actually produce
// (integer points are exact; fp16 points are compared after narrowing).
template <typename T>
typename sample_traits<T>::wide_type block_l1(const std::vector<T>& values,
                                              const InterpolationTable<T>& tbl) {
  using traits = sample_traits<T>;
  typename traits::wide_type total{};
  for (const T& v : values) {
    const int idx = assign_index(v, tbl);
    const auto rec = traits::widen(reconstruct(tbl, idx));
    const auto d = traits::widen(v) - rec;
    total += d < 0 ? -d : d;
  }
  return total;
}

template <typename T>
EncodedBlock<T> encode_block(const std::vector<T>& values, EndpointMode mode,
                             ScaleMode scale_mode = ScaleMode::adaptive) {
  using traits = sample_traits<T>;
  auto [m, M] = find_endpoints(values, mode);

  EncodedBlock<T> enc;
  enc.endpoint_min = m;
  enc.endpoint_max = M;

  const bool zero_range = traits::widen(m) == traits::widen(M);
  if (zero_range || scale_mode == ScaleMode::revised_only) {
    enc.scale = ScaleKind::revised_linear;
  } else if (scale_mode == ScaleMode::log_only) {
    enc.scale = ScaleKind::log_linear;
  } else {
    const auto rev = build_table(ScaleKind::revised_linear, m, M);
    const auto log = build_table(ScaleKind::log_linear, m, M);
    // Strict improvement required: on a tie revised-linear wins, which also
    // covers the zero-range case handled above.
    enc.scale =
        block_l1(values, log) < block_l1(values, rev) ? ScaleKind::log_linear
                                                      : ScaleKind::revised_linear;
  }

  const auto tbl = build_table(enc.scale, m, M);
  enc.indices.reserve(values.size());
  for (const T& v : values) enc.indices.push_back(static_cast<uint8_t>(assign_index(v, tbl)));
  return enc;
}

// Reconstructs a block's samples. The caller provides the geometry; the
// encoded record itself stores only scale, endpoints and indices.
template <typename T>
Block<T> decode_block(const EncodedBlock<T>& enc, BlockShape shape, uint32_t x0 = 0,
                      uint32_t y0 = 0, uint32_t c0 = 0) {
  if (enc.indices.size() != shape.volume())
    throw invalid_argument_error("index count does not match block shape");
  const auto tbl = build_table(enc.scale, enc.endpoint_min, enc.endpoint_max);

  Block<T> blk;
  blk.shape = shape;
  blk.x0 = x0;
  blk.y0 = y0;
  blk.c0 = c0;
  blk.values.reserve(enc.indices.size());
  for (uint8_t idx : enc.indices) {
    if (idx > 7) throw invalid_argument_error("index out of range");
    blk.values.push_back(reconstruct(tbl, idx));
  }
  return blk;
}

// Dense (constant-bitrate) whole-tensor encode. Blocks are processed in
// partition order; a thread pool may run them concurrently but each block
// writes its own slot, so the result never depends on scheduling. An
// optional permutation reorders channels first and rides along in the
// container so decode can undo it.
template <typename T>
EncodedTensor<T> encode_cbr(const FeatureMap<T>& map, const CodecConfig& config,
                            const std::optional<ChannelPermutation>& perm = std::nullopt) {
  if (config.vbr) throw invalid_argument_error("encode_cbr cannot take a sparse config");

  const FeatureMap<T>* src = &map;
  FeatureMap<T> permuted;
  if (perm) {
    permuted = apply_permutation(map, *perm);
    src = &permuted;
  }

  EncodedTensor<T> enc;
  enc.config = config;
  enc.width = map.width;
  enc.height = map.height;
  enc.channels = map.channels;
  enc.permutation = perm;

  const auto blocks = partition(*src, config.shape);
  enc.blocks.resize(blocks.size());
  parallel_for(blocks.size(), [&](size_t i) {
    enc.blocks[i] = encode_block(blocks[i].values, config.endpoints, config.scale_mode);
  });
  return enc;
}

template <typename T>
FeatureMap<T> decode_cbr(const EncodedTensor<T>& enc) {
  if (enc.config.vbr) throw invalid_argument_error("decode_cbr cannot take a sparse stream");
  const BlockShape shape = enc.config.shape;
  if (shape.volume() == 0) throw invalid_argument_error("block shape must be non-empty");

  const uint32_t gx = detail::ceil_div_u32(enc.width, shape.w);
  const uint32_t gy = detail::ceil_div_u32(enc.height, shape.h);
  const uint32_t gc = detail::ceil_div_u32(enc.channels, shape.c);
  const size_t expected = static_cast<size_t>(gx) * gy * gc;
  if (enc.blocks.size() != expected)
    throw corrupt_stream_error(stream_fault::bad_block, "block count does not cover the grid");

  std::vector<Block<T>> blocks(enc.blocks.size());
  parallel_for(enc.blocks.size(), [&](size_t i) {
    const uint32_t bx = static_cast<uint32_t>(i % gx);
    const uint32_t by = static_cast<uint32_t>((i / gx) % gy);
    const uint32_t bc = static_cast<uint32_t>(i / (static_cast<size_t>(gx) * gy));
    blocks[i] =
        decode_block(enc.blocks[i], shape, bx * shape.w, by * shape.h, bc * shape.c);
  });

  FeatureMap<T> map = reassemble(blocks, enc.width, enc.height, enc.channels, shape);
  if (enc.permutation) map = apply_permutation(map, invert(*enc.permutation));
  return map;
}

}  // namespace asc
