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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "asc/error.hpp"
#include "asc/format.hpp"

namespace asc {

// Block extent along width, height and channel. The same struct doubles as
// the compaction shape for the sparse path, where blocks are 1-D (bs, 1, 1).
struct BlockShape {
  uint32_t w = 0;
  uint32_t h = 0;
  uint32_t c = 0;

  constexpr size_t volume() const {
    return static_cast<size_t>(w) * static_cast<size_t>(h) * static_cast<size_t>(c);
  }
  friend constexpr bool operator==(BlockShape a, BlockShape b) {
    return a.w == b.w && a.h == b.h && a.c == b.c;
  }
  friend constexpr bool operator!=(BlockShape a, BlockShape b) { return !(a == b); }
};

// Dense W x H x C tensor in raster order: x fastest, then y, then channel.
// data[(ch * H + y) * W + x] holds the sample at (x, y, ch).
template <typename T>
struct FeatureMap {
  static_assert(is_sample_type<T>);
  using sample_type = T;

  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 0;
  std::vector<T> data;

  size_t sample_count() const {
    return static_cast<size_t>(width) * static_cast<size_t>(height) *
           static_cast<size_t>(channels);
  }
  T& at(uint32_t x, uint32_t y, uint32_t ch) {
    return data[(static_cast<size_t>(ch) * height + y) * width + x];
  }
  const T& at(uint32_t x, uint32_t y, uint32_t ch) const {
    return data[(static_cast<size_t>(ch) * height + y) * width + x];
  }
  friend bool operator==(const FeatureMap& a, const FeatureMap& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels) return false;
    if (a.data.size() != b.data.size()) return false;
    for (size_t i = 0; i < a.data.size(); ++i) {
      if (sample_traits<T>::to_raw(a.data[i]) != sample_traits<T>::to_raw(b.data[i]))
        return false;
    }
    return true;
  }
  friend bool operator!=(const FeatureMap& a, const FeatureMap& b) { return !(a == b); }
};

// One block cut out of a map. `values` uses the same raster convention as
// FeatureMap, restricted to the block extent. The origin is in source map
// coordinates and is always grid-aligned (a multiple of the block extent).
template <typename T>
struct Block {
  static_assert(is_sample_type<T>);

  BlockShape shape;
  uint32_t x0 = 0;
  uint32_t y0 = 0;
  uint32_t c0 = 0;
  std::vector<T> values;
};

namespace detail {
inline uint32_t ceil_div_u32(uint32_t a, uint32_t b) { return (a + b - 1) / b; }
}  // namespace detail

// Turns a 1-D block budget into a near-cubical 3-D extent: starting from
// (1, 1, n), trade four channels for a 2x2 spatial patch until the channel
// depth is no more than twice the width. Sizes 4..64 land on
// (2,2,1), (2,2,2), (2,2,4), (4,4,2), (4,4,4); 1024 lands on (8,8,16).
inline BlockShape derive_cubical_shape(uint32_t block_size) {
  if (block_size == 0 || !std::has_single_bit(block_size))
    throw invalid_argument_error("block size must be a power of two");
  BlockShape s{1, 1, block_size};
  while (s.c > 2 * s.w && s.c >= 4) {
    s.w *= 2;
    s.h *= 2;
    s.c /= 4;
  }
  return s;
}

// Cuts the map into blocks on a regular grid, blocks ordered the same way
// samples are (origin x fastest, then y, then channel). Partial edge blocks
// are padded by clamping coordinates to the map edge, so the pad replicates
// the last row/column/channel and never widens the value range.
template <typename T>
std::vector<Block<T>> partition(const FeatureMap<T>& map, BlockShape shape) {
  if (shape.volume() == 0) throw invalid_argument_error("block shape must be non-empty");
  if (map.sample_count() == 0) throw invalid_argument_error("feature map must be non-empty");
  if (map.data.size() != map.sample_count())
    throw invalid_argument_error("feature map data does not match its dimensions");

  const uint32_t gx = detail::ceil_div_u32(map.width, shape.w);
  const uint32_t gy = detail::ceil_div_u32(map.height, shape.h);
  const uint32_t gc = detail::ceil_div_u32(map.channels, shape.c);

  std::vector<Block<T>> blocks;
  blocks.reserve(static_cast<size_t>(gx) * gy * gc);
  for (uint32_t bc = 0; bc < gc; ++bc) {
    for (uint32_t by = 0; by < gy; ++by) {
      for (uint32_t bx = 0; bx < gx; ++bx) {
        Block<T> blk;
        blk.shape = shape;
        blk.x0 = bx * shape.w;
        blk.y0 = by * shape.h;
        blk.c0 = bc * shape.c;
        blk.values.reserve(shape.volume());
        for (uint32_t dc = 0; dc < shape.c; ++dc) {
          const uint32_t ch = std::min(blk.c0 + dc, map.channels - 1);
          for (uint32_t dy = 0; dy < shape.h; ++dy) {
            const uint32_t y = std::min(blk.y0 + dy, map.height - 1);
            for (uint32_t dx = 0; dx < shape.w; ++dx) {
              const uint32_t x = std::min(blk.x0 + dx, map.width - 1);
              blk.values.push_back(map.at(x, y, ch));
            }
          }
        }
        blocks.push_back(std::move(blk));
      }
    }
  }
  return blocks;
}

// Inverse of partition. Blocks must arrive complete and in exactly the
// partition order; anything else (missing, duplicated, reordered, or
// misaligned origins) is treated as a corrupted container. Samples the pad
// added beyond the map edge are dropped.
template <typename T>
FeatureMap<T> reassemble(const std::vector<Block<T>>& blocks, uint32_t width, uint32_t height,
                         uint32_t channels, BlockShape shape) {
  if (shape.volume() == 0) throw invalid_argument_error("block shape must be non-empty");
  if (width == 0 || height == 0 || channels == 0)
    throw invalid_argument_error("feature map dimensions must be non-zero");

  const uint32_t gx = detail::ceil_div_u32(width, shape.w);
  const uint32_t gy = detail::ceil_div_u32(height, shape.h);
  const uint32_t gc = detail::ceil_div_u32(channels, shape.c);
  const size_t expected = static_cast<size_t>(gx) * gy * gc;
  if (blocks.size() != expected)
    throw corrupt_stream_error(stream_fault::bad_block, "block count does not cover the grid");

  FeatureMap<T> map;
  map.width = width;
  map.height = height;
  map.channels = channels;
  map.data.resize(map.sample_count());

  size_t i = 0;
  for (uint32_t bc = 0; bc < gc; ++bc) {
    for (uint32_t by = 0; by < gy; ++by) {
      for (uint32_t bx = 0; bx < gx; ++bx, ++i) {
        const Block<T>& blk = blocks[i];
        if (blk.shape != shape || blk.values.size() != shape.volume())
          throw corrupt_stream_error(stream_fault::bad_block, "block shape mismatch");
        if (blk.x0 != bx * shape.w || blk.y0 != by * shape.h || blk.c0 != bc * shape.c)
          throw corrupt_stream_error(stream_fault::bad_block,
                                     "block origin out of order or off-grid");
        size_t v = 0;
        for (uint32_t dc = 0; dc < shape.c; ++dc) {
          for (uint32_t dy = 0; dy < shape.h; ++dy) {
            for (uint32_t dx = 0; dx < shape.w; ++dx, ++v) {
              const uint32_t x = blk.x0 + dx;
              const uint32_t y = blk.y0 + dy;
              const uint32_t ch = blk.c0 + dc;
              if (x < width && y < height && ch < channels) map.at(x, y, ch) = blk.values[v];
            }
          }
        }
      }
    }
  }
  return map;
}

}  // namespace asc
