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
#include <vector>

#include "asc/codec.hpp"

namespace asc {

// Sparse (variable-bitrate) path: a zero-value mask with one bit per sample
// plus the dense coder over the compacted nonzeros. The nonzeros are taken
// in raster order and grouped into 1-D blocks of the configured block size;
// a partial tail block is padded by repeating its last value, which never
// widens the endpoint range. Both fp16 zeros (+0 and -0) mask as zero and
// decode as +0.

namespace detail {

inline bool mask_bit(const std::vector<uint8_t>& mask, size_t i) {
  return (mask[i >> 3] >> (i & 7)) & 1u;
}

inline size_t mask_popcount(const std::vector<uint8_t>& mask) {
  size_t n = 0;
  for (uint8_t b : mask) n += static_cast<size_t>(std::popcount(b));
  return n;
}

}  // namespace detail

template <typename T>
EncodedTensor<T> encode_vbr(const FeatureMap<T>& map, const CodecConfig& config,
                            const std::optional<ChannelPermutation>& perm = std::nullopt) {
  using traits = sample_traits<T>;
  if (!config.vbr) throw invalid_argument_error("encode_vbr needs a sparse config");
  const size_t bs = config.shape.volume();
  if (bs == 0) throw invalid_argument_error("block shape must be non-empty");
  if (map.sample_count() == 0) throw invalid_argument_error("feature map must be non-empty");
  if (map.data.size() != map.sample_count())
    throw invalid_argument_error("feature map data does not match its dimensions");

  const FeatureMap<T>* src = &map;
  FeatureMap<T> permuted;
  if (perm) {
    permuted = apply_permutation(map, *perm);
    src = &permuted;
  }

  EncodedTensor<T> enc;
  enc.config = config;
  // Compaction is 1-D regardless of the configured extent; normalize the
  // stored shape so the stream spells out what actually happened.
  enc.config.shape = BlockShape{static_cast<uint32_t>(bs), 1, 1};
  enc.width = map.width;
  enc.height = map.height;
  enc.channels = map.channels;
  enc.permutation = perm;

  const size_t n = src->data.size();
  enc.mask.assign((n + 7) / 8, 0);
  std::vector<T> nonzeros;
  nonzeros.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!traits::is_zero(src->data[i])) {
      enc.mask[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
      nonzeros.push_back(src->data[i]);
    }
  }

  if (!nonzeros.empty()) {
    const size_t pad = (bs - nonzeros.size() % bs) % bs;
    for (size_t i = 0; i < pad; ++i) nonzeros.push_back(nonzeros.back());
    const size_t nblocks = nonzeros.size() / bs;
    enc.blocks.resize(nblocks);
    parallel_for(nblocks, [&](size_t b) {
      std::vector<T> chunk(nonzeros.begin() + b * bs, nonzeros.begin() + (b + 1) * bs);
      enc.blocks[b] = encode_block(chunk, config.endpoints, config.scale_mode);
    });
  }
  return enc;
}

template <typename T>
FeatureMap<T> decode_vbr(const EncodedTensor<T>& enc) {
  if (!enc.config.vbr) throw invalid_argument_error("decode_vbr needs a sparse stream");
  const size_t bs = enc.config.shape.volume();
  if (bs == 0) throw invalid_argument_error("block shape must be non-empty");

  FeatureMap<T> map;
  map.width = enc.width;
  map.height = enc.height;
  map.channels = enc.channels;
  const size_t n = map.sample_count();
  if (n == 0) throw corrupt_stream_error(stream_fault::bad_header, "zero dimension");
  if (enc.mask.size() != (n + 7) / 8)
    throw corrupt_stream_error(stream_fault::bad_mask, "mask size does not match dimensions");

  const size_t nnz = detail::mask_popcount(enc.mask);
  const size_t expected_blocks = (nnz + bs - 1) / bs;
  if (enc.blocks.size() < expected_blocks)
    throw corrupt_stream_error(stream_fault::bad_mask,
                               "mask population exceeds decoded value count");
  if (enc.blocks.size() > expected_blocks)
    throw corrupt_stream_error(stream_fault::bad_block, "more blocks than the mask needs");

  std::vector<T> values;
  values.reserve(enc.blocks.size() * bs);
  const BlockShape shape = enc.config.shape;
  for (const auto& b : enc.blocks) {
    const Block<T> blk = decode_block(b, shape);
    values.insert(values.end(), blk.values.begin(), blk.values.end());
  }

  map.data.assign(n, T{});
  size_t next = 0;
  for (size_t i = 0; i < n; ++i) {
    if (detail::mask_bit(enc.mask, i)) map.data[i] = values[next++];
  }

  if (enc.permutation) map = apply_permutation(map, invert(*enc.permutation));
  return map;
}

// Routing front doors: config.vbr picks the path.
template <typename T>
EncodedTensor<T> encode(const FeatureMap<T>& map, const CodecConfig& config,
                        const std::optional<ChannelPermutation>& perm = std::nullopt) {
  return config.vbr ? encode_vbr(map, config, perm) : encode_cbr(map, config, perm);
}

template <typename T>
FeatureMap<T> decode(const EncodedTensor<T>& enc) {
  return enc.config.vbr ? decode_vbr(enc) : decode_cbr(enc);
}

}  // namespace asc
