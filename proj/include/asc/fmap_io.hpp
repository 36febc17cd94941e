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
#include <variant>
#include <vector>

#include "asc/error.hpp"
#include "asc/tensor.hpp"

namespace asc {

// Raw feature-map container (.fmap), little-endian throughout:
//
//   offset  size  field
//   0       4     magic "FMAP"
//   4       1     version (1)
//   5       1     sample format (0 int8, 1 int16, 2 fp16)
//   6       1     reserved (0)
//   7       4     width
//   11      4     height
//   15      4     channels
//   19      -     payload, W*H*C samples in raster order (x, then y, then
//                 channel); int8 one byte each, int16/fp16 two bytes each,
//                 fp16 as raw binary16 bits
//
// fp16 payloads must be finite: NaN and +-inf samples are rejected at load
// so every downstream invariant can assume ordered, finite data.

using AnyFeatureMap = std::variant<FeatureMap<int8_t>, FeatureMap<int16_t>, FeatureMap<half>>;

namespace detail {

inline constexpr char kFmapMagic[4] = {'F', 'M', 'A', 'P'};
inline constexpr uint8_t kFmapVersion = 1;
inline constexpr size_t kFmapHeaderSize = 19;

inline uint32_t read_u32le(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

inline void write_u32le(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

template <typename T>
FeatureMap<T> load_fmap_payload(const std::vector<uint8_t>& bytes, uint32_t w, uint32_t h,
                                uint32_t c) {
  FeatureMap<T> map;
  map.width = w;
  map.height = h;
  map.channels = c;
  const size_t n = map.sample_count();
  const size_t sample_bytes = sample_traits<T>::bit_width / 8;
  const size_t want = kFmapHeaderSize + n * sample_bytes;
  if (bytes.size() < want)
    throw corrupt_stream_error(stream_fault::truncated, "payload shorter than header promises");
  if (bytes.size() > want)
    throw corrupt_stream_error(stream_fault::trailing_garbage, "bytes past end of payload");

  map.data.reserve(n);
  const uint8_t* p = bytes.data() + kFmapHeaderSize;
  for (size_t i = 0; i < n; ++i, p += sample_bytes) {
    uint16_t raw = p[0];
    if (sample_bytes == 2) raw |= static_cast<uint16_t>(p[1]) << 8;
    T v = sample_traits<T>::from_raw(raw);
    if (!sample_traits<T>::finite(v))
      throw corrupt_stream_error(stream_fault::bad_value, "non-finite fp16 sample");
    map.data.push_back(v);
  }
  return map;
}

}  // namespace detail

inline AnyFeatureMap load_fmap(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < detail::kFmapHeaderSize)
    throw corrupt_stream_error(stream_fault::truncated, "shorter than header");
  if (!std::equal(detail::kFmapMagic, detail::kFmapMagic + 4,
                  reinterpret_cast<const char*>(bytes.data())))
    throw corrupt_stream_error(stream_fault::bad_magic, "not a feature-map container");
  if (bytes[4] != detail::kFmapVersion)
    throw corrupt_stream_error(stream_fault::bad_version, "unsupported version");
  const uint8_t fmt = bytes[5];
  if (fmt > 2)
    throw corrupt_stream_error(stream_fault::bad_header, "unknown sample format");
  const uint32_t w = detail::read_u32le(bytes.data() + 7);
  const uint32_t h = detail::read_u32le(bytes.data() + 11);
  const uint32_t c = detail::read_u32le(bytes.data() + 15);
  if (w == 0 || h == 0 || c == 0)
    throw corrupt_stream_error(stream_fault::bad_header, "zero dimension");

  switch (static_cast<SampleFormat>(fmt)) {
    case SampleFormat::int8:
      return detail::load_fmap_payload<int8_t>(bytes, w, h, c);
    case SampleFormat::int16:
      return detail::load_fmap_payload<int16_t>(bytes, w, h, c);
    case SampleFormat::fp16:
    default:
      return detail::load_fmap_payload<half>(bytes, w, h, c);
  }
}

template <typename T>
std::vector<uint8_t> store_fmap(const FeatureMap<T>& map) {
  if (map.sample_count() == 0) throw invalid_argument_error("feature map must be non-empty");
  if (map.data.size() != map.sample_count())
    throw invalid_argument_error("feature map data does not match its dimensions");

  std::vector<uint8_t> out;
  const size_t sample_bytes = sample_traits<T>::bit_width / 8;
  out.reserve(detail::kFmapHeaderSize + map.data.size() * sample_bytes);
  out.insert(out.end(), detail::kFmapMagic, detail::kFmapMagic + 4);
  out.push_back(detail::kFmapVersion);
  out.push_back(static_cast<uint8_t>(sample_traits<T>::format));
  out.push_back(0);
  detail::write_u32le(out, map.width);
  detail::write_u32le(out, map.height);
  detail::write_u32le(out, map.channels);
  for (const T& v : map.data) {
    if (!sample_traits<T>::finite(v))
      throw invalid_argument_error("non-finite fp16 sample");
    const uint16_t raw = sample_traits<T>::to_raw(v);
    out.push_back(static_cast<uint8_t>(raw));
    if (sample_bytes == 2) out.push_back(static_cast<uint8_t>(raw >> 8));
  }
  return out;
}

inline std::vector<uint8_t> store_fmap(const AnyFeatureMap& map) {
  return std::visit([](const auto& m) { return store_fmap(m); }, map);
}

inline SampleFormat format_of(const AnyFeatureMap& map) {
  return std::visit(
      [](const auto& m) {
        return sample_traits<typename std::decay_t<decltype(m)>::sample_type>::format;
      },
      map);
}

}  // namespace asc
