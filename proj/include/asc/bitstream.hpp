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
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asc/codec.hpp"
#include "asc/error.hpp"
#include "asc/fmap_io.hpp"
#include "asc/zvc.hpp"

namespace asc {

// Compressed container (.asc), little-endian integers, LSB-first bitpacking:
//
//   offset  size  field
//   0       4     magic "ASCF"
//   4       1     version (1)
//   5       1     flags: bit0 one-endpoint, bit1 sparse (mask present),
//                        bit2 channel permutation present
//   6       1     sample format (0 int8, 1 int16, 2 fp16)
//   7       1     block width
//   8       1     block height
//   9       2     block channels
//   11      4     width
//   15      4     height
//   19      4     channels
//   23      -     permutation (channels x u16), if flagged
//           -     zero mask (ceil(N/8) bytes, LSB-first), if sparse
//           -     block records, one contiguous bit sequence, zero-padded
//                 to a byte boundary only at the very end
//
// Block record (two-endpoint): endpoint A, endpoint B, then one 3-bit index
// per sample. The pair order carries the scale: A <= B means revised-linear
// (A, B) = (min, max); A > B means log-linear (A, B) = (max, min).
// Block record (one-endpoint): a single endpoint whose top bit is the scale
// flag (0 revised, 1 log); the remaining bits hold the max, which is
// non-negative by the mode's precondition, so its own top bit is spare.
//
// The mask's final-byte padding bits must be zero (they feed the population
// count); the bit padding after the last block record is ignored on read.

using AnyEncodedTensor =
    std::variant<EncodedTensor<int8_t>, EncodedTensor<int16_t>, EncodedTensor<half>>;

namespace detail {

inline constexpr char kAscMagic[4] = {'A', 'S', 'C', 'F'};
inline constexpr uint8_t kAscVersion = 1;
inline constexpr size_t kAscHeaderSize = 23;
inline constexpr uint8_t kFlagOneEndpoint = 0x01;
inline constexpr uint8_t kFlagSparse = 0x02;
inline constexpr uint8_t kFlagPermutation = 0x04;

}  // namespace detail

// LSB-first bit packer: the first bit written lands in bit 0 of byte 0.
class BitWriter {
 public:
  void write(uint64_t value, int bits) {
    while (bits > 32) {  // keep the accumulator (64 bits) from overflowing
      write(value & 0xFFFFFFFFull, 32);
      value >>= 32;
      bits -= 32;
    }
    acc_ |= (value & ((1ull << bits) - 1)) << filled_;
    filled_ += bits;
    while (filled_ >= 8) {
      out_.push_back(static_cast<uint8_t>(acc_));
      acc_ >>= 8;
      filled_ -= 8;
    }
  }

  // Pads the tail with zero bits to the next byte boundary.
  std::vector<uint8_t> finish() {
    if (filled_ > 0) {
      out_.push_back(static_cast<uint8_t>(acc_));
      acc_ = 0;
      filled_ = 0;
    }
    return std::move(out_);
  }

  size_t bit_count() const { return out_.size() * 8 + filled_; }

 private:
  std::vector<uint8_t> out_;
  uint64_t acc_ = 0;
  int filled_ = 0;
};

class BitReader {
 public:
  BitReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint64_t read(int bits) {
    uint64_t v = 0;
    for (int i = 0; i < bits; ++i) {
      const size_t byte = pos_ >> 3;
      if (byte >= size_)
        throw corrupt_stream_error(stream_fault::truncated, "bit stream ends mid-record");
      v |= static_cast<uint64_t>((data_[byte] >> (pos_ & 7)) & 1u) << i;
      ++pos_;
    }
    return v;
  }

  void align_to_byte() { pos_ = (pos_ + 7) & ~size_t{7}; }
  size_t byte_position() const { return (pos_ + 7) >> 3; }

 private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

namespace detail {

template <typename T>
void write_block(BitWriter& bw, const EncodedBlock<T>& blk, EndpointMode mode, size_t volume) {
  using traits = sample_traits<T>;
  constexpr int w = traits::bit_width;
  if (blk.indices.size() != volume)
    throw invalid_argument_error("index count does not match block shape");
  for (uint8_t idx : blk.indices) {
    if (idx > 7) throw invalid_argument_error("index out of range");
  }
  if (traits::widen(blk.endpoint_min) > traits::widen(blk.endpoint_max))
    throw invalid_argument_error("endpoints out of order (m > M)");

  if (mode == EndpointMode::one) {
    const uint16_t raw = traits::to_raw(blk.endpoint_max);
    constexpr uint16_t top = static_cast<uint16_t>(1u << (w - 1));
    if (!traits::is_zero(blk.endpoint_min) ||
        traits::to_raw(blk.endpoint_min) != traits::to_raw(T{}))
      throw invalid_argument_error("one-endpoint block must anchor at zero");
    if (raw & top) throw invalid_argument_error("one-endpoint max must be non-negative");
    const uint16_t flagged =
        blk.scale == ScaleKind::log_linear ? static_cast<uint16_t>(raw | top) : raw;
    bw.write(flagged, w);
  } else {
    // Scale rides on the pair order; a zero-range block is always emitted
    // as revised-linear (the orders coincide, decode reads it as revised).
    if (blk.scale == ScaleKind::log_linear &&
        traits::widen(blk.endpoint_min) == traits::widen(blk.endpoint_max))
      throw invalid_argument_error("zero-range block cannot signal log-linear");
    const T a = blk.scale == ScaleKind::revised_linear ? blk.endpoint_min : blk.endpoint_max;
    const T b = blk.scale == ScaleKind::revised_linear ? blk.endpoint_max : blk.endpoint_min;
    bw.write(traits::to_raw(a), w);
    bw.write(traits::to_raw(b), w);
  }
  for (uint8_t idx : blk.indices) bw.write(idx, 3);
}

template <typename T>
EncodedBlock<T> read_block(BitReader& br, EndpointMode mode, size_t volume) {
  using traits = sample_traits<T>;
  constexpr int w = traits::bit_width;
  EncodedBlock<T> blk;

  if (mode == EndpointMode::one) {
    const uint16_t raw = static_cast<uint16_t>(br.read(w));
    constexpr uint16_t top = static_cast<uint16_t>(1u << (w - 1));
    blk.scale = (raw & top) ? ScaleKind::log_linear : ScaleKind::revised_linear;
    blk.endpoint_min = T{};
    blk.endpoint_max = traits::from_raw(static_cast<uint16_t>(raw & ~top));
    if (!traits::finite(blk.endpoint_max))
      throw corrupt_stream_error(stream_fault::bad_value, "non-finite endpoint");
  } else {
    const T a = traits::from_raw(static_cast<uint16_t>(br.read(w)));
    const T b = traits::from_raw(static_cast<uint16_t>(br.read(w)));
    if (!traits::finite(a) || !traits::finite(b))
      throw corrupt_stream_error(stream_fault::bad_value, "non-finite endpoint");
    if (traits::widen(a) <= traits::widen(b)) {
      blk.scale = ScaleKind::revised_linear;
      blk.endpoint_min = a;
      blk.endpoint_max = b;
    } else {
      blk.scale = ScaleKind::log_linear;
      blk.endpoint_min = b;
      blk.endpoint_max = a;
    }
  }
  blk.indices.reserve(volume);
  for (size_t i = 0; i < volume; ++i)
    blk.indices.push_back(static_cast<uint8_t>(br.read(3)));
  return blk;
}

inline size_t grid_block_count(uint32_t width, uint32_t height, uint32_t channels,
                               BlockShape shape) {
  return static_cast<size_t>(ceil_div_u32(width, shape.w)) * ceil_div_u32(height, shape.h) *
         ceil_div_u32(channels, shape.c);
}

}  // namespace detail

template <typename T>
std::vector<uint8_t> serialize(const EncodedTensor<T>& enc) {
  using traits = sample_traits<T>;
  const BlockShape shape = enc.config.shape;
  if (shape.volume() == 0) throw invalid_argument_error("block shape must be non-empty");
  if (shape.w > 0xFF || shape.h > 0xFF || shape.c > 0xFFFF)
    throw invalid_argument_error("block shape exceeds header field widths");
  if (enc.width == 0 || enc.height == 0 || enc.channels == 0)
    throw invalid_argument_error("feature map dimensions must be non-zero");

  const size_t n = static_cast<size_t>(enc.width) * enc.height * enc.channels;

  std::vector<uint8_t> out;
  out.insert(out.end(), detail::kAscMagic, detail::kAscMagic + 4);
  out.push_back(detail::kAscVersion);
  uint8_t flags = 0;
  if (enc.config.endpoints == EndpointMode::one) flags |= detail::kFlagOneEndpoint;
  if (enc.config.vbr) flags |= detail::kFlagSparse;
  if (enc.permutation) flags |= detail::kFlagPermutation;
  out.push_back(flags);
  out.push_back(static_cast<uint8_t>(traits::format));
  out.push_back(static_cast<uint8_t>(shape.w));
  out.push_back(static_cast<uint8_t>(shape.h));
  out.push_back(static_cast<uint8_t>(shape.c));
  out.push_back(static_cast<uint8_t>(shape.c >> 8));
  detail::write_u32le(out, enc.width);
  detail::write_u32le(out, enc.height);
  detail::write_u32le(out, enc.channels);

  if (enc.permutation) {
    if (enc.channels > 0xFFFF)
      throw invalid_argument_error("permutation exceeds header field widths");
    if (enc.permutation->size() != enc.channels || !enc.permutation->valid())
      throw invalid_argument_error("not a permutation of the channel set");
    for (uint32_t ch : enc.permutation->order) {
      out.push_back(static_cast<uint8_t>(ch));
      out.push_back(static_cast<uint8_t>(ch >> 8));
    }
  }

  size_t expected_blocks;
  if (enc.config.vbr) {
    if (enc.mask.size() != (n + 7) / 8)
      throw invalid_argument_error("mask size does not match dimensions");
    if (n % 8 != 0 && (enc.mask.back() >> (n % 8)) != 0)
      throw invalid_argument_error("mask padding bits must be zero");
    out.insert(out.end(), enc.mask.begin(), enc.mask.end());
    const size_t bs = shape.volume();
    expected_blocks = (detail::mask_popcount(enc.mask) + bs - 1) / bs;
  } else {
    if (!enc.mask.empty()) throw invalid_argument_error("dense stream cannot carry a mask");
    expected_blocks = detail::grid_block_count(enc.width, enc.height, enc.channels, shape);
  }
  if (enc.blocks.size() != expected_blocks)
    throw invalid_argument_error("block count does not match header");

  BitWriter bw;
  for (const auto& blk : enc.blocks)
    detail::write_block(bw, blk, enc.config.endpoints, shape.volume());
  const std::vector<uint8_t> bits = bw.finish();
  out.insert(out.end(), bits.begin(), bits.end());
  return out;
}

inline std::vector<uint8_t> serialize(const AnyEncodedTensor& enc) {
  return std::visit([](const auto& e) { return serialize(e); }, enc);
}

namespace detail {

template <typename T>
EncodedTensor<T> deserialize_body(const std::vector<uint8_t>& bytes, uint8_t flags,
                                  BlockShape shape, uint32_t w, uint32_t h, uint32_t c) {
  EncodedTensor<T> enc;
  enc.config.shape = shape;
  enc.config.endpoints = (flags & kFlagOneEndpoint) ? EndpointMode::one : EndpointMode::two;
  enc.config.vbr = (flags & kFlagSparse) != 0;
  enc.width = w;
  enc.height = h;
  enc.channels = c;

  size_t pos = kAscHeaderSize;
  const size_t n = static_cast<size_t>(w) * h * c;

  if (flags & kFlagPermutation) {
    if (bytes.size() < pos + static_cast<size_t>(c) * 2)
      throw corrupt_stream_error(stream_fault::truncated, "permutation cut short");
    ChannelPermutation p;
    p.order.reserve(c);
    for (uint32_t i = 0; i < c; ++i, pos += 2) {
      p.order.push_back(static_cast<uint32_t>(bytes[pos]) |
                        (static_cast<uint32_t>(bytes[pos + 1]) << 8));
    }
    if (!p.valid())
      throw corrupt_stream_error(stream_fault::bad_permutation,
                                 "not a permutation of the channel set");
    enc.permutation = std::move(p);
  }

  size_t block_count;
  if (enc.config.vbr) {
    const size_t mask_bytes = (n + 7) / 8;
    if (bytes.size() < pos + mask_bytes)
      throw corrupt_stream_error(stream_fault::truncated, "mask cut short");
    enc.mask.assign(bytes.begin() + pos, bytes.begin() + pos + mask_bytes);
    pos += mask_bytes;
    if (n % 8 != 0 && (enc.mask.back() >> (n % 8)) != 0)
      throw corrupt_stream_error(stream_fault::bad_mask, "mask padding bits must be zero");
    const size_t bs = shape.volume();
    block_count = (mask_popcount(enc.mask) + bs - 1) / bs;
  } else {
    block_count = grid_block_count(w, h, c, shape);
  }

  BitReader br(bytes.data() + pos, bytes.size() - pos);
  enc.blocks.reserve(block_count);
  for (size_t i = 0; i < block_count; ++i)
    enc.blocks.push_back(read_block<T>(br, enc.config.endpoints, shape.volume()));
  br.align_to_byte();
  if (pos + br.byte_position() != bytes.size())
    throw corrupt_stream_error(stream_fault::trailing_garbage, "bytes past end of stream");
  return enc;
}

}  // namespace detail

inline AnyEncodedTensor deserialize(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < detail::kAscHeaderSize)
    throw corrupt_stream_error(stream_fault::truncated, "shorter than header");
  if (!std::equal(detail::kAscMagic, detail::kAscMagic + 4,
                  reinterpret_cast<const char*>(bytes.data())))
    throw corrupt_stream_error(stream_fault::bad_magic, "not a compressed container");
  if (bytes[4] != detail::kAscVersion)
    throw corrupt_stream_error(stream_fault::bad_version, "unsupported version");
  const uint8_t flags = bytes[5];
  if (flags & ~(detail::kFlagOneEndpoint | detail::kFlagSparse | detail::kFlagPermutation))
    throw corrupt_stream_error(stream_fault::bad_header, "unknown flag bits");
  const uint8_t fmt = bytes[6];
  if (fmt > 2) throw corrupt_stream_error(stream_fault::bad_header, "unknown sample format");
  BlockShape shape;
  shape.w = bytes[7];
  shape.h = bytes[8];
  shape.c = static_cast<uint32_t>(bytes[9]) | (static_cast<uint32_t>(bytes[10]) << 8);
  if (shape.volume() == 0)
    throw corrupt_stream_error(stream_fault::bad_header, "empty block shape");
  const uint32_t w = detail::read_u32le(bytes.data() + 11);
  const uint32_t h = detail::read_u32le(bytes.data() + 15);
  const uint32_t c = detail::read_u32le(bytes.data() + 19);
  if (w == 0 || h == 0 || c == 0)
    throw corrupt_stream_error(stream_fault::bad_header, "zero dimension");

  switch (static_cast<SampleFormat>(fmt)) {
    case SampleFormat::int8:
      return detail::deserialize_body<int8_t>(bytes, flags, shape, w, h, c);
    case SampleFormat::int16:
      return detail::deserialize_body<int16_t>(bytes, flags, shape, w, h, c);
    case SampleFormat::fp16:
    default:
      return detail::deserialize_body<half>(bytes, flags, shape, w, h, c);
  }
}

// Exact rational, reduced with a positive denominator. Rate identities are
// checked in integers, never floating point.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational make(int64_t n, int64_t d) {
    if (d == 0) throw invalid_argument_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const int64_t g = std::gcd(n < 0 ? -n : n, d);
    return g ? Rational{n / g, d / g} : Rational{0, 1};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
};

// Dense-path nominal compression rate:
//   rate = bs * bits_per_sample / (endpoint_count * endpoint_bits + bs * 3)
// Every dense block costs the same, so this is exact whenever no block is
// padding (map dimensions divisible by the block extent). The sparse path
// has no nominal rate: its cost depends on the data.
inline std::optional<Rational> nominal_rate(const CodecConfig& config, SampleFormat format) {
  if (config.vbr) return std::nullopt;
  const int64_t bs = static_cast<int64_t>(config.shape.volume());
  if (bs == 0) throw invalid_argument_error("block shape must be non-empty");
  const int64_t bits =
      format == SampleFormat::int8 ? 8 : 16;  // int16 and fp16 are both 16-wide
  const int64_t ne = config.endpoints == EndpointMode::one ? 1 : 2;
  return Rational::make(bs * bits, ne * bits + bs * 3);
}

// Measured rate accounting. Logical payload bits only: block records (and
// the mask, for sparse streams); container header and permutation bytes are
// metadata and excluded. uncompressed = sample count * sample width.
struct RateReport {
  uint64_t uncompressed_bits = 0;
  uint64_t payload_bits = 0;
  uint64_t block_count = 0;

  double measured() const {
    return static_cast<double>(uncompressed_bits) / static_cast<double>(payload_bits);
  }
};

template <typename T>
RateReport rate_report(const EncodedTensor<T>& enc) {
  using traits = sample_traits<T>;
  RateReport r;
  const uint64_t n = static_cast<uint64_t>(enc.width) * enc.height * enc.channels;
  const uint64_t bs = enc.config.shape.volume();
  const uint64_t ne = enc.config.endpoints == EndpointMode::one ? 1 : 2;
  const uint64_t block_bits = ne * traits::bit_width + bs * 3;
  r.uncompressed_bits = n * traits::bit_width;
  r.block_count = enc.blocks.size();
  r.payload_bits = enc.blocks.size() * block_bits + (enc.config.vbr ? n : 0);
  return r;
}

inline RateReport rate_report(const AnyEncodedTensor& enc) {
  return std::visit([](const auto& e) { return rate_report(e); }, enc);
}

inline SampleFormat format_of(const AnyEncodedTensor& enc) {
  return std::visit(
      [](const auto& e) {
        return sample_traits<typename std::decay_t<decltype(e)>::sample_type>::format;
      },
      enc);
}

// Decodes whichever sample type the container holds.
inline AnyFeatureMap decode(const AnyEncodedTensor& enc) {
  return std::visit([](const auto& e) { return AnyFeatureMap(decode(e)); }, enc);
}

}  // namespace asc
