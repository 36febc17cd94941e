// Copyright 2026 The ASC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: one self-contained check per release guarantee, each
// printed as a single [PASS]/[FAIL] line. The binary exits with the number
// of failed criteria so CI can gate on it directly.
//
// Every expected number here was produced by an independent derivation
// (rational arithmetic oracles, hand-computed fixtures), never by running
// the codec and pasting its output back in.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <asc/asc.hpp>

#include "oracles.hpp"

namespace {

using asc::BlockShape;
using asc::CodecConfig;
using asc::EndpointMode;
using asc::FeatureMap;
using asc::Rational;
using asc::SampleFormat;
using asc::ScaleKind;
using asc::ScaleMode;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---- criterion 1: nominal dense rates --------------------------------------

Rational fixture_rate(int endpoint_count, uint32_t block_size, SampleFormat format) {
  CodecConfig cfg;
  cfg.shape = asc::derive_cubical_shape(block_size);
  cfg.endpoints = endpoint_count == 1 ? EndpointMode::one : EndpointMode::two;
  const auto r = asc::nominal_rate(cfg, format);
  require(r.has_value(), "dense config must have a nominal rate");
  return *r;
}

void nominal_rate_fixtures() {
  struct Fixture {
    int endpoints;
    uint32_t block_size;
    SampleFormat format;
    Rational want;
  };
  const Fixture fixtures[] = {
      {2, 16, SampleFormat::int8, {2, 1}},  {1, 8, SampleFormat::int8, {2, 1}},
      {1, 8, SampleFormat::int16, {16, 5}}, {1, 16, SampleFormat::int16, {4, 1}},
      {2, 16, SampleFormat::int16, {16, 5}}, {2, 32, SampleFormat::int16, {4, 1}},
      {2, 16, SampleFormat::fp16, {16, 5}}, {2, 32, SampleFormat::fp16, {4, 1}},
  };
  for (const Fixture& f : fixtures) {
    const Rational got = fixture_rate(f.endpoints, f.block_size, f.format);
    require(got == f.want, "rate mismatch for endpoints=" + str(f.endpoints) +
                               " block_size=" + str(f.block_size) + ": got " + str(got.num) +
                               "/" + str(got.den));
  }

  CodecConfig sparse;
  sparse.shape = BlockShape{1, 8, 1};
  sparse.vbr = true;
  require(!asc::nominal_rate(sparse, SampleFormat::int8).has_value(),
          "sparse mode has no fixed nominal rate");
}

// ---- criterion 2: cubical block shapes -------------------------------------

bool power_of_two(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_u32(uint32_t v) {
  int e = 0;
  while (v > 1) {
    v >>= 1;
    ++e;
  }
  return e;
}

void cubical_block_shapes() {
  struct Fixture {
    uint32_t block_size;
    BlockShape want;
  };
  const Fixture fixtures[] = {
      {1, {1, 1, 1}},  {2, {1, 1, 2}},  {4, {2, 2, 1}},
      {8, {2, 2, 2}},  {16, {2, 2, 4}}, {32, {4, 4, 2}},
      {64, {4, 4, 4}}, {1024, {8, 8, 16}},
  };
  for (const Fixture& f : fixtures) {
    const BlockShape got = asc::derive_cubical_shape(f.block_size);
    require(got == f.want, "shape mismatch for block size " + str(f.block_size) + ": got " +
                               str(got.w) + "x" + str(got.h) + "x" + str(got.c));
  }

  for (uint32_t bs = 1; bs <= (1u << 16); bs <<= 1) {
    const BlockShape s = asc::derive_cubical_shape(bs);
    require(s.w == s.h, "spatial extents must match at block size " + str(bs));
    require(power_of_two(s.w) && power_of_two(s.c),
            "extents must be powers of two at block size " + str(bs));
    require(s.volume() == bs, "volume must equal the block size at " + str(bs));
    const int balance = log2_u32(s.c) - log2_u32(s.w);
    require(balance >= -1 && balance <= 1,
            "channel extent must stay within one octave of the spatial extent at " + str(bs));
  }

  for (uint32_t bad : {0u, 3u, 24u, 100u}) {
    bool threw = false;
    try {
      asc::derive_cubical_shape(bad);
    } catch (const asc::invalid_argument_error&) {
      threw = true;
    }
    require(threw, "non-power-of-two block size " + str(bad) + " must be rejected");
  }
}

// ---- criterion 3: exhaustive int8 index equivalence ------------------------

void exhaustive_int8_index_equivalence() {
  uint64_t triples = 0;
  for (ScaleKind kind : {ScaleKind::revised_linear, ScaleKind::log_linear}) {
    for (int m = -128; m <= 127; ++m) {
      for (int M = m; M <= 127; ++M) {
        const auto tbl = asc::build_table<int8_t>(kind, static_cast<int8_t>(m),
                                                  static_cast<int8_t>(M));
        for (int x = m; x <= M; ++x) {
          const int got = asc::assign_index(static_cast<int8_t>(x), tbl);
          if (got != oracle::assign_exceed(x, m, M, kind) ||
              got != oracle::assign_nearest(x, m, M, kind)) {
            throw std::runtime_error("index divergence at m=" + str(m) + " M=" + str(M) +
                                     " x=" + str(x) + " scale=" +
                                     (kind == ScaleKind::revised_linear ? "revised" : "log"));
          }
          ++triples;
        }
      }
    }
  }
  require(triples == 2 * 2829056ull,
          "triple count off: covered " + str(triples) + " of " + str(2 * 2829056ull));
}

// ---- criterion 4: shifted datapath operator census -------------------------

void shifted_datapath_operator_census() {
  const auto dp = asc::build_datapath(asc::DatapathVariant::revised_log_shifted);
  const auto c = dp.census();
  require(c == asc::OpCensus{0, 5, 2}, "shifted census must be 0 dividers, 5 multipliers, 2 "
                                       "adders; got " +
                                           str(c.dividers) + "/" + str(c.multipliers) + "/" +
                                           str(c.adders));
  const auto factors = dp.multiplier_factors();
  require(factors == std::vector<int64_t>({3, 5, 7, 9, 11}),
          "shifted multiplier factors must be exactly {3,5,7,9,11}");

  int muls = 0;
  for (const asc::DagNode& n : dp.dag.nodes()) {
    if (n.op != asc::DagOp::mul_const) continue;
    ++muls;
    require(n.args[0] == dp.range_node,
            "every shifted multiplier must read the shared range term");
  }
  require(muls == 5, "expected five multiplier nodes, found " + str(muls));
}

// ---- criterion 5: container round trips ------------------------------------

template <typename T>
T sample_from_int(int v) {
  if constexpr (std::is_same_v<T, asc::half>) {
    return asc::half::from_double(v);
  } else {
    return static_cast<T>(v);
  }
}

template <typename T>
size_t serialize_round_trip_cases(uint64_t seed, size_t trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> dim(1, 9);
  size_t cases = 0;
  const BlockShape shapes[] = {{1, 8, 1}, {2, 2, 2}, {4, 4, 1}, {2, 2, 4}};
  for (size_t trial = 0; trial < trials; ++trial) {
    CodecConfig cfg;
    cfg.shape = shapes[trial % 4];
    cfg.endpoints = (trial / 4) % 2 ? EndpointMode::one : EndpointMode::two;
    cfg.vbr = (trial / 2) % 2 != 0;

    FeatureMap<T> map;
    map.width = dim(rng);
    map.height = dim(rng);
    map.channels = dim(rng);
    const int lo = cfg.endpoints == EndpointMode::one ? 0 : -100;
    std::uniform_int_distribution<int> val(lo, 100);
    std::bernoulli_distribution zero(0.5);
    for (size_t i = 0; i < static_cast<size_t>(map.width) * map.height * map.channels; ++i) {
      const int v = cfg.vbr && zero(rng) ? 0 : val(rng);
      map.data.push_back(sample_from_int<T>(v));
    }

    std::optional<asc::ChannelPermutation> perm;
    if (trial % 3 == 0) {
      asc::ChannelPermutation p;
      for (uint32_t ch = 0; ch < map.channels; ++ch) p.order.push_back(ch);
      std::shuffle(p.order.begin(), p.order.end(), rng);
      perm = p;
    }

    const auto enc = asc::encode(map, cfg, perm);
    const auto bytes = asc::serialize(enc);
    const auto any = asc::deserialize(bytes);
    require(std::holds_alternative<asc::EncodedTensor<T>>(any),
            "deserialized container came back in the wrong format");
    require(std::get<asc::EncodedTensor<T>>(any) == enc,
            "container round trip changed the encoded tensor");
    ++cases;
  }
  return cases;
}

template <typename T>
size_t fmap_round_trip_cases(uint64_t seed, size_t trials) {
  size_t cases = 0;
  for (size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + trial);
    std::uniform_int_distribution<uint32_t> dim(1, 12);
    const auto map = oracle::random_map<T>(dim(rng), dim(rng), dim(rng), seed ^ trial,
                                           -500, 500);
    const auto bytes = asc::store_fmap(map);
    const auto loaded = asc::load_fmap(bytes);
    require(std::holds_alternative<FeatureMap<T>>(loaded),
            "tensor file round trip changed the sample format");
    require(std::get<FeatureMap<T>>(loaded) == map, "tensor file round trip changed the data");
    ++cases;
  }
  return cases;
}

template <typename T>
size_t partition_round_trip_cases(uint64_t seed, size_t trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> dim(1, 12);
  std::uniform_int_distribution<uint32_t> ext(1, 5);
  size_t cases = 0;
  for (size_t trial = 0; trial < trials; ++trial) {
    const auto map =
        oracle::random_map<T>(dim(rng), dim(rng), dim(rng), seed + trial, -500, 500);
    const BlockShape shape{ext(rng), ext(rng), ext(rng)};
    const auto blocks = asc::partition(map, shape);
    const auto back = asc::reassemble(blocks, map.width, map.height, map.channels, shape);
    require(back == map, "partition/reassemble changed the tensor");
    ++cases;
  }
  return cases;
}

void container_round_trips() {
  size_t a = 0, b = 0, c = 0;
  a += serialize_round_trip_cases<int8_t>(501, 340);
  a += serialize_round_trip_cases<int16_t>(502, 340);
  a += serialize_round_trip_cases<asc::half>(503, 340);
  require(a >= 1000, "need at least 1000 serialize round trips, ran " + str(a));

  b += fmap_round_trip_cases<int8_t>(601, 340);
  b += fmap_round_trip_cases<int16_t>(602, 340);
  b += fmap_round_trip_cases<asc::half>(603, 340);
  require(b >= 1000, "need at least 1000 tensor file round trips, ran " + str(b));

  c += partition_round_trip_cases<int8_t>(701, 340);
  c += partition_round_trip_cases<int16_t>(702, 340);
  c += partition_round_trip_cases<asc::half>(703, 340);
  require(c >= 1000, "need at least 1000 partition round trips, ran " + str(c));
}

// ---- criterion 6: lossless special cases -----------------------------------

template <typename T>
void lossless_cases_for_format(T lo, T hi) {
  // Constant tensor: every block has zero range, index 0 reconstructs the
  // endpoint bit-exactly.
  FeatureMap<T> constant;
  constant.width = 4;
  constant.height = 4;
  constant.channels = 4;
  constant.data.assign(64, hi);
  CodecConfig cfg;
  cfg.shape = BlockShape{2, 2, 2};
  require(asc::decode(asc::encode(constant, cfg)) == constant,
          "constant tensor must reconstruct exactly");

  // Two-valued tensor: every sample sits on an endpoint of its block, and
  // both endpoints are exact interpolation points.
  FeatureMap<T> bimodal;
  bimodal.width = 8;
  bimodal.height = 4;
  bimodal.channels = 2;
  for (int i = 0; i < 64; ++i) bimodal.data.push_back(i % 2 ? hi : lo);
  require(asc::decode(asc::encode(bimodal, cfg)) == bimodal,
          "endpoint-valued tensor must reconstruct exactly");

  // All-zero tensor through the sparse path: the mask alone carries it.
  FeatureMap<T> zeros;
  zeros.width = 8;
  zeros.height = 4;
  zeros.channels = 2;
  zeros.data.assign(64, T{});
  CodecConfig sparse;
  sparse.shape = BlockShape{1, 8, 1};
  sparse.vbr = true;
  const auto enc = asc::encode(zeros, sparse);
  require(enc.blocks.empty(), "all-zero sparse stream must carry no blocks");
  require(asc::decode(enc) == zeros, "all-zero tensor must reconstruct exactly");
}

void lossless_special_cases() {
  lossless_cases_for_format<int8_t>(-100, 100);
  lossless_cases_for_format<int16_t>(-12345, 23456);
  lossless_cases_for_format<asc::half>(asc::half::from_double(-2.5),
                                       asc::half::from_double(7.75));
}

// ---- criterion 7: adaptive scale optimality --------------------------------

std::vector<int16_t> random_block_mixed(std::mt19937_64& rng, int family) {
  std::vector<int16_t> block(8);
  std::uniform_int_distribution<int> wide(-32768, 32767);
  std::uniform_int_distribution<int> small(-50, 50);
  std::bernoulli_distribution tail(0.15);
  for (auto& x : block) {
    switch (family) {
      case 0: x = static_cast<int16_t>(wide(rng)); break;
      case 1: x = static_cast<int16_t>(tail(rng) ? wide(rng) : small(rng)); break;
      default: x = static_cast<int16_t>(small(rng)); break;
    }
  }
  if (family == 2) std::sort(block.begin(), block.end());
  return block;
}

void adaptive_scale_optimality() {
  std::mt19937_64 rng(7001);
  size_t blocks = 0;
  size_t picked_revised = 0;
  size_t picked_log = 0;
  for (size_t trial = 0; trial < 10000; ++trial) {
    const auto block = random_block_mixed(rng, static_cast<int>(trial % 3));
    const auto enc = asc::encode_block(block, EndpointMode::two);
    const auto tbl = asc::build_table(enc.scale, enc.endpoint_min, enc.endpoint_max);
    const int64_t chosen = asc::block_l1(block, tbl);

    const std::vector<int64_t> wide(block.begin(), block.end());
    const int64_t l1_revised = oracle::block_l1(wide, enc.endpoint_min, enc.endpoint_max,
                                                ScaleKind::revised_linear);
    const int64_t l1_log =
        oracle::block_l1(wide, enc.endpoint_min, enc.endpoint_max, ScaleKind::log_linear);
    require(chosen == std::min(l1_revised, l1_log),
            "adaptive block error must equal the better scale's error");
    const ScaleKind best =
        l1_revised <= l1_log ? ScaleKind::revised_linear : ScaleKind::log_linear;
    require(enc.scale == best, "adaptive choice must pick the lower-error scale (ties to "
                               "revised-linear)");
    (enc.scale == ScaleKind::revised_linear ? picked_revised : picked_log) += 1;
    ++blocks;
  }
  require(blocks >= 10000, "need at least 10000 adaptive blocks");
  require(picked_revised > 100 && picked_log > 100,
          "test data must exercise both scales; got revised=" + str(picked_revised) +
              " log=" + str(picked_log));

  // Whole-tensor totals: adaptive never loses to either forced setting.
  const auto map = oracle::random_map<int16_t>(32, 25, 7, 777, -2000, 2000);
  int64_t totals[3] = {0, 0, 0};
  const ScaleMode modes[3] = {ScaleMode::adaptive, ScaleMode::revised_only,
                              ScaleMode::log_only};
  for (int i = 0; i < 3; ++i) {
    CodecConfig cfg;
    cfg.shape = BlockShape{2, 2, 2};
    cfg.scale_mode = modes[i];
    const auto dec = asc::decode(asc::encode(map, cfg));
    for (size_t j = 0; j < map.data.size(); ++j)
      totals[i] += std::llabs(int64_t{map.data[j]} - int64_t{dec.data[j]});
  }
  require(totals[0] <= totals[1] && totals[0] <= totals[2],
          "adaptive total error must not exceed either forced mode");
}

// ---- criterion 8: reconstruction error bound -------------------------------

template <typename T>
void bound_check_for_format(uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint32_t> dim(2, 14);
  for (int round = 0; round < 10; ++round) {
    const auto map =
        oracle::random_map<T>(dim(rng), dim(rng), dim(rng), seed + round, lo, hi);
    CodecConfig cfg;
    cfg.shape = BlockShape{2, 2, 2};
    const auto enc = asc::encode(map, cfg);
    const auto blocks = asc::partition(map, cfg.shape);
    require(blocks.size() == enc.blocks.size(), "grid walk out of step");
    for (size_t i = 0; i < blocks.size(); ++i) {
      const auto& eb = enc.blocks[i];
      const auto dec = asc::decode_block(eb, cfg.shape);
      const int64_t m = eb.endpoint_min;
      const int64_t M = eb.endpoint_max;
      const int64_t D = oracle::layout(eb.scale).point_den;
      for (size_t j = 0; j < blocks[i].values.size(); ++j) {
        const int64_t x = blocks[i].values[j];
        const int64_t err = std::llabs(x - int64_t{dec.values[j]});
        const int64_t nearest = oracle::scaled_nearest_distance(x, m, M, eb.scale);
        require(D * err <= nearest + D,
                "reconstruction error exceeded the nearest-point bound at block " + str(i) +
                    " sample " + str(j) + ": " + str(D) + "*" + str(err) + " > " +
                    str(nearest) + "+" + str(D));
      }
    }
  }
}

void reconstruction_error_bound() {
  bound_check_for_format<int8_t>(801, -128, 127);
  bound_check_for_format<int16_t>(802, -32768, 32767);
}

// ---- criterion 9: sparse mode rates ----------------------------------------

void sparse_mode_rates() {
  // Half-sparse fixture: 64 samples, alternating zero/nonzero, 8-sample
  // blocks, two endpoints. 32 nonzeros pack into 4 blocks of 40 bits each;
  // the mask adds one bit per sample.
  FeatureMap<int8_t> half_sparse;
  half_sparse.width = 8;
  half_sparse.height = 8;
  half_sparse.channels = 1;
  for (int i = 0; i < 64; ++i)
    half_sparse.data.push_back(i % 2 == 0 ? static_cast<int8_t>(1 + (i * 7) % 100) : 0);
  CodecConfig cfg;
  cfg.shape = BlockShape{2, 2, 2};
  cfg.vbr = true;
  const auto report = asc::rate_report(asc::encode(half_sparse, cfg));
  require(report.uncompressed_bits == 512, "expected 512 source bits, got " +
                                               str(report.uncompressed_bits));
  require(report.payload_bits == 224,
          "expected 224 payload bits, got " + str(report.payload_bits));
  require(Rational::make(512, 224) == Rational{16, 7}, "rate must reduce to 16/7");

  // Sweeping sparsity upward must strictly raise the measured rate. The
  // payloads are exact: ceil(nonzeros/8) blocks of 32 bits plus 1024 mask
  // bits, one endpoint per block.
  const uint64_t want_payload[5] = {5120, 4096, 3072, 2048, 1024};
  double prev = 0.0;
  for (int step = 0; step < 5; ++step) {
    FeatureMap<int8_t> map;
    map.width = 64;
    map.height = 16;
    map.channels = 1;
    const size_t nonzeros = 1024 - 256 * static_cast<size_t>(step);
    for (size_t i = 0; i < 1024; ++i)
      map.data.push_back(i < nonzeros ? static_cast<int8_t>(1 + i % 100) : 0);
    CodecConfig sweep;
    sweep.shape = BlockShape{1, 8, 1};
    sweep.endpoints = EndpointMode::one;
    sweep.vbr = true;
    const auto r = asc::rate_report(asc::encode(map, sweep));
    require(r.uncompressed_bits == 8192, "sweep fixture must hold 8192 source bits");
    require(r.payload_bits == want_payload[step],
            "payload at sparsity step " + str(step) + " must be " + str(want_payload[step]) +
                ", got " + str(r.payload_bits));
    require(r.measured() > prev, "measured rate must rise strictly with sparsity");
    prev = r.measured();
  }
}

// ---- criterion 10: scale signaling round trip -------------------------------

FeatureMap<int8_t> scale_mix_map() {
  // 40x50x5 grid of 2x2x2 blocks (10000 blocks). Alternating blocks carry a
  // heavy-tail pattern (log-linear wins) and an even ramp (revised-linear
  // wins); both use endpoints (0, 96) so either endpoint mode sees the same
  // tables.
  const int8_t heavy[8] = {0, 1, 2, 3, 0, 1, 2, 96};
  const int8_t ramp[8] = {0, 14, 27, 41, 55, 69, 82, 96};
  FeatureMap<int8_t> map;
  map.width = 80;
  map.height = 100;
  map.channels = 10;
  map.data.resize(static_cast<size_t>(80) * 100 * 10);
  size_t i = 0;
  for (uint32_t c = 0; c < map.channels; ++c) {
    for (uint32_t y = 0; y < map.height; ++y) {
      for (uint32_t x = 0; x < map.width; ++x, ++i) {
        const bool log_block = ((x / 2) + (y / 2) + (c / 2)) % 2 == 0;
        const int slot = static_cast<int>((x % 2) + 2 * (y % 2) + 4 * (c % 2));
        map.data[i] = log_block ? heavy[slot] : ramp[slot];
      }
    }
  }
  return map;
}

void scale_signaling_round_trip() {
  const auto map = scale_mix_map();
  for (EndpointMode mode : {EndpointMode::one, EndpointMode::two}) {
    CodecConfig cfg;
    cfg.shape = BlockShape{2, 2, 2};
    cfg.endpoints = mode;
    const auto enc = asc::encode(map, cfg);
    require(enc.blocks.size() == 10000, "fixture must produce 10000 blocks");

    size_t revised = 0, log = 0;
    for (const auto& b : enc.blocks)
      (b.scale == ScaleKind::revised_linear ? revised : log) += 1;
    require(revised == 5000 && log == 5000,
            "fixture must split scales evenly; got revised=" + str(revised) +
                " log=" + str(log));

    const auto any = asc::deserialize(asc::serialize(enc));
    require(std::holds_alternative<asc::EncodedTensor<int8_t>>(any),
            "signaling round trip changed the sample format");
    const auto& back = std::get<asc::EncodedTensor<int8_t>>(any);
    require(back.blocks.size() == enc.blocks.size(), "block count changed on the wire");
    for (size_t i = 0; i < enc.blocks.size(); ++i) {
      require(back.blocks[i].scale == enc.blocks[i].scale,
              "scale flag flipped on the wire at block " + str(i));
    }
    require(back == enc, "signaling round trip changed the stream");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*fn)();
  };
  const Criterion criteria[] = {
      {"nominal dense rates (exact rationals)", nominal_rate_fixtures},
      {"cubical block shapes", cubical_block_shapes},
      {"exhaustive int8 index equivalence", exhaustive_int8_index_equivalence},
      {"shifted datapath operator census", shifted_datapath_operator_census},
      {"container round trips (1000+ cases each)", container_round_trips},
      {"lossless special cases (all formats)", lossless_special_cases},
      {"adaptive scale optimality (10000 blocks)", adaptive_scale_optimality},
      {"reconstruction error bound", reconstruction_error_bound},
      {"sparse mode rates", sparse_mode_rates},
      {"scale signaling round trip (10000 blocks)", scale_signaling_round_trip},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.fn();
    } catch (const std::exception& e) {
      error = e.what();
    } catch (...) {
      error = "unknown exception";
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (error.empty()) {
      std::printf("[PASS] criterion %d: %s (%lld ms)\n", index, c.name,
                  static_cast<long long>(ms));
    } else {
      std::printf("[FAIL] criterion %d: %s (%lld ms): %s\n", index, c.name,
                  static_cast<long long>(ms), error.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures;
}
