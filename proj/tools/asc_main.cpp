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

// Batch compression driver. Machine-readable JSON goes to stdout, human
// summaries to stderr, so pipelines can parse results without scraping.

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asc/asc.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

asc::BlockShape parse_block_shape(const std::string& s) {
  unsigned w = 0, h = 0, c = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%ux%ux%u%c", &w, &h, &c, &tail) != 3 || w == 0 || h == 0 || c == 0)
    throw asc::invalid_argument_error("block shape must look like WxHxC, e.g. 2x2x4");
  return asc::BlockShape{w, h, c};
}

asc::ChannelPermutation load_permutation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  if (!j.is_array()) throw asc::invalid_argument_error("permutation file must be a JSON array");
  asc::ChannelPermutation p;
  for (const auto& e : j) p.order.push_back(e.get<uint32_t>());
  if (!p.valid()) throw asc::invalid_argument_error("not a permutation of the channel set");
  return p;
}

template <typename T>
double zero_fraction(const asc::FeatureMap<T>& map) {
  size_t zeros = 0;
  for (const T& v : map.data) {
    if (asc::sample_traits<T>::is_zero(v)) ++zeros;
  }
  return static_cast<double>(zeros) / static_cast<double>(map.data.size());
}

json quality_json(const asc::QualityReport& q) {
  json j{{"samples", q.samples},       {"l1_total", q.l1_total},
         {"l1_mean", q.l1_mean},       {"mse", q.mse},
         {"max_abs_error", q.max_abs_error}};
  // JSON has no infinity; a null PSNR marks the lossless case.
  j["psnr_db"] = q.mse == 0.0 ? json() : json(q.psnr_db);
  j["lossless"] = q.mse == 0.0;
  if (q.has_scale_usage) {
    j["scale_usage"] = {{"revised", q.revised_blocks}, {"log", q.log_blocks}};
  }
  return j;
}

int cmd_encode(const std::string& in_path, const std::string& out_path,
               std::optional<unsigned> block_size, std::optional<std::string> block_shape,
               unsigned endpoints, bool vbr, const std::string& scale,
               const std::string& reorder, std::optional<std::string> permutation_file) {
  asc::CodecConfig config;
  if (block_shape) {
    config.shape = parse_block_shape(*block_shape);
  } else {
    config.shape = asc::derive_cubical_shape(block_size.value_or(16));
  }
  if (vbr) {
    // The sparse path compacts nonzeros into 1-D runs of the block volume.
    config.shape = asc::BlockShape{static_cast<uint32_t>(config.shape.volume()), 1, 1};
    config.vbr = true;
  }
  config.endpoints = endpoints == 1 ? asc::EndpointMode::one : asc::EndpointMode::two;
  if (scale == "revised") {
    config.scale_mode = asc::ScaleMode::revised_only;
  } else if (scale == "log") {
    config.scale_mode = asc::ScaleMode::log_only;
  }

  const asc::AnyFeatureMap any_map = asc::load_fmap(read_file(in_path));
  json out = std::visit(
      [&](const auto& map) -> json {
        using T = typename std::decay_t<decltype(map)>::sample_type;

        std::optional<asc::ChannelPermutation> perm;
        if (permutation_file) {
          perm = load_permutation(*permutation_file);
        } else if (reorder != "none") {
          const auto method = reorder == "greedy" ? asc::ReorderMethod::greedy
                                                  : asc::ReorderMethod::heuristic;
          const auto sim = asc::similarity_matrix<T>({map});
          const uint32_t group = std::bit_floor(std::max(2u, config.shape.c));
          perm = asc::hierarchical_order(sim, method, group);
        }

        const asc::EncodedTensor<T> enc = asc::encode(map, config, perm);
        const std::vector<uint8_t> bytes = asc::serialize(enc);
        write_file(out_path, bytes);

        const asc::RateReport rate = asc::rate_report(enc);
        const auto nominal = asc::nominal_rate(enc.config, asc::sample_traits<T>::format);
        uint64_t revised = 0, log_count = 0;
        for (const auto& b : enc.blocks) {
          (b.scale == asc::ScaleKind::revised_linear ? revised : log_count) += 1;
        }

        json j{{"input", in_path},
               {"output", out_path},
               {"format", asc::to_string(asc::sample_traits<T>::format)},
               {"width", map.width},
               {"height", map.height},
               {"channels", map.channels},
               {"block_shape", {enc.config.shape.w, enc.config.shape.h, enc.config.shape.c}},
               {"endpoints", endpoints},
               {"vbr", config.vbr},
               {"scale_mode", scale},
               {"stream_bytes", bytes.size()},
               {"blocks", enc.blocks.size()},
               {"uncompressed_bits", rate.uncompressed_bits},
               {"payload_bits", rate.payload_bits},
               {"measured_rate", rate.measured()},
               {"sparsity", zero_fraction(map)},
               {"scale_usage", {{"revised", revised}, {"log", log_count}}}};
        if (nominal) {
          j["nominal_rate"] = nominal->value();
          j["nominal_rate_num"] = nominal->num;
          j["nominal_rate_den"] = nominal->den;
        } else {
          j["nominal_rate"] = json();
        }
        if (perm) j["permutation"] = perm->order;

        std::string nominal_note = " (sparse, no nominal rate)";
        if (nominal) nominal_note = ", nominal " + std::to_string(nominal->value()) + ":1";
        std::fprintf(stderr, "encoded %ux%ux%u %s -> %zu bytes, measured %.4f:1%s\n", map.width,
                     map.height, map.channels, asc::to_string(asc::sample_traits<T>::format),
                     bytes.size(), rate.measured(), nominal_note.c_str());
        return j;
      },
      any_map);

  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_decode(const std::string& in_path, const std::string& out_path) {
  const asc::AnyEncodedTensor enc = asc::deserialize(read_file(in_path));
  const asc::AnyFeatureMap map = asc::decode(enc);
  write_file(out_path, asc::store_fmap(map));

  json j = std::visit(
      [&](const auto& m) {
        using T = typename std::decay_t<decltype(m)>::sample_type;
        return json{{"input", in_path},
                    {"output", out_path},
                    {"format", asc::to_string(asc::sample_traits<T>::format)},
                    {"width", m.width},
                    {"height", m.height},
                    {"channels", m.channels}};
      },
      map);
  j["vbr"] = std::visit([](const auto& e) { return e.config.vbr; }, enc);
  j["permuted"] = std::visit([](const auto& e) { return e.permutation.has_value(); }, enc);
  std::printf("%s\n", j.dump(2).c_str());
  std::fprintf(stderr, "decoded %s -> %s\n", in_path.c_str(), out_path.c_str());
  return 0;
}

int cmd_stats(const std::string& orig_path, const std::string& recon_path,
              std::optional<std::string> stream_path) {
  const asc::AnyFeatureMap orig = asc::load_fmap(read_file(orig_path));
  const asc::AnyFeatureMap recon = asc::load_fmap(read_file(recon_path));
  if (orig.index() != recon.index())
    throw asc::invalid_argument_error("maps disagree on sample format");

  asc::QualityReport q = std::visit(
      [&](const auto& a) {
        return asc::compare(a, std::get<std::decay_t<decltype(a)>>(recon));
      },
      orig);

  if (stream_path) {
    const asc::AnyEncodedTensor enc = asc::deserialize(read_file(*stream_path));
    std::visit([&](const auto& e) { asc::attach_scale_usage(q, e); }, enc);
  }

  std::printf("%s\n", quality_json(q).dump(2).c_str());
  if (q.mse == 0.0) {
    std::fprintf(stderr, "lossless: %" PRIu64 " samples identical\n", q.samples);
  } else {
    std::fprintf(stderr, "l1_mean %.6f  mse %.6f  psnr %.2f dB  max |err| %g\n", q.l1_mean,
                 q.mse, q.psnr_db, q.max_abs_error);
  }
  return 0;
}

int cmd_shape(unsigned block_size) {
  const asc::BlockShape s = asc::derive_cubical_shape(block_size);
  json j{{"block_size", block_size}, {"block_shape", {s.w, s.h, s.c}}};
  std::printf("%s\n", j.dump(2).c_str());
  std::fprintf(stderr, "block %u -> %ux%ux%u\n", block_size, s.w, s.h, s.c);
  return 0;
}

int cmd_reorder(const std::vector<std::string>& calib_paths, const std::string& method_name,
                unsigned group_size, std::optional<std::string> out_path) {
  if (calib_paths.empty()) throw asc::invalid_argument_error("need at least one calibration map");
  std::vector<asc::AnyFeatureMap> maps;
  maps.reserve(calib_paths.size());
  for (const auto& p : calib_paths) maps.push_back(asc::load_fmap(read_file(p)));
  for (const auto& m : maps) {
    if (m.index() != maps[0].index())
      throw asc::invalid_argument_error("calibration maps disagree on sample format");
  }

  const auto method =
      method_name == "greedy" ? asc::ReorderMethod::greedy : asc::ReorderMethod::heuristic;
  const asc::ChannelPermutation perm = std::visit(
      [&](const auto& first) {
        using MapT = std::decay_t<decltype(first)>;
        std::vector<MapT> typed;
        typed.reserve(maps.size());
        for (const auto& m : maps) typed.push_back(std::get<MapT>(m));
        const auto sim = asc::similarity_matrix(typed);
        return asc::hierarchical_order(sim, method, group_size);
      },
      maps[0]);

  const json j = perm.order;  // a bare array, consumable by encode --permutation
  std::printf("%s\n", j.dump().c_str());
  if (out_path) {
    const std::string text = j.dump();
    write_file(*out_path, std::vector<uint8_t>(text.begin(), text.end()));
  }
  std::fprintf(stderr, "%s permutation over %zu channels (groups of %u)\n", method_name.c_str(),
               perm.order.size(), group_size);
  return 0;
}

// Reference tables the datapaths must reproduce, built with the scalar path.
struct ReferenceTables {
  std::array<std::array<int64_t, 8>, 2> points{};
  std::array<std::array<int64_t, 7>, 2> thresholds{};
};

ReferenceTables reference_tables(asc::DatapathVariant variant, int64_t m, int64_t M) {
  ReferenceTables r;
  const int8_t m8 = static_cast<int8_t>(m);
  const int8_t M8 = static_cast<int8_t>(M);
  if (variant == asc::DatapathVariant::linear_log) {
    r.points[0] = asc::linear_reference_points(m8, M8);
    for (int i = 1; i <= 7; ++i) {
      // Exact midpoints of the linear ladder, floored, reported shifted.
      const int64_t num = (15 - 2 * i) * m + (2 * i - 1) * M;
      r.thresholds[0][i - 1] = asc::detail::floor_div(num, 14) - m;
    }
  } else {
    const auto t = asc::build_table(asc::ScaleKind::revised_linear, m8, M8);
    r.points[0] = t.points;
    r.thresholds[0] = t.thresholds;
  }
  const auto t = asc::build_table(asc::ScaleKind::log_linear, m8, M8);
  r.points[1] = t.points;
  r.thresholds[1] = t.thresholds;
  return r;
}

int cmd_hw_report(bool exhaustive) {
  json variants = json::array();
  uint64_t checked = 0, failures = 0;

  for (const auto variant :
       {asc::DatapathVariant::linear_log, asc::DatapathVariant::revised_log,
        asc::DatapathVariant::revised_log_shifted}) {
    const asc::Datapath dp = asc::build_datapath(variant);
    const asc::OpCensus c = dp.census();

    std::vector<std::pair<int64_t, int64_t>> pairs;
    if (exhaustive) {
      for (int m = -128; m <= 127; ++m) {
        for (int M = m; M <= 127; ++M) pairs.emplace_back(m, M);
      }
    } else {
      pairs = {{-128, 127}, {0, 0}, {0, 127}, {-128, -128}, {-1, 1}, {0, 96}, {10, 18}};
      std::mt19937_64 rng(7);
      std::uniform_int_distribution<int> d(-128, 127);
      for (int i = 0; i < 512; ++i) {
        int a = d(rng), b = d(rng);
        pairs.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    for (const auto& [m, M] : pairs) {
      const auto got = dp.tables(m, M);
      const auto want = reference_tables(variant, m, M);
      ++checked;
      if (got.points != want.points || got.thresholds != want.thresholds) ++failures;
    }

    variants.push_back(json{{"variant", asc::to_string(variant)},
                            {"census",
                             {{"dividers", c.dividers},
                              {"multipliers", c.multipliers},
                              {"adders", c.adders}}},
                            {"multiplier_factors", dp.multiplier_factors()},
                            {"dag_nodes", dp.dag.size()}});
    std::fprintf(stderr, "%-20s dividers %2d  multipliers %2d  adders %2d  (%zu nodes)\n",
                 asc::to_string(variant), c.dividers, c.multipliers, c.adders, dp.dag.size());
  }

  json j{{"variants", variants},
         {"equivalence",
          {{"mode", exhaustive ? "exhaustive-int8" : "sampled"},
           {"tables_checked", checked},
           {"failures", failures}}}};
  std::printf("%s\n", j.dump(2).c_str());
  std::fprintf(stderr, "equivalence: %" PRIu64 " endpoint pairs checked, %" PRIu64 " failures\n",
               checked, failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive-scale feature-map compression"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "compress a feature map");
  std::string enc_in, enc_out;
  std::optional<unsigned> block_size;
  std::optional<std::string> block_shape_str, permutation_file;
  unsigned endpoints = 2;
  bool vbr = false;
  std::string scale = "adaptive", reorder = "none";
  enc->add_option("input", enc_in, "input .fmap")->required();
  enc->add_option("output", enc_out, "output .asc")->required();
  auto* bs_opt = enc->add_option("--block-size", block_size, "samples per block (power of two)");
  enc->add_option("--block-shape", block_shape_str, "explicit WxHxC block extent")
      ->excludes(bs_opt);
  enc->add_option("--endpoints", endpoints, "endpoints per block (1 or 2)")
      ->check(CLI::IsMember({1u, 2u}));
  enc->add_flag("--vbr", vbr, "sparse mode: zero mask + compressed nonzeros");
  enc->add_option("--scale", scale, "scale policy")
      ->check(CLI::IsMember({"adaptive", "revised", "log"}));
  enc->add_option("--reorder", reorder, "channel reordering method")
      ->check(CLI::IsMember({"none", "greedy", "heuristic"}));
  enc->add_option("--permutation", permutation_file, "JSON array with an explicit channel order");

  // decode
  auto* dec = app.add_subcommand("decode", "decompress a stream");
  std::string dec_in, dec_out;
  dec->add_option("input", dec_in, "input .asc")->required();
  dec->add_option("output", dec_out, "output .fmap")->required();

  // stats
  auto* st = app.add_subcommand("stats", "quality report between two maps");
  std::string st_orig, st_recon;
  std::optional<std::string> st_stream;
  st->add_option("original", st_orig, "original .fmap")->required();
  st->add_option("decoded", st_recon, "decoded .fmap")->required();
  st->add_option("--stream", st_stream, ".asc stream for per-scale usage counts");

  // shape
  auto* sh = app.add_subcommand("shape", "show the derived block shape for a size");
  unsigned shape_size = 0;
  sh->add_option("block_size", shape_size, "block size (power of two)")->required();

  // reorder
  auto* ro = app.add_subcommand("reorder", "derive a channel permutation from calibration maps");
  std::vector<std::string> calib;
  std::string method = "greedy";
  unsigned group_size = 2;
  std::optional<std::string> ro_out;
  ro->add_option("maps", calib, "calibration .fmap files")->required();
  ro->add_option("--method", method, "pairing method")
      ->check(CLI::IsMember({"greedy", "heuristic"}));
  ro->add_option("--group-size", group_size, "hierarchical group width (power of two)");
  ro->add_option("--output", ro_out, "also write the permutation to a file");

  // hw-report
  auto* hw = app.add_subcommand("hw-report", "datapath operator census and equivalence check");
  bool exhaustive = false;
  hw->add_flag("--exhaustive", exhaustive, "check all int8 endpoint pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed())
      return cmd_encode(enc_in, enc_out, block_size, block_shape_str, endpoints, vbr, scale,
                        reorder, permutation_file);
    if (dec->parsed()) return cmd_decode(dec_in, dec_out);
    if (st->parsed()) return cmd_stats(st_orig, st_recon, st_stream);
    if (sh->parsed()) return cmd_shape(shape_size);
    if (ro->parsed()) return cmd_reorder(calib, method, group_size, ro_out);
    if (hw->parsed()) return cmd_hw_report(exhaustive);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
