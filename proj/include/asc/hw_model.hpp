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
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "asc/error.hpp"
#include "asc/scales.hpp"

namespace asc {

// Datapath cost model for the table-building hardware. A block decoder (or
// encoder) must turn the endpoints (m, M) into 16 interpolation points and
// 14 thresholds, both scales at once since the scale flag arrives with the
// data. This module builds that computation as a hash-consed expression DAG
// for three implementation strategies and counts what each one would
// synthesize to:
//
//   linear_log           true linear ladder + log scale, points and
//                        thresholds computed directly from (m, M)
//   revised_log          revised-linear + log, direct (m, M) forms; every
//                        denominator is a power of two so dividers vanish
//   revised_log_shifted  revised-linear + log over the shared range
//                        R = M - m; every point and threshold is a shifted
//                        multiple of R, one subtractor makes R, one shared
//                        adder rebases the selected point by m
//
// Census convention: add/sub nodes count as adders, constant multiplies by
// a non-trivial odd factor as multipliers, constant divides by a non-trivial
// odd factor as dividers. Shifts, muxes and constants are free; even factors
// are canonicalized into shifts so a "multiply by 6" costs one multiplier
// (x3), not two. Structural sharing is maximal: coefficient vectors are
// reduced by their full gcd before any node is created, which is what lets
// the two scales share sums such as (7m + M)/8 = (28m + 4M)/32.

enum class DagOp : uint8_t {
  input,      // k = input id (0 = m, 1 = M)
  constant,   // k = value
  add,        // args a + b
  sub,        // args a - b
  mul_const,  // args a * k, k odd > 1
  div_const,  // floor(args a / k), k odd > 1
  shl,        // a * 2^k
  shr,        // floor(a / 2^k)
  select,     // k = selector port (0 = point index, 1 = scale), args = candidates
};

struct DagNode {
  DagOp op;
  int64_t k = 0;
  std::vector<uint32_t> args;
};

class ExprDag {
 public:
  uint32_t input(int id) { return intern(DagOp::input, id, {}); }
  uint32_t constant(int64_t v) { return intern(DagOp::constant, v, {}); }

  uint32_t add(uint32_t a, uint32_t b) {
    if (a > b) std::swap(a, b);  // commutative: canonical arg order
    return intern(DagOp::add, 0, {a, b});
  }
  uint32_t sub(uint32_t a, uint32_t b) { return intern(DagOp::sub, 0, {a, b}); }

  uint32_t shl(uint32_t a, int s) { return s == 0 ? a : intern(DagOp::shl, s, {a}); }
  uint32_t shr(uint32_t a, int s) { return s == 0 ? a : intern(DagOp::shr, s, {a}); }

  // a * k for k >= 1, split into an odd multiplier and a shift.
  uint32_t mul(uint32_t a, int64_t k) {
    if (k < 1) throw invalid_argument_error("multiplier factor must be positive");
    const int s = std::countr_zero(static_cast<uint64_t>(k));
    const int64_t odd = k >> s;
    const uint32_t t = odd == 1 ? a : intern(DagOp::mul_const, odd, {a});
    return shl(t, s);
  }

  // floor(a / k) for k >= 1, split into an odd divider and a shift
  // (floor(floor(a/odd)/2^s) == floor(a/k) for positive factors).
  uint32_t div(uint32_t a, int64_t k) {
    if (k < 1) throw invalid_argument_error("divisor must be positive");
    const int s = std::countr_zero(static_cast<uint64_t>(k));
    const int64_t odd = k >> s;
    const uint32_t t = odd == 1 ? a : intern(DagOp::div_const, odd, {a});
    return shr(t, s);
  }

  // floor((ca*a + cb*b) / den) with the coefficient vector reduced by its
  // full gcd first, so equal rationals land on equal nodes.
  uint32_t affine(int64_t ca, uint32_t a, int64_t cb, uint32_t b, int64_t den) {
    if (ca < 0 || cb < 0 || den < 1) throw invalid_argument_error("affine coefficients");
    int64_t g = std::gcd(std::gcd(ca, cb), den);
    if (g == 0) g = 1;
    ca /= g;
    cb /= g;
    den /= g;
    uint32_t num;
    if (ca == 0 && cb == 0) {
      num = constant(0);
    } else if (ca == 0) {
      num = mul(b, cb);
    } else if (cb == 0) {
      num = mul(a, ca);
    } else {
      num = add(mul(a, ca), mul(b, cb));
    }
    return div(num, den);
  }

  uint32_t select(int port, std::vector<uint32_t> candidates) {
    return intern(DagOp::select, port, std::move(candidates));
  }

  const std::vector<DagNode>& nodes() const { return nodes_; }
  size_t size() const { return nodes_.size(); }

 private:
  uint32_t intern(DagOp op, int64_t k, std::vector<uint32_t> args) {
    const auto key = std::make_tuple(static_cast<uint8_t>(op), k, args);
    const auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    const uint32_t id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(DagNode{op, k, std::move(args)});
    interned_.emplace(key, id);
    return id;
  }

  std::vector<DagNode> nodes_;
  std::map<std::tuple<uint8_t, int64_t, std::vector<uint32_t>>, uint32_t> interned_;
};

struct OpCensus {
  int dividers = 0;
  int multipliers = 0;
  int adders = 0;

  friend bool operator==(OpCensus a, OpCensus b) {
    return a.dividers == b.dividers && a.multipliers == b.multipliers && a.adders == b.adders;
  }
};

enum class DatapathVariant : uint8_t {
  linear_log = 0,
  revised_log = 1,
  revised_log_shifted = 2,
};

inline const char* to_string(DatapathVariant v) {
  switch (v) {
    case DatapathVariant::linear_log: return "linear+log";
    case DatapathVariant::revised_log: return "revised+log";
    case DatapathVariant::revised_log_shifted: return "revised+log shifted";
  }
  return "unknown";
}

struct SelectInputs {
  int index = 0;  // port 0
  int scale = 0;  // port 1
};

// Evaluates every node for inputs (m, M) and the given selector settings.
// Nodes are stored in creation order, so arguments always precede users and
// one forward pass suffices. Arithmetic is int64 with floor semantics.
inline std::vector<int64_t> eval_all(const ExprDag& dag, int64_t m, int64_t M,
                                     SelectInputs sel = {}) {
  std::vector<int64_t> v(dag.size(), 0);
  const auto& nodes = dag.nodes();
  for (size_t i = 0; i < nodes.size(); ++i) {
    const DagNode& n = nodes[i];
    switch (n.op) {
      case DagOp::input: v[i] = n.k == 0 ? m : M; break;
      case DagOp::constant: v[i] = n.k; break;
      case DagOp::add: v[i] = v[n.args[0]] + v[n.args[1]]; break;
      case DagOp::sub: v[i] = v[n.args[0]] - v[n.args[1]]; break;
      case DagOp::mul_const: v[i] = v[n.args[0]] * n.k; break;
      case DagOp::div_const: v[i] = detail::floor_div(v[n.args[0]], n.k); break;
      case DagOp::shl: v[i] = v[n.args[0]] * (int64_t{1} << n.k); break;
      case DagOp::shr: v[i] = v[n.args[0]] >> n.k; break;  // arithmetic: floor
      case DagOp::select: {
        const int pick = n.k == 0 ? sel.index : sel.scale;
        if (pick < 0 || static_cast<size_t>(pick) >= n.args.size())
          throw invalid_argument_error("selector out of range");
        v[i] = v[n.args[static_cast<size_t>(pick)]];
        break;
      }
    }
  }
  return v;
}

struct Datapath {
  ExprDag dag;
  DatapathVariant variant = DatapathVariant::linear_log;

  uint32_t m_node = 0;
  uint32_t M_node = 0;
  uint32_t range_node = UINT32_MAX;  // shifted variant only
  uint32_t point_mux = UINT32_MAX;   // shifted variant: rebased mux output
  // Node ids per [scale][slot]; scale 0 is the variant's linear-ish half
  // (linear or revised), scale 1 is log. For the shifted variant the point
  // nodes are in the shifted domain and the mux output carries the rebase.
  std::array<std::array<uint32_t, 8>, 2> point_nodes{};
  std::array<std::array<uint32_t, 7>, 2> threshold_nodes{};
  bool shifted = false;

  struct Tables {
    // Sample-domain points and shifted-domain thresholds, matching what
    // build_table produces for integer formats.
    std::array<std::array<int64_t, 8>, 2> points{};
    std::array<std::array<int64_t, 7>, 2> thresholds{};
  };

  Tables tables(int64_t m, int64_t M) const {
    Tables t;
    if (shifted) {
      for (int s = 0; s < 2; ++s) {
        for (int k = 0; k < 8; ++k) {
          // Drive the muxes so the one shared rebase adder does the work.
          const auto v = eval_all(dag, m, M, SelectInputs{k, s});
          t.points[s][k] = v[point_mux];
        }
        const auto v = eval_all(dag, m, M);
        for (int i = 0; i < 7; ++i) t.thresholds[s][i] = v[threshold_nodes[s][i]];
      }
    } else {
      const auto v = eval_all(dag, m, M);
      for (int s = 0; s < 2; ++s) {
        for (int k = 0; k < 8; ++k) t.points[s][k] = v[point_nodes[s][k]];
        // Direct threshold nodes live in the sample domain; report them
        // shifted to match the comparison convention.
        for (int i = 0; i < 7; ++i) t.thresholds[s][i] = v[threshold_nodes[s][i]] - m;
      }
    }
    return t;
  }

  OpCensus census() const {
    OpCensus c;
    for (const DagNode& n : dag.nodes()) {
      switch (n.op) {
        case DagOp::add:
        case DagOp::sub: ++c.adders; break;
        case DagOp::mul_const: ++c.multipliers; break;
        case DagOp::div_const: ++c.dividers; break;
        default: break;
      }
    }
    return c;
  }

  // Distinct odd factors of the counted multipliers, ascending.
  std::vector<int64_t> multiplier_factors() const {
    std::vector<int64_t> f;
    for (const DagNode& n : dag.nodes()) {
      if (n.op == DagOp::mul_const) f.push_back(n.k);
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
  }
};

namespace detail {

// Shifted multiple of R: floor(num * R / den), den a power of two, reduced
// so equal fractions intern to equal nodes.
inline uint32_t scaled_range_node(ExprDag& dag, uint32_t range, int num, int den) {
  if (num == 0) return dag.constant(0);
  const int g = std::gcd(num, den);
  num /= g;
  den /= g;
  return dag.div(dag.mul(range, num), den);
}

}  // namespace detail

inline Datapath build_datapath(DatapathVariant variant) {
  Datapath dp;
  dp.variant = variant;
  ExprDag& dag = dp.dag;
  dp.m_node = dag.input(0);
  dp.M_node = dag.input(1);

  if (variant == DatapathVariant::revised_log_shifted) {
    dp.shifted = true;
    dp.range_node = dag.sub(dp.M_node, dp.m_node);
    const ScaleKind scales[2] = {ScaleKind::revised_linear, ScaleKind::log_linear};
    std::array<std::vector<uint32_t>, 2> cand;
    for (int s = 0; s < 2; ++s) {
      const auto& c = detail::coeffs(scales[s]);
      for (int k = 0; k < 8; ++k) {
        dp.point_nodes[s][k] =
            detail::scaled_range_node(dag, dp.range_node, c.point_num[k], 1 << c.point_shift);
        cand[s].push_back(dp.point_nodes[s][k]);
      }
      for (int t = 0; t < 7; ++t) {
        dp.threshold_nodes[s][t] = detail::scaled_range_node(
            dag, dp.range_node, c.threshold_num[t], 1 << c.threshold_shift);
      }
    }
    const uint32_t mux_rev = dag.select(0, cand[0]);
    const uint32_t mux_log = dag.select(0, cand[1]);
    const uint32_t mux_scale = dag.select(1, {mux_rev, mux_log});
    dp.point_mux = dag.add(dp.m_node, mux_scale);
    return dp;
  }

  // Direct forms: every point and threshold as floor((a*m + b*M) / den).
  const bool linear_half = variant == DatapathVariant::linear_log;
  for (int s = 0; s < 2; ++s) {
    if (s == 0 && linear_half) {
      for (int i = 0; i < 8; ++i)
        dp.point_nodes[0][i] = dag.affine(7 - i, dp.m_node, i, dp.M_node, 7);
      for (int i = 1; i <= 7; ++i)
        dp.threshold_nodes[0][i - 1] =
            dag.affine(15 - 2 * i, dp.m_node, 2 * i - 1, dp.M_node, 14);
      continue;
    }
    const auto& c = detail::coeffs(s == 0 ? ScaleKind::revised_linear : ScaleKind::log_linear);
    const int64_t pden = int64_t{1} << c.point_shift;
    const int64_t tden = int64_t{1} << c.threshold_shift;
    for (int k = 0; k < 8; ++k) {
      dp.point_nodes[s][k] =
          dag.affine(pden - c.point_num[k], dp.m_node, c.point_num[k], dp.M_node, pden);
    }
    for (int t = 0; t < 7; ++t) {
      dp.threshold_nodes[s][t] =
          dag.affine(tden - c.threshold_num[t], dp.m_node, c.threshold_num[t], dp.M_node, tden);
    }
  }
  return dp;
}

// Priority encoder over the seven shifted-threshold comparison bits:
// index of the highest set bit plus one, zero when none is set. Feeding it
// bit_i = (x - m > threshold_i) reproduces assign_index exactly.
inline int priority_encode(const std::array<bool, 7>& compare_bits) {
  for (int i = 6; i >= 0; --i) {
    if (compare_bits[i]) return i + 1;
  }
  return 0;
}

}  // namespace asc
