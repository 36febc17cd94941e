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
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "asc/error.hpp"
#include "asc/tensor.hpp"

namespace asc {

// Channel reordering groups similar channels next to each other before
// blocking, so a block that spans several channels sees a tighter value
// range. Similarity is the absolute cosine between whole channels, averaged
// over a set of calibration maps; pairing is either globally greedy or the
// cheaper outlier-first heuristic. Both are deterministic, ties included.

// order[k] = source channel placed at position k of the reordered map.
struct ChannelPermutation {
  std::vector<uint32_t> order;

  size_t size() const { return order.size(); }

  bool valid() const {
    std::vector<bool> seen(order.size(), false);
    for (uint32_t ch : order) {
      if (ch >= order.size() || seen[ch]) return false;
      seen[ch] = true;
    }
    return true;
  }

  friend bool operator==(const ChannelPermutation& a, const ChannelPermutation& b) {
    return a.order == b.order;
  }
};

// Symmetric n x n matrix of mean |cosine| similarities, diagonal 1.
struct SimilarityMatrix {
  uint32_t n = 0;
  std::vector<double> s;  // row-major, n * n

  double at(uint32_t i, uint32_t j) const { return s[static_cast<size_t>(i) * n + j]; }
  double& at(uint32_t i, uint32_t j) { return s[static_cast<size_t>(i) * n + j]; }
};

enum class ReorderMethod : uint8_t {
  greedy = 0,
  heuristic = 1,
};

// Mean absolute cosine similarity between channels across calibration maps.
// Maps may differ in spatial size but must agree on the channel count.
// A channel with zero norm (all zeros) has similarity 0 to everything.
template <typename T>
SimilarityMatrix similarity_matrix(const std::vector<FeatureMap<T>>& maps) {
  if (maps.empty()) throw invalid_argument_error("similarity needs at least one map");
  const uint32_t n = maps[0].channels;
  for (const auto& m : maps) {
    if (m.channels != n) throw invalid_argument_error("calibration maps disagree on channels");
    if (m.sample_count() == 0 || m.data.size() != m.sample_count())
      throw invalid_argument_error("calibration map is empty or inconsistent");
  }

  SimilarityMatrix sim;
  sim.n = n;
  sim.s.assign(static_cast<size_t>(n) * n, 0.0);

  for (const auto& map : maps) {
    const size_t plane = static_cast<size_t>(map.width) * map.height;
    std::vector<double> norm(n, 0.0);
    for (uint32_t ch = 0; ch < n; ++ch) {
      double acc = 0.0;
      const T* p = map.data.data() + plane * ch;
      for (size_t i = 0; i < plane; ++i) {
        const double v = static_cast<double>(sample_traits<T>::widen(p[i]));
        acc += v * v;
      }
      norm[ch] = std::sqrt(acc);
    }
    for (uint32_t i = 0; i < n; ++i) {
      for (uint32_t j = i + 1; j < n; ++j) {
        double cosij = 0.0;
        if (norm[i] > 0.0 && norm[j] > 0.0) {
          const T* pi = map.data.data() + plane * i;
          const T* pj = map.data.data() + plane * j;
          double dot = 0.0;
          for (size_t k = 0; k < plane; ++k) {
            dot += static_cast<double>(sample_traits<T>::widen(pi[k])) *
                   static_cast<double>(sample_traits<T>::widen(pj[k]));
          }
          cosij = std::fabs(dot) / (norm[i] * norm[j]);
          if (cosij > 1.0) cosij = 1.0;  // guard rounding
        }
        sim.at(i, j) += cosij;
        sim.at(j, i) += cosij;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(maps.size());
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) sim.at(i, j) = (i == j) ? 1.0 : sim.at(i, j) * inv;
  }
  return sim;
}

namespace detail {

// Pairing core shared by both methods, operating on an abstract list of
// groups with a similarity accessor. Emits pair after pair, each pair
// lower-group-index-first; with an odd count the leftover group goes last.
template <typename SimFn>
std::vector<uint32_t> pair_groups(uint32_t n, ReorderMethod method, SimFn&& sim) {
  std::vector<uint32_t> remaining;
  remaining.reserve(n);
  for (uint32_t i = 0; i < n; ++i) remaining.push_back(i);

  std::vector<uint32_t> out;
  out.reserve(n);
  while (remaining.size() >= 2) {
    uint32_t a = 0, b = 0;
    if (method == ReorderMethod::greedy) {
      // Globally best pair; ties go to the lexicographically smallest (i, j).
      double best = -1.0;
      for (size_t x = 0; x < remaining.size(); ++x) {
        for (size_t y = x + 1; y < remaining.size(); ++y) {
          const double s = sim(remaining[x], remaining[y]);
          if (s > best) {
            best = s;
            a = remaining[x];
            b = remaining[y];
          }
        }
      }
    } else {
      // Outlier first: the group with the smallest similarity mass against
      // everything still unpaired is hardest to place, so it picks its best
      // partner now. Ties on both choices go to the smallest group index.
      double worst_sum = std::numeric_limits<double>::infinity();
      uint32_t u = remaining[0];
      for (uint32_t cand : remaining) {
        double row = 0.0;
        for (uint32_t other : remaining) {
          if (other != cand) row += sim(cand, other);
        }
        if (row < worst_sum) {
          worst_sum = row;
          u = cand;
        }
      }
      double best = -1.0;
      uint32_t v = u;
      for (uint32_t cand : remaining) {
        if (cand == u) continue;
        const double s = sim(u, cand);
        if (s > best) {
          best = s;
          v = cand;
        }
      }
      a = std::min(u, v);
      b = std::max(u, v);
    }
    out.push_back(a);
    out.push_back(b);
    std::erase(remaining, a);
    std::erase(remaining, b);
  }
  if (!remaining.empty()) out.push_back(remaining[0]);
  return out;
}

}  // namespace detail

// Single-level pairing over channels.
inline ChannelPermutation pair_channels(const SimilarityMatrix& sim, ReorderMethod method) {
  if (sim.n == 0) throw invalid_argument_error("similarity matrix is empty");
  ChannelPermutation p;
  p.order = detail::pair_groups(sim.n, method, [&](uint32_t i, uint32_t j) { return sim.at(i, j); });
  return p;
}

// Hierarchical pairing: pair channels, then pair the pairs on group-mean
// similarity, and so on, until groups reach group_size channels (a power of
// two). group_size 2 degenerates to pair_channels.
inline ChannelPermutation hierarchical_order(const SimilarityMatrix& sim, ReorderMethod method,
                                             uint32_t group_size) {
  if (sim.n == 0) throw invalid_argument_error("similarity matrix is empty");
  if (group_size < 2 || (group_size & (group_size - 1)) != 0)
    throw invalid_argument_error("group size must be a power of two >= 2");

  std::vector<std::vector<uint32_t>> groups(sim.n);
  for (uint32_t i = 0; i < sim.n; ++i) groups[i] = {i};

  uint32_t width = 1;
  while (width < group_size && groups.size() >= 2) {
    auto group_sim = [&](uint32_t a, uint32_t b) {
      double acc = 0.0;
      for (uint32_t i : groups[a]) {
        for (uint32_t j : groups[b]) acc += sim.at(i, j);
      }
      return acc / (static_cast<double>(groups[a].size()) * groups[b].size());
    };
    const std::vector<uint32_t> seq =
        detail::pair_groups(static_cast<uint32_t>(groups.size()), method, group_sim);

    std::vector<std::vector<uint32_t>> merged;
    merged.reserve(groups.size() / 2 + 1);
    size_t i = 0;
    for (; i + 1 < seq.size(); i += 2) {
      std::vector<uint32_t> g = groups[seq[i]];
      g.insert(g.end(), groups[seq[i + 1]].begin(), groups[seq[i + 1]].end());
      merged.push_back(std::move(g));
    }
    if (i < seq.size()) merged.push_back(groups[seq[i]]);
    groups = std::move(merged);
    width *= 2;
  }

  ChannelPermutation p;
  p.order.reserve(sim.n);
  for (const auto& g : groups) p.order.insert(p.order.end(), g.begin(), g.end());
  return p;
}

inline ChannelPermutation invert(const ChannelPermutation& p) {
  if (!p.valid()) throw invalid_argument_error("not a permutation");
  ChannelPermutation inv;
  inv.order.resize(p.order.size());
  for (uint32_t k = 0; k < p.order.size(); ++k) inv.order[p.order[k]] = k;
  return inv;
}

template <typename T>
FeatureMap<T> apply_permutation(const FeatureMap<T>& map, const ChannelPermutation& p) {
  if (p.size() != map.channels)
    throw invalid_argument_error("permutation size does not match channel count");
  if (!p.valid()) throw invalid_argument_error("not a permutation");

  FeatureMap<T> out;
  out.width = map.width;
  out.height = map.height;
  out.channels = map.channels;
  out.data.resize(map.data.size());
  const size_t plane = static_cast<size_t>(map.width) * map.height;
  for (uint32_t k = 0; k < map.channels; ++k) {
    const T* src = map.data.data() + plane * p.order[k];
    std::copy(src, src + plane, out.data.data() + plane * k);
  }
  return out;
}

}  // namespace asc
