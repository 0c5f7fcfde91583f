// Copyright 2026 The radlabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radlabel/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "radlabel/error.h"

namespace radlabel {

std::vector<std::size_t> kshot_targets(const Corpus& pool, std::size_t k) {
  const auto counts = pool.positive_counts();
  std::vector<std::size_t> targets(counts.size(), 0);
  if (pool.empty()) return targets;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double share = static_cast<double>(k) * static_cast<double>(counts[c]) /
                         static_cast<double>(pool.size());
    auto t = static_cast<std::size_t>(std::floor(share + 1e-9));
    if (t == 0 && share >= 0.5) t = 1;
    targets[c] = std::min(t, counts[c]);
  }
  return targets;
}

namespace {

class Allocation {
 public:
  Allocation(const Corpus& pool, std::vector<std::size_t> targets,
             std::vector<long> rounded)
      : pool_(pool),
        targets_(std::move(targets)),
        rounded_(std::move(rounded)),
        counts_(targets_.size(), 0),
        selected_(pool.size(), false) {}

  bool selected(std::size_t i) const { return selected_[i]; }
  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& counts() const { return counts_; }

  void add(std::size_t i) {
    selected_[i] = true;
    ++size_;
    const auto& g = pool_.reports()[i].gold;
    for (std::size_t c = 0; c < g.size(); ++c) counts_[c] += g[c];
  }

  void remove(std::size_t i) {
    selected_[i] = false;
    --size_;
    const auto& g = pool_.reports()[i].gold;
    for (std::size_t c = 0; c < g.size(); ++c) counts_[c] -= g[c];
  }

  // Categories (other than `skip`) that adding report i would push above
  // target.
  std::size_t overshoot(std::size_t i, std::size_t skip) const {
    const auto& g = pool_.reports()[i].gold;
    std::size_t n = 0;
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (c != skip && g[c] && counts_[c] + 1 > targets_[c]) ++n;
    }
    return n;
  }

  // (distance outside the +-1 band around the rounded share, distance from
  // target) summed over categories, for counts shifted by `delta`.
  std::pair<long, long> cost(const std::vector<long>& delta) const {
    long excess = 0, total = 0;
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      const long count = static_cast<long>(counts_[c]) + delta[c];
      total += std::labs(count - static_cast<long>(targets_[c]));
      excess += std::max(0L, std::labs(count - rounded_[c]) - 1);
    }
    return {excess, total};
  }

 private:
  const Corpus& pool_;
  std::vector<std::size_t> targets_;
  std::vector<long> rounded_;
  std::vector<std::size_t> counts_;
  std::vector<bool> selected_;
  std::size_t size_ = 0;
};

std::vector<long> rounded_shares(const Corpus& pool, std::size_t k) {
  const auto counts = pool.positive_counts();
  std::vector<long> out(counts.size(), 0);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out[c] = std::lround(static_cast<double>(k) * static_cast<double>(counts[c]) /
                         static_cast<double>(pool.size()));
  }
  return out;
}

}  // namespace

KShotSample stratified_kshot(const Corpus& pool, std::size_t k,
                             std::uint64_t seed) {
  if (k == 0) throw Error("K must be positive");
  if (k > pool.size()) {
    throw Error("cannot sample K=" + std::to_string(k) + " from a pool of " +
                std::to_string(pool.size()) + " reports");
  }
  KShotSample out;
  out.targets = kshot_targets(pool, k);
  const std::size_t n = pool.category_count();
  const std::vector<long> rounded =
      pool.empty() ? std::vector<long>(n, 0) : rounded_shares(pool, k);

  if (k == pool.size()) {
    out.indices.resize(k);
    std::iota(out.indices.begin(), out.indices.end(), 0);
  } else {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    Allocation alloc(pool, out.targets, rounded);
    const auto counts = pool.positive_counts();
    std::vector<std::size_t> by_rarity(n);
    std::iota(by_rarity.begin(), by_rarity.end(), 0);
    std::stable_sort(by_rarity.begin(), by_rarity.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] < counts[b]; });

    // Picks the unselected report (in shuffled order) that satisfies `accept`
    // with the fewest overshoots; returns pool.size() when none qualifies.
    auto pick = [&](auto accept, std::size_t skip) {
      std::size_t best = pool.size(), best_cost = SIZE_MAX;
      for (std::size_t i : order) {
        if (alloc.selected(i) || !accept(i)) continue;
        const std::size_t cost = alloc.overshoot(i, skip);
        if (cost < best_cost) {
          best = i;
          best_cost = cost;
          if (cost == 0) break;
        }
      }
      return best;
    };

    for (std::size_t c : by_rarity) {
      while (alloc.size() < k && alloc.counts()[c] < out.targets[c]) {
        const std::size_t i =
            pick([&](std::size_t j) { return pool.reports()[j].gold[c] != 0; }, c);
        if (i == pool.size()) break;
        alloc.add(i);
      }
    }
    while (alloc.size() < k) {
      alloc.add(pick([](std::size_t) { return true; }, n));
    }

    // First-improvement swap search.
    std::vector<long> delta(n, 0);
    const std::vector<long> zero(n, 0);
    auto current = alloc.cost(zero);
    for (int pass = 0; pass < 64 && current.second > 0; ++pass) {
      bool improved = false;
      for (std::size_t out_i : order) {
        if (!alloc.selected(out_i)) continue;
        const auto& go = pool.reports()[out_i].gold;
        for (std::size_t in_i : order) {
          if (alloc.selected(in_i)) continue;
          const auto& gi = pool.reports()[in_i].gold;
          if (gi == go) continue;
          for (std::size_t c = 0; c < n; ++c) {
            delta[c] = static_cast<long>(gi[c]) - static_cast<long>(go[c]);
          }
          const auto candidate = alloc.cost(delta);
          if (candidate < current) {
            alloc.remove(out_i);
            alloc.add(in_i);
            current = candidate;
            improved = true;
            break;
          }
        }
        if (current.second == 0) break;
      }
      if (!improved) break;
    }

    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (alloc.selected(i)) out.indices.push_back(i);
    }
  }

  out.sample = pool.subset(out.indices);
  out.achieved = out.sample.positive_counts();
  for (std::size_t c = 0; c < n; ++c) {
    if (std::labs(static_cast<long>(out.achieved[c]) - rounded[c]) > 1) {
      out.allocation_exact = false;
    }
  }
  return out;
}

}  // namespace radlabel
