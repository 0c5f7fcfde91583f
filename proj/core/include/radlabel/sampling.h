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

#ifndef RADLABEL_SAMPLING_H_
#define RADLABEL_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "radlabel/corpus.h"

namespace radlabel {

struct KShotSample {
  Corpus sample;                     // reports in pool order
  std::vector<std::size_t> indices;  // ascending positions in the pool
  std::vector<std::size_t> targets;  // per-category positive targets
  std::vector<std::size_t> achieved;
  // False when some category ended more than one positive away from
  // round(K * rate) because the pool admits no closer allocation (or the
  // search did not find one).
  bool allocation_exact = true;
};

// Per-category positive targets for a K-report sample from `pool`: the
// proportional share K * positives / |pool| rounded down, raised to one when
// the share is at least one half.
std::vector<std::size_t> kshot_targets(const Corpus& pool, std::size_t k);

// Multi-label stratified sample of exactly `k` reports. Categories are
// allocated rarest first from still-unselected reports, the remainder is
// filled preferring reports that keep every category at or under target, and
// a swap search then repairs any category left off target.
// Deterministic in (pool, k, seed). Throws Error when k is 0 or > |pool|.
KShotSample stratified_kshot(const Corpus& pool, std::size_t k,
                             std::uint64_t seed);

}  // namespace radlabel

#endif  // RADLABEL_SAMPLING_H_
