/*
 * Copyright 2026 The linkrank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace linkrank {

// Seeded pseudo-random stream. Only the raw 64-bit output of mt19937_64 is
// used (its sequence is fixed by the standard); bounded draws are done here
// so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent seed for a named sub-stream ("generation",
// "negatives", "balance", "folds") from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);

// Runs body(begin, end) over [0, count) split into contiguous chunks, one per
// worker. Chunk boundaries only affect scheduling; callers write disjoint
// output slots so results are identical for any worker count.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body);

}  // namespace linkrank

#include "linkrank/detail/parallel_impl.hpp"
