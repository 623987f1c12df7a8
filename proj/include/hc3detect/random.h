// Copyright 2026 The hc3detect Authors.
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

#ifndef HC3DETECT_RANDOM_H_
#define HC3DETECT_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace hc3detect {

// Seeded generator whose draws are identical on every platform. The
// standard distributions are implementation-defined, so bounded draws are
// done here by rejection sampling on the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// FNV-1a over the bytes of `data`.
uint64_t Fnv1a64(std::string_view data);

// Derives the seed of one pipeline stage from the global --seed. The
// schedule is fixed: splitmix64(global ^ fnv1a(stage)).
uint64_t StageSeed(uint64_t global_seed, std::string_view stage);

}  // namespace hc3detect

#endif  // HC3DETECT_RANDOM_H_
