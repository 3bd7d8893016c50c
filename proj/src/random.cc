// Copyright 2026 The Recovery Planner Authors
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

#include "recovery/random.h"

#include <cmath>
#include <limits>

#include "recovery/error.h"

namespace recovery {

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t h = SplitMix64(seed);
  for (const uint64_t p : path) {
    h = SplitMix64(h ^ SplitMix64(p + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double Rng::Uniform() {
  // 53 random bits, shifted by half an ulp so that 0 is never produced.
  const uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::Exponential(double mean) { return -mean * std::log(Uniform()); }

uint64_t Rng::UniformIndex(uint64_t n) {
  if (n == 0) {
    throw RecoveryError(ErrorCode::kInvalidValue,
                        "UniformIndex requires a nonempty range");
  }
  // Rejection keeps the result exactly uniform.
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace recovery
