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

#ifndef RECOVERY_RANDOM_H_
#define RECOVERY_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace recovery {

// Mixes a seed with a path of integers (decision index, action index,
// trajectory index, ...) into a new seed. Streams derived from distinct paths
// are statistically independent, and the result never depends on the order
// in which streams are consumed.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path);

// Random source with portable variates. The std:: distributions are
// implementation-defined, so everything here is built directly on the
// mt19937_64 output, which is fully specified by the standard.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  static Rng Derived(uint64_t seed, std::initializer_list<uint64_t> path) {
    return Rng(DeriveSeed(seed, path));
  }

  // Uniform on the open interval (0, 1).
  double Uniform();

  // Exponential with the given mean; strictly positive.
  double Exponential(double mean);

  // Uniform integer in [0, n). Requires n > 0.
  uint64_t UniformIndex(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace recovery

#endif  // RECOVERY_RANDOM_H_
