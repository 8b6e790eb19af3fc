// Copyright 2026 The vcomb authors
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

#pragma once

#include <cstdint>
#include <random>

namespace vcomb {

/// Sequential PRNG with portable output. mt19937_64 has a standard-mandated
/// bit stream, and the gaussian transform is an explicit Box-Muller instead of
/// std::normal_distribution (whose stream is implementation-defined), so the
/// same seed yields the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal deviate.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stateless counter mix: a splitmix64 chain over (seed, sample, draw).
/// Sample s of a sharded run sees exactly the bits sample s of a serial run
/// sees, which is what makes protocol runs reproducible under sharding.
std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw);

/// counter_mix mapped to a uniform in [0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw);

}  // namespace vcomb
