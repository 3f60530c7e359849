// Copyright 2026 The orbit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ORBIT_RNG_HPP
#define ORBIT_RNG_HPP

#include <cstdint>
#include <random>

namespace orbit {

// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Explicit random state. A (seed, stream) pair fully determines the
// sequence, so replicas can be generated in any order or thread.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  // child stream; deterministic function of (seed, stream, index)
  Rng split(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  double gamma(double shape, double rate);

  std::mt19937_64& engine() { return eng_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> unif_;
};

}  // namespace orbit

#endif
