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


#ifndef ORBIT_TESTS_SUPPORT_HPP
#define ORBIT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "orbit/rng.hpp"

namespace orbit::testing {

template <typename T, typename Fn>
std::vector<T> draws(long n, std::uint64_t seed, Fn fn) {
  Rng rng(seed);
  std::vector<T> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) out.push_back(fn(rng));
  return out;
}

}  // namespace orbit::testing

#endif
