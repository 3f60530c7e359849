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


#ifndef ORBIT_VERIFY_HPP
#define ORBIT_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orbit/parallel.hpp"

namespace orbit {

// Pinned tolerances of the verification suites.
namespace tol {
constexpr double significance = 0.01;      // KS and chi-square
constexpr double se_multiple = 3.0;        // Monte Carlo vs exact
constexpr double level_count = 1e-5;       // kernel diagonal integrals
constexpr double kernel_agreement = 1e-8;  // two kernel formulas, pointwise
constexpr double semiclassical_w1 = 0.05;  // W1 at the largest scale
}  // namespace tol

enum class Budget { small, full };

struct VerifyOptions {
  std::uint64_t seed = 1;
  int threads = default_threads();
  Budget budget = Budget::full;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  std::map<std::string, double> stats;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  Budget budget = Budget::full;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool pass() const;
};

// counts, tensor, minors, samplers, gamma, fourier, lue, kernels, rho2,
// guer, semiclassical, equivalence
const std::vector<std::string>& verify_suites();

// Throws DomainError for an unknown suite.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt = {});

std::string to_string(Budget b);
Budget parse_budget(const std::string& s);

}  // namespace orbit

#endif
