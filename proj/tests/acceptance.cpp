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


// Acceptance run: one PASS/FAIL line per criterion, full budget, seed 1.
// Tolerances live in orbit::tol (verify.hpp).

#include <cstdio>
#include <string>
#include <vector>

#include "orbit/verify.hpp"

int main() {
  struct Criterion {
    int id;
    const char* title;
    const char* suite;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact counting", "counts"},
      {2, "tensor dimension conservation", "tensor"},
      {3, "minor-process marginals", "minors"},
      {4, "spectral vs hit-and-run samplers", "samplers"},
      {5, "rank-one Gamma law", "gamma"},
      {6, "Fourier transform of M Omega M*", "fourier"},
      {7, "LUE eigenvalue density", "lue"},
      {8, "kernel level counts", "kernels"},
      {9, "determinantal two-point function", "rho2"},
      {10, "triangular vs explicit real kernel", "guer"},
      {11, "semiclassical convergence", "semiclassical"},
      {12, "real odd / quaternionic equivalence", "equivalence"},
  };

  orbit::VerifyOptions opt;
  opt.seed = 1;
  opt.budget = orbit::Budget::full;
  int failed = 0;
  for (const auto& c : criteria) {
    const orbit::SuiteReport rep = orbit::run_suite(c.suite, opt);
    const bool ok = rep.pass();
    failed += ok ? 0 : 1;
    std::printf("%s  %2d  %-38s (%.1fs)\n", ok ? "PASS" : "FAIL", c.id, c.title, rep.seconds);
    for (const auto& ch : rep.checks)
      std::printf("        %s %s: %s\n", ch.pass ? "ok " : "BAD", ch.name.c_str(), ch.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
