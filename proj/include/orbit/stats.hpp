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


#ifndef ORBIT_STATS_HPP
#define ORBIT_STATS_HPP

#include <functional>
#include <vector>

namespace orbit {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;  // chi-square only
};

// Q_KS(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2)
double kolmogorov_q(double t);

TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);
TestResult ks_two_sample(std::vector<double> x, std::vector<double> y);

// Pearson goodness of fit. Bins with expected count below min_expected are
// pooled into their neighbour.
TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                          double min_expected = 5.0, int fitted_params = 0);

// exact 1-D W1 between two empirical measures (equal or unequal sizes)
double wasserstein1(std::vector<double> x, std::vector<double> y);
// W1 between a weighted discrete measure and an empirical sample
double wasserstein1_weighted(std::vector<std::pair<double, double>> atoms, std::vector<double> y);
// W1 between a weighted discrete measure and a continuous law given by its CDF on [lo, hi]
double wasserstein1_cdf(std::vector<std::pair<double, double>> atoms,
                        const std::function<double(double)>& cdf, double lo, double hi);

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};
MeanSE mean_se(const std::vector<double>& x);

// Running mean/variance that merges associatively.
struct Accumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const Accumulator& o);
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  double se() const;
};

}  // namespace orbit

#endif
