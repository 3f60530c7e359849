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


#ifndef ORBIT_GTPOLYTOPE_HPP
#define ORBIT_GTPOLYTOPE_HPP

#include <utility>
#include <vector>

#include "orbit/pattern.hpp"
#include "orbit/rng.hpp"

namespace orbit {

// sum_k coef_k * x[idx_k] + constant >= 0, over the free coordinates of a
// pattern (every level except the top, flattened in level order).
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  double eval(const std::vector<double>& x) const;
};

struct GTLayout {
  std::vector<LevelInfo> levels;
  std::vector<int> offset;  // start of each non-top level in the flat vector
  int free_dim = 0;
};

GTLayout gt_layout(const FieldContext& ctx);
std::vector<LinearConstraint> gt_constraints(const RadialPoint& lambda);

std::vector<double> flatten_free(const GTPattern& p);
GTPattern unflatten(const RadialPoint& lambda, const std::vector<double>& x);

// Membership with absolute slack tol; throws DomainError on shape mismatch.
bool gt_contains(const RadialPoint& lambda, const GTPattern& p, double tol = 1e-12);

double gt_volume(const RadialPoint& lambda);

// Exact uniform sample, obtained as the minor process of U Omega(lambda) U*.
// For H the full pattern comes from SO(2n+1).
GTPattern sample_uniform_spectral(const RadialPoint& lambda, Rng& rng);

// Hit-and-run on the free coordinates. Requires a full-dimensional polytope.
class GTWalker {
 public:
  explicit GTWalker(const RadialPoint& lambda);

  void step(Rng& rng);
  void run(Rng& rng, long steps);
  GTPattern pattern() const { return unflatten(lambda_, x_); }
  int dimension() const { return static_cast<int>(x_.size()); }
  long burn_in() const { return 50L * dimension(); }
  static constexpr int thinning = 10;

 private:
  RadialPoint lambda_;
  std::vector<LinearConstraint> cons_;
  std::vector<double> x_;
};

// Fresh chain from the midpoint pattern; runs max(steps, burn-in) steps.
GTPattern sample_uniform_walk(const RadialPoint& lambda, Rng& rng, long steps = 0);
// One chain, `count` patterns after burn-in with the default thinning.
std::vector<GTPattern> sample_uniform_walk_chain(const RadialPoint& lambda, Rng& rng,
                                                 int count);

// Density of mu_lambda (law of x^(n-1)) at beta. lambda either interior
// or of the rank-one shape (theta, 0, ..., 0).
double mu_lambda_density(const RadialPoint& lambda, const std::vector<double>& beta);

}  // namespace orbit

#endif
