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


#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "orbit/error.hpp"
#include "orbit/gtpolytope.hpp"
#include "orbit/stats.hpp"
#include "orbit/weyl.hpp"
#include "support.hpp"

using namespace orbit;

namespace {

RadialPoint rp(Field f, int n, std::vector<double> x) { return RadialPoint(FieldContext::make(f, n), std::move(x)); }

// CDF of x^(2)_1 under the uniform measure on the C3 (2,1,0) polytope
double top_marginal_cdf(double x) {
  if (x <= 1) return 0.0;
  if (x >= 2) return 1.0;
  return (x * x - x) / 2;
}

// midpoint rule over a box
double integrate2(const std::function<double(double, double)>& f, double a0, double a1, double b0,
                  double b1, int na, int nb) {
  const double ha = (a1 - a0) / na, hb = (b1 - b0) / nb;
  double s = 0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) s += f(a0 + (i + 0.5) * ha, b0 + (j + 0.5) * hb);
  return s * ha * hb;
}

double integrate1(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_SUITE("gtpolytope") {
  TEST_CASE("membership examples") {
    const auto lam = rp(Field::C, 2, {1, 0});
    GTPattern p{lam.ctx, {{0.4}, {1, 0}}};
    CHECK(gt_contains(lam, p));
    p.levels[0][0] = 1.2;
    CHECK_FALSE(gt_contains(lam, p));
    p.levels[0][0] = 1.0 + 1e-13;
    CHECK(gt_contains(lam, p));
    CHECK_FALSE(gt_contains(lam, p, 0.0));
    GTPattern bad{lam.ctx, {{0.4, 0.1}, {1, 0}}};
    CHECK_THROWS_AS(gt_contains(lam, bad), DomainError);

    // H1: 0 <= x^(1/2) <= lambda
    const auto h = rp(Field::H, 1, {2});
    CHECK(gt_contains(h, GTPattern{h.ctx, {{1.5}, {2}}}));
    CHECK_FALSE(gt_contains(h, GTPattern{h.ctx, {{-0.5}, {2}}}));

    const auto layout = gt_layout(FieldContext::make(Field::C, 3));
    CHECK(layout.free_dim == 3);
    CHECK(gt_layout(FieldContext::make(Field::H, 2)).free_dim == 4);
  }

  TEST_CASE("volumes") {
    CHECK(gt_volume(rp(Field::C, 3, {2, 1, 0})) == doctest::Approx(1.0));
    CHECK(gt_volume(rp(Field::C, 2, {3, 0.5})) == doctest::Approx(2.5));
    // relative volume of the lower-dimensional polytope
    CHECK(gt_volume(rp(Field::C, 3, {1, 1, 0})) == doctest::Approx(0.5));
    CHECK(gt_volume(rp(Field::H, 1, {1.5})) == doctest::Approx(1.5));

    // rejection estimate for C3 (2,1,0): free coordinates (x^(1), x^(2)) in [0,2] x [1,2] x [0,1]
    const auto lam = rp(Field::C, 3, {2, 1, 0});
    Rng rng(21);
    Accumulator acc;
    for (int i = 0; i < 200000; ++i) {
      std::vector<double> x = {2 * rng.uniform(), 1 + rng.uniform(), rng.uniform()};
      acc.add(gt_contains(lam, unflatten(lam, x)) ? 2.0 : 0.0);
    }
    CHECK(std::fabs(acc.mean - 1.0) < 4 * acc.se());
  }

  TEST_CASE("constraints agree with membership") {
    const auto lam = rp(Field::R, 5, {2.5, 1.0});
    const auto cons = gt_constraints(lam);
    Rng rng(22);
    const int d = gt_layout(lam.ctx).free_dim;
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> x(d);
      for (auto& v : x) v = 6 * rng.uniform() - 3;
      bool all = std::all_of(cons.begin(), cons.end(), [&](const LinearConstraint& c) { return c.eval(x) >= 0; });
      CHECK(all == gt_contains(lam, unflatten(lam, x), 0.0));
    }
  }

  TEST_CASE("samplers stay in the polytope") {
    const std::vector<RadialPoint> cases = {
        rp(Field::C, 3, {2, 1, 0}), rp(Field::C, 4, {1, 1, 0, -1}), rp(Field::R, 5, {2, 1}),
        rp(Field::R, 6, {3, 2, -1}), rp(Field::R, 4, {2, 0}), rp(Field::H, 2, {2, 1}),
        rp(Field::H, 3, {3, 1, 1})};
    for (const auto& lam : cases) {
      for (const auto& p : testing::draws<GTPattern>(200, 23, [&](Rng& r) { return sample_uniform_spectral(lam, r); }))
        CHECK(gt_contains(lam, p, 1e-9));
    }
    for (const auto& lam : {rp(Field::C, 3, {2, 1, 0}), rp(Field::R, 5, {2, 1}), rp(Field::H, 2, {2, 1})}) {
      Rng rng(24);
      for (const auto& p : sample_uniform_walk_chain(lam, rng, 500)) CHECK(gt_contains(lam, p, 1e-9));
    }
  }

  TEST_CASE("spectral sampler: uniform marginals") {
    // C2 (1,0): x^(1) is uniform on [0,1]
    const auto l2 = rp(Field::C, 2, {1, 0});
    auto xs = testing::draws<double>(4000, 25, [&](Rng& r) { return sample_uniform_spectral(l2, r).levels[0][0]; });
    CHECK(ks_one_sample(xs, [](double v) { return std::clamp(v, 0.0, 1.0); }).p_value > 0.01);

    const auto l3 = rp(Field::C, 3, {2, 1, 0});
    auto ys = testing::draws<double>(4000, 26, [&](Rng& r) { return sample_uniform_spectral(l3, r).levels[1][0]; });
    CHECK(ks_one_sample(ys, top_marginal_cdf).p_value > 0.01);
  }

  TEST_CASE("hit-and-run sampler") {
    const auto lam = rp(Field::C, 3, {2, 1, 0});
    Rng rng(27);
    std::vector<double> xs;
    for (const auto& p : sample_uniform_walk_chain(lam, rng, 10000)) xs.push_back(p.levels[1][0]);
    CHECK(ks_one_sample(xs, top_marginal_cdf).statistic < 0.02);

    GTWalker w(lam);
    CHECK(w.dimension() == 3);
    CHECK(w.burn_in() == 150);
    CHECK_THROWS_AS(GTWalker(rp(Field::C, 3, {1, 1, 0})), DegenerateInput);
    CHECK_THROWS_AS(GTWalker(rp(Field::H, 2, {1, 0})), DegenerateInput);
  }

  TEST_CASE("mu_lambda density examples") {
    const auto l3 = rp(Field::C, 3, {2, 1, 0});
    CHECK(mu_lambda_density(l3, {1.5, 0.5}) == doctest::Approx(1.0));
    CHECK(mu_lambda_density(l3, {1.2, 0.9}) == doctest::Approx(0.3));
    CHECK(mu_lambda_density(l3, {2.5, 0.5}) == 0.0);
    CHECK(mu_lambda_density(rp(Field::C, 2, {1, 0}), {0.3}) == doctest::Approx(1.0));
    // rank one
    CHECK(mu_lambda_density(rp(Field::C, 3, {2, 0, 0}), {1, 0}) == doctest::Approx(0.5));
    CHECK(mu_lambda_density(rp(Field::C, 3, {2, 0, 0}), {1, 0.1}) == 0.0);
    CHECK_THROWS_AS(mu_lambda_density(rp(Field::C, 1, {1}), {}), DomainError);
    CHECK_THROWS_AS(mu_lambda_density(l3, {1.0}), DomainError);
    CHECK_THROWS_AS(mu_lambda_density(rp(Field::C, 3, {1, 1, 0}), {1, 0.5}), UnsupportedCase);
  }

  TEST_CASE("mu_lambda density integrates to one") {
    const auto c3 = rp(Field::C, 3, {2, 1, 0});
    CHECK(integrate2([&](double a, double b) { return mu_lambda_density(c3, {a, b}); }, 0, 2, 0, 2, 400, 400) ==
          doctest::Approx(1.0).epsilon(5e-3));
    // R5: beta is a D2 point with a signed last coordinate
    const auto r5 = rp(Field::R, 5, {3, 1});
    CHECK(integrate2([&](double a, double b) { return mu_lambda_density(r5, {a, b}); }, 0, 3, -3, 3, 600, 1200) ==
          doctest::Approx(1.0).epsilon(5e-3));
    const auto h2 = rp(Field::H, 2, {2, 1});
    CHECK(integrate1([&](double a) { return mu_lambda_density(h2, {a}); }, 0, 2, 20000) ==
          doctest::Approx(1.0).epsilon(1e-6));
    for (auto f : {Field::C, Field::H}) {
      const auto r1 = rp(f, 3, {2, 0, 0});
      CHECK(integrate1([&](double a) { return mu_lambda_density(r1, {a, 0}); }, 0, 2, 20000) ==
            doctest::Approx(1.0).epsilon(1e-6));
    }
    const auto r1 = rp(Field::R, 3, {2});
    CHECK(integrate1([&](double a) { return mu_lambda_density(r1, {a}); }, -2, 2, 20000) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("mu_lambda matches the spectral sampler") {
    // H2 (2,1): x^(1) has a single coordinate
    const auto h2 = rp(Field::H, 2, {2, 1});
    auto xs = testing::draws<double>(4000, 28, [&](Rng& r) { return sample_uniform_spectral(h2, r).levels[1][0]; });
    auto cdf = [&](double x) {
      if (x <= 0) return 0.0;
      if (x >= 2) return 1.0;
      return integrate1([&](double a) { return mu_lambda_density(h2, {a}); }, 0, x, 2000);
    };
    CHECK(ks_one_sample(xs, cdf).p_value > 0.01);
  }
}
