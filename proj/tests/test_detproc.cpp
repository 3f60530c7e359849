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

#include "orbit/detproc.hpp"
#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"
#include "orbit/perturbation.hpp"
#include "orbit/stats.hpp"
#include "support.hpp"

using namespace orbit;

namespace {

double integrate1(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

// over the ordered region a > b of [lo, hi]^2
double integrate_ordered(const std::function<double(double, double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = lo + (i + 0.5) * h, b = lo + (j + 0.5) * h;
      if (a > b) s += f(a, b);
    }
  return s * h * h;
}

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

}  // namespace

TEST_SUITE("detproc") {
  TEST_CASE("orthonormal bases") {
    for (const auto& p : {PolynomialBasis::hermite(), PolynomialBasis::laguerre(0.0), PolynomialBasis::laguerre(1.5)}) {
      const double lo = p.support_lo() == 0.0 ? 0.0 : -14.0;
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k <= j; ++k) {
          const double g = integrate1([&](double x) { return p(j, x) * p(k, x) * p.weight(x); }, lo, 50.0, 40000);
          CHECK(g == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-6).scale(1.0));
        }
      // three-term recurrence
      for (double x : {-1.3, 0.4, 2.7}) {
        if (x < p.support_lo()) continue;
        const auto v = p.values(6, x);
        for (int k = 1; k < 6; ++k)
          CHECK(x * v[k] == doctest::Approx(p.b(k + 1) * v[k + 1] + p.a(k) * v[k] + p.b(k) * v[k - 1]));
      }
    }
    const auto h = PolynomialBasis::hermite();
    CHECK(h(0, 0.3) == doctest::Approx(std::pow(2 * M_PI, -0.25)));
    // derivative by central differences
    for (int k = 1; k < 6; ++k) {
      const double e = 1e-5;
      CHECK(h.derivative(k, 1, 0.7) == doctest::Approx((h(k, 0.7 + e) - h(k, 0.7 - e)) / (2 * e)).epsilon(1e-6));
    }
    CHECK(h.derivative(3, 4, 1.1) == doctest::Approx(0.0).scale(1.0));
    const auto m = PolynomialBasis::monomial();
    CHECK(m(3, 2.0) == 8.0);
    CHECK_THROWS_AS(PolynomialBasis::laguerre(-1.0), DomainError);
  }

  TEST_CASE("interlacing determinant") {
    CHECK(interlace_indicator_det({3, 1}, {2}) == 1);
    CHECK(interlace_indicator_det({3, 1}, {0.5}) == 0);
    CHECK(interlace_indicator_det({3, 1}, {2, 0}) == 1);
    CHECK(interlace_indicator_det({3, 1}, {2, 1.5}) == 0);
    CHECK_THROWS_AS(interlace_indicator_det({3, 1}, {1}), DegenerateInput);
    CHECK_THROWS_AS(interlace_indicator_det({3, 3}, {2}), DegenerateInput);
    CHECK_THROWS_AS(interlace_indicator_det({1, 3}, {2}), DomainError);
    CHECK_THROWS_AS(interlace_indicator_det({3, 1}, {2, 1, 0}), DomainError);
    Rng rng(51);
    int hits = 0;
    for (int t = 0; t < 5000; ++t) {
      const int n = 1 + static_cast<int>(rng.uniform() * 4);
      std::vector<double> x(n), y(n - (rng.uniform() < 0.5 ? 1 : 0));
      for (auto& v : x) v = rng.uniform();
      for (auto& v : y) v = rng.uniform();
      std::sort(x.begin(), x.end(), std::greater<double>());
      std::sort(y.begin(), y.end(), std::greater<double>());
      const bool direct = interlaces_direct(x, y);
      hits += direct;
      CHECK(interlace_indicator_det(x, y) == (direct ? 1 : 0));
    }
    CHECK(hits > 100);
  }

  TEST_CASE("Cauchy-Binet") {
    const Measure m{0.0, 1.0, {}};
    std::vector<Integrand> phi = {[](double x) { return 1.0 + x; }, [](double x) { return x * x; },
                                  [](double x) { return std::sin(3 * x); }};
    std::vector<Integrand> psi = {[](double x) { return std::exp(x); }, [](double x) { return 1.0 - x; },
                                  [](double x) { return x * x * x; }};
    for (int n = 1; n <= 3; ++n) {
      const auto r = cauchy_binet({phi.begin(), phi.begin() + n}, {psi.begin(), psi.begin() + n}, m);
      CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-7));
    }
    CHECK(cauchy_binet({phi[0]}, {psi[0]}, m).lhs == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    const Measure g{-10.0, 10.0, [](double x) { return std::exp(-x * x / 2); }};
    const auto r = cauchy_binet({phi[0], phi[1]}, {psi[1], psi[2]}, g);
    CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-7));
    std::vector<Integrand> four(4, phi[0]);
    CHECK_THROWS_AS(cauchy_binet(four, four, m), InstanceTooLarge);
  }

  TEST_CASE("GUE minor kernels") {
    for (int n = 1; n <= 4; ++n) {
      const auto k = gue_minor_kernel(FieldContext::make(Field::C, n));
      for (int r = 1; r <= n; ++r) {
        CHECK(k.expected_count(r) == r);
        CHECK(level_count(k, r) == doctest::Approx(double(r)).epsilon(1e-8));
      }
    }
    const auto r5 = gue_minor_kernel(FieldContext::make(Field::R, 5));
    for (int r = 1; r <= 5; ++r) CHECK(level_count(r5, r) == doctest::Approx(double(r / 2)).epsilon(1e-8).scale(1.0));
    CHECK(r5.half_line());
    CHECK_THROWS_AS(r5.expected_count(6), DomainError);

    // top level against the Gaussian ensemble density
    for (int n = 1; n <= 3; ++n) {
      const auto k = gue_minor_kernel(FieldContext::make(Field::C, n));
      const std::vector<double> base = {1.1, -0.2, -0.9};
      const std::vector<double> x(base.begin(), base.begin() + n);
      double vdm = 1.0, gauss = 0.0;
      for (int i = 0; i < n; ++i) {
        gauss += x[i] * x[i];
        for (int j = i + 1; j < n; ++j) vdm *= (x[i] - x[j]) * (x[i] - x[j]);
      }
      double z = std::pow(2 * M_PI, n / 2.0) / factorial(n);
      for (int j = 1; j <= n; ++j) z *= factorial(j);
      CHECK(top_level_density(k, x) == doctest::Approx(vdm * std::exp(-gauss / 2) / z).epsilon(1e-9));
    }
    const auto c2 = gue_minor_kernel(FieldContext::make(Field::C, 2));
    CHECK(top_level_density(c2, {0.2, 0.5}) == 0.0);
    CHECK_THROWS_AS(top_level_density(c2, {0.2}), DomainError);
    CHECK(integrate_ordered([&](double a, double b) { return top_level_density(r5, {a, b}); }, 0, 9, 600) ==
          doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("quaternionic levels are odd real levels") {
    for (int n = 1; n <= 3; ++n) {
      const auto h = gue_minor_kernel(FieldContext::make(Field::H, n));
      const auto r = gue_minor_kernel(FieldContext::make(Field::R, 2 * n + 1));
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          for (double x : {0.3, 1.2})
            for (double y : {0.5, 2.0})
              CHECK(std::fabs(h(a, x, b, y) - r(2 * a + 1, x, 2 * b + 1, y)) < 1e-10 * (1e-3 + std::fabs(h(a, x, b, y))));
    }
  }

  TEST_CASE("explicit real kernel") {
    const auto g = guer_kernel(5);
    const auto r = gue_minor_kernel(FieldContext::make(Field::R, 5));
    for (int a = 1; a <= 5; ++a) {
      CHECK(level_count(g, a) == doctest::Approx(double(a / 2)).epsilon(1e-8).scale(1.0));
      for (int b = 1; b <= 5; ++b)
        for (double x : {0.2, 1.4})
          for (double y : {0.6, 2.2}) CHECK(std::fabs(g(a, x, b, y) - r(a, x, b, y)) < 1e-9 * (1e-3 + std::fabs(r(a, x, b, y))));
    }
    // the other indicator changes the kernel
    const auto d = guer_kernel(5, IndicatorConvention::derivation);
    double diff = 0.0;
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 5; ++b) diff = std::max(diff, std::fabs(d(a, 0.7, b, 1.3) - g(a, 0.7, b, 1.3)));
    CHECK(diff > 1e-3);
    CHECK_THROWS_AS(guer_kernel(0), DomainError);
  }

  TEST_CASE("rectangular kernels") {
    const auto c2 = RadialPoint(FieldContext::make(Field::C, 2), {2, 1});
    const auto k = rectangular_kernel(c2, 3);
    for (int r = 1; r <= 3; ++r) CHECK(level_count(k, r) == doctest::Approx(double(k.expected_count(r))).epsilon(1e-8));
    CHECK_FALSE(k.half_line());
    CHECK(rectangular_kernel(RadialPoint(FieldContext::make(Field::H, 2), {2, 1}), 2).half_line());
    CHECK_THROWS_AS(rectangular_kernel(RadialPoint(FieldContext::make(Field::R, 4), {2, 1}), 2), UnsupportedCase);
    CHECK_THROWS_AS(rectangular_kernel(RadialPoint(FieldContext::make(Field::C, 2), {1, 1}), 2), DomainError);
    CHECK_THROWS_AS(rectangular_kernel(c2, 0), DomainError);

    // level-3 one-point function against the chain
    const BinGrid grid{{3}, {1.0, 2.0, 3.0, 4.5, 7.0}};
    Rng rng(52);
    CorrelationAccumulator acc(grid);
    for (int i = 0; i < 10000; ++i) {
      const auto chain = lue_chain(c2.ctx, 3, rng, c2);
      Configuration conf;
      for (double v : chain[2].coords) conf.push_back({3, v});
      acc.add(conf);
    }
    const auto est = acc.result();
    for (int c = 0; c < grid.cells(); ++c)
      CHECK(std::fabs(est.rho1[c] - kernel_rho1_cell(k, grid, c)) < 4 * est.rho1_se[c] + 1e-9);

    // one step from (1,0): rho_1 is the sum of the two marginals of nu_lambda
    const auto c10 = RadialPoint(FieldContext::make(Field::C, 2), {1, 0});
    const auto k1 = rectangular_kernel(c10, 1);
    for (double x : {0.3, 0.8}) {
      const double m2 = integrate1([&](double a) { return nu_lambda_density(c10, {a, x}); }, 1, 41, 40000);
      CHECK(k1(1, x, 1, x) == doctest::Approx(m2).epsilon(1e-4));
    }
    for (double x : {1.5, 3.0}) {
      const double m1 = integrate1([&](double b) { return nu_lambda_density(c10, {x, b}); }, 0, 1, 4000);
      CHECK(k1(1, x, 1, x) == doctest::Approx(m1).epsilon(1e-4));
    }
  }

  TEST_CASE("correlation estimates") {
    // three iid uniform points
    const BinGrid grid{{1}, {0.0, 0.25, 0.5, 1.0}};
    const auto confs = testing::draws<Configuration>(20000, 53, [](Rng& r) {
      return Configuration{{1, r.uniform()}, {1, r.uniform()}, {1, r.uniform()}};
    });
    const auto est = estimate_correlations(confs, grid);
    for (int c = 0; c < grid.cells(); ++c) CHECK(std::fabs(est.rho1[c] - 3.0) < 4 * est.rho1_se[c]);
    for (int a = 0; a < grid.cells(); ++a)
      for (int b = 0; b < grid.cells(); ++b) CHECK(std::fabs(est.rho2(a, b) - 6.0) < 4 * est.rho2_se(a, b));
    CHECK_THROWS_AS(estimate_correlations({confs.begin(), confs.begin() + 10}, grid), DomainError);

    // chunks merge to the same estimate
    CorrelationAccumulator a(grid), b(grid), all(grid);
    for (std::size_t i = 0; i < confs.size(); ++i) {
      (i % 2 ? a : b).add(confs[i]);
      all.add(confs[i]);
    }
    a.merge(b);
    CHECK(a.samples() == all.samples());
    const auto ea = a.result(), eall = all.result();
    for (int c = 0; c < grid.cells(); ++c) CHECK(ea.rho1[c] == doctest::Approx(eall.rho1[c]));

    // GUE one-point function on all levels
    const auto ctx = FieldContext::make(Field::C, 3);
    const auto k = gue_minor_kernel(ctx);
    const BinGrid g{{1, 2, 3}, {-4, -1.5, -0.5, 0.5, 1.5, 4}};
    const auto samples = testing::draws<Configuration>(20000, 54, [&](Rng& r) {
      return minor_configuration(sample_gaussian_hermitian(ctx, r));
    });
    const auto e = estimate_correlations(samples, g);
    for (int c = 0; c < g.cells(); ++c) CHECK(std::fabs(e.rho1[c] - kernel_rho1_cell(k, g, c)) < 4 * e.rho1_se[c]);
  }

  TEST_CASE("kernel positivity") {
    std::vector<CorrelationKernel> ks = {gue_minor_kernel(FieldContext::make(Field::C, 3)),
                                         gue_minor_kernel(FieldContext::make(Field::R, 5)),
                                         rectangular_kernel(RadialPoint(FieldContext::make(Field::H, 2), {2, 1}), 3)};
    Rng rng(55);
    for (const auto& k : ks)
      for (int r : k.levels())
        for (int t = 0; t < 50; ++t) {
          const double x = k.half_line() ? 4 * rng.uniform() : 6 * rng.uniform() - 3;
          const double y = k.half_line() ? 4 * rng.uniform() : 6 * rng.uniform() - 3;
          CHECK(k(r, x, r, x) >= -1e-12);
          CHECK(k(r, x, r, x) * k(r, y, r, y) - k(r, x, r, y) * k(r, y, r, x) >= -1e-10);
        }
  }

  TEST_CASE("general Gram path") {
    const auto ctx = FieldContext::make(Field::C, 3);
    auto psi = gue_psi(ctx);
    // an invertible mix of psi spans the same space and gives the same process
    std::vector<Integrand> mixed = {[=](double x) { return psi[0](x) + 2 * psi[2](x); },
                                    [=](double x) { return psi[1](x) - psi[0](x); },
                                    [=](double x) { return 0.5 * psi[2](x); }};
    const auto ref = gue_minor_kernel(ctx);
    const auto k = triangular_kernel(ctx, mixed);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        for (double x : {-1.0, 0.3})
          for (double y : {-0.4, 1.7}) CHECK(std::fabs(k(a, x, b, y) - ref(a, x, b, y)) < 1e-7 * (1e-3 + std::fabs(ref(a, x, b, y))));
    std::vector<Integrand> dependent = {psi[0], psi[1], [=](double x) { return psi[0](x) - psi[1](x); }};
    CHECK_THROWS_AS(triangular_kernel(ctx, dependent), IllConditioned);
    CHECK_THROWS_AS(triangular_kernel(ctx, {psi[0]}), DomainError);
  }
}
