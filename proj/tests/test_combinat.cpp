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

#include <cmath>
#include <numeric>

#include "orbit/combinat.hpp"
#include "orbit/error.hpp"
#include "orbit/weyl.hpp"

using namespace orbit;

namespace {

FieldContext fc(Field f, int n) { return FieldContext::make(f, n); }

// every integral dominant weight of ctx with entries bounded by top
std::vector<IntWeight> dominant_weights(const FieldContext& ctx, int top) {
  const int r = ctx.field == Field::R ? ctx.n_tilde : ctx.n;
  const bool a_type = ctx.field == Field::C;
  const bool signed_last = ctx.field == Field::R && ctx.n % 2 == 0;
  std::vector<IntWeight> out;
  IntWeight w(r, 0);
  std::function<void(int, long long)> rec = [&](int i, long long cap) {
    if (i == r) {
      out.push_back(w);
      if (signed_last && w[r - 1] != 0) {
        w[r - 1] = -w[r - 1];
        out.push_back(w);
        w[r - 1] = -w[r - 1];
      }
      return;
    }
    const long long lo = a_type ? -top : 0;
    for (long long v = lo; v <= cap; ++v) {
      w[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, top);
  return out;
}

// level of the pattern that carries the U_{n-1} weight
int sub_level_index(const FieldContext& ctx) { return ctx.field == Field::H ? 2 * ctx.n - 3 : ctx.n - 2; }

IntWeight to_int(const std::vector<double>& v) {
  IntWeight w;
  for (double x : v) w.push_back(std::llround(x));
  return w;
}

}  // namespace

TEST_SUITE("combinat") {
  TEST_CASE("counting examples") {
    CHECK(gt_count(fc(Field::C, 3), {2, 1, 0}) == 8);
    CHECK(gt_count(fc(Field::C, 3), {0, 0, 0}) == 1);
    for (int m = 0; m <= 6; ++m) CHECK(gt_count(fc(Field::H, 1), {m}) == m + 1);
    CHECK(gt_count(fc(Field::R, 3), {1}) == 3);
    CHECK(gt_count(fc(Field::R, 7), {1, 0, 0}) == 7);
    CHECK(gt_enumerate_visit(fc(Field::C, 3), {2, 1, 0}) == 8);
    CHECK(gt_enumerate(fc(Field::C, 2), {1, 0}).size() == 2);
    CHECK_THROWS_AS(gt_enumerate(fc(Field::C, 3), {2, 1, 0}, 5), InstanceTooLarge);
    CHECK_THROWS_AS(gt_count(fc(Field::C, 2), {0, 1}), DomainError);
    // every enumerated pattern lies in the polytope
    for (const auto& p : gt_enumerate(fc(Field::H, 2), {2, 1})) CHECK(p.top() == std::vector<double>{2, 1});
  }

  TEST_CASE("product formula equals Weyl dimension") {
    for (auto [f, n] : std::vector<std::pair<Field, int>>{{Field::C, 1}, {Field::C, 2}, {Field::C, 3}, {Field::H, 1},
                                                          {Field::H, 2}, {Field::H, 3}, {Field::R, 2}, {Field::R, 3},
                                                          {Field::R, 4}, {Field::R, 5}, {Field::R, 6}, {Field::R, 7}}) {
      const auto ctx = fc(f, n);
      for (const auto& w : dominant_weights(ctx, 6)) {
        CHECK(gt_count(ctx, w) == weyl_dim(ctx, w));
        bool small = true;
        for (auto v : w) small = small && std::llabs(v) <= 3;
        if (small) CHECK(BigInt(gt_enumerate_visit(ctx, w)) == gt_count(ctx, w));
      }
    }
  }

  TEST_CASE("tensor products with a rank-one weight") {
    // Pieri: (1,0) x (1,0) = (2,0) + (1,1)
    const auto t = tensor_rank_one(fc(Field::C, 2), {1, 0}, 1);
    CHECK(t.size() == 2);
    CHECK(t.at({2, 0}) == 1);
    CHECK(t.at({1, 1}) == 1);
    // standard x standard for Sp(4): (2,0) + (1,1) + (0,0)
    const auto s = tensor_rank_one(fc(Field::H, 2), {1, 0}, 1);
    CHECK(s.size() == 3);
    CHECK(s.count({0, 0}) == 1);
    for (auto [f, n] : std::vector<std::pair<Field, int>>{{Field::C, 3}, {Field::H, 2}, {Field::R, 5}, {Field::R, 6}}) {
      const auto ctx = fc(f, n);
      IntWeight zero(f == Field::R ? ctx.n_tilde : n, 0);
      IntWeight lam = zero;
      lam[0] = 2;
      lam[1] = 1;
      const auto id = tensor_rank_one(ctx, lam, 0);
      CHECK(id.size() == 1);
      CHECK(id.at(lam) == 1);
      for (long long m = 1; m <= 3; ++m) {
        IntWeight g = zero;
        g[0] = m;
        CHECK(table_dimension(ctx, tensor_rank_one(ctx, lam, m)) == weyl_dim(ctx, lam) * weyl_dim(ctx, g));
      }
    }
    CHECK_THROWS_AS(tensor_rank_one(fc(Field::R, 2), {1}, 1), UnsupportedCase);
    CHECK_THROWS_AS(tensor_rank_one(fc(Field::C, 2), {1, 0}, -1), DomainError);
  }

  TEST_CASE("branching against the pattern enumeration") {
    for (auto [f, n] : std::vector<std::pair<Field, int>>{{Field::C, 2}, {Field::C, 3}, {Field::C, 4}, {Field::H, 2},
                                                          {Field::H, 3}, {Field::R, 3}, {Field::R, 4}, {Field::R, 5},
                                                          {Field::R, 6}}) {
      const auto ctx = fc(f, n);
      const auto sub = sub_context(ctx);
      for (const auto& lam : dominant_weights(ctx, 3)) {
        std::map<IntWeight, long long> seen;
        gt_enumerate_visit(ctx, lam, [&](const GTPattern& p) { ++seen[to_int(p.levels[sub_level_index(ctx)])]; });
        const auto b = branch(ctx, lam);
        CHECK(b.size() == seen.size());
        for (const auto& [beta, cnt] : seen) {
          REQUIRE(b.count(beta) == 1);
          CHECK(b.at(beta) * gt_count(sub, beta) == cnt);
        }
        CHECK(table_dimension(sub, b) == weyl_dim(ctx, lam));
      }
    }
  }

  TEST_CASE("characters restrict by the branching rule") {
    for (auto [f, n] : std::vector<std::pair<Field, int>>{{Field::C, 3}, {Field::H, 2}, {Field::R, 5}, {Field::R, 6}}) {
      const auto ctx = fc(f, n);
      const auto sub = sub_context(ctx);
      const int rs = sub.field == Field::R ? sub.n_tilde : sub.n;
      std::vector<double> z(rs);
      for (int i = 0; i < rs; ++i) z[i] = 0.37 + 0.61 * i;
      IntWeight lam(f == Field::R ? ctx.n_tilde : n, 0);
      lam[0] = 3;
      lam[1] = 1;
      std::complex<double> sum = 0;
      for (const auto& [beta, mult] : branch(ctx, lam)) sum += mult.convert_to<double>() * character(sub, beta, z);
      const auto full = character(ctx, lam, embed_sub_torus(ctx, z));
      CHECK(std::abs(sum - full) < 1e-8 * weyl_dim(ctx, lam).convert_to<double>());
    }
    CHECK(sub_context(fc(Field::R, 5)).n == 4);
    CHECK(embed_sub_torus(fc(Field::R, 5), {0.3, 0.2}).size() == 2);
    CHECK(embed_sub_torus(fc(Field::R, 4), {0.3}).size() == 2);
  }

  TEST_CASE("semiclassical schedules") {
    SemiclassicalSchedule s;
    s.ctx = fc(Field::C, 3);
    s.lambda = {1.0, 0.5, 0.0};
    CHECK(s.approximant(1) == IntWeight{1, 1, 0});
    CHECK(s.approximant(10) == IntWeight{10, 5, 0});
    CHECK(s.approximant(3) == IntWeight{3, 2, 0});
    for (int k : {1, 4, 9}) {
      const auto atoms = semiclassical_measure(s, k);
      double total = 0;
      for (const auto& a : atoms) {
        total += a.second;
        CHECK(a.second > 0);
        CHECK(a.first.size() == 2);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SemiclassicalSchedule t;
    t.ctx = fc(Field::H, 2);
    t.kind = SemiclassicalSchedule::Kind::tensor;
    t.lambda = {1.0, 0.4};
    t.theta = 0.5;
    CHECK(t.theta_approximant(10) == 5);
    double total = 0;
    for (const auto& a : semiclassical_measure(t, 6)) total += a.second;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // exact branching distance shrinks with k
    SemiclassicalSchedule u;
    u.ctx = fc(Field::C, 2);
    u.lambda = {1.0, 0.0};
    const double d10 = semiclassical_distance(u, 10), d100 = semiclassical_distance(u, 100);
    CHECK(d100 < d10);
    // mu_k is uniform on {0, 1/k, ..., 1}; W1 to U[0,1] is the integral of |F_k(x) - x|
    for (int k : {10, 100}) {
      double w1 = 0;
      const int cells = 200000;
      for (int i = 0; i < cells; ++i) {
        const double x = (i + 0.5) / cells;
        w1 += std::fabs((std::floor(k * x) + 1) / (k + 1) - x) / cells;
      }
      CHECK((k == 10 ? d10 : d100) == doctest::Approx(w1).epsilon(1e-4));
    }
  }
}
