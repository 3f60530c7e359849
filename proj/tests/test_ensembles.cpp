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

#include <Eigen/LU>
#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"
#include "orbit/gtpolytope.hpp"
#include "orbit/stats.hpp"
#include "support.hpp"

using namespace orbit;
using orbit::testing::draws;

namespace {

const cplx I(0.0, 1.0);

std::vector<FieldContext> small_contexts() {
  std::vector<FieldContext> v;
  for (Field f : {Field::R, Field::C, Field::H})
    for (int n = 1; n <= 4; ++n)
      if (!(f == Field::R && n == 1)) v.push_back(FieldContext::make(f, n));
  return v;
}

std::vector<double> random_chamber_point(const FieldContext& ctx, Rng& rng) {
  const int len = ctx.field == Field::R ? ctx.n_tilde : ctx.n;
  std::vector<double> x(len);
  for (auto& v : x) v = ctx.chamber == Chamber::A ? 4 * rng.uniform() - 2 : 3 * rng.uniform();
  std::sort(x.begin(), x.end(), std::greater<double>());
  if (ctx.chamber == Chamber::D && rng.uniform() < 0.5) x.back() = -x.back();
  return x;
}

}  // namespace

TEST_SUITE("ensembles") {
  TEST_CASE("field constants follow (F, n)") {
    for (int n = 1; n <= 7; ++n) {
      const auto c = FieldContext::make(Field::C, n);
      CHECK(c.c == 1);
      CHECK(c.n_tilde == n);
      CHECK(c.chamber == Chamber::A);
      const auto h = FieldContext::make(Field::H, n);
      CHECK(h.c == 2);
      CHECK(h.n_tilde == n);
      CHECK(h.chamber == Chamber::C);
      const auto r = FieldContext::make(Field::R, n);
      CHECK(r.c == 1);
      CHECK(r.n_tilde == n / 2);
      CHECK(r.epsilon == n % 2);
      CHECK(r.chamber == (n % 2 ? Chamber::B : Chamber::D));
    }
    CHECK_THROWS_AS(FieldContext::make(Field::C, 0), DomainError);
  }

  TEST_CASE("1x1 complex Gaussian is a real normal") {
    const auto ctx = FieldContext::make(Field::C, 1);
    Rng rng(3);
    Accumulator a;
    for (int i = 0; i < 20000; ++i) {
      const auto m = sample_gaussian_hermitian(ctx, rng);
      REQUIRE(m.data.rows() == 1);
      CHECK(m.data(0, 0).imag() == 0.0);
      a.add(m.data(0, 0).real() * m.data(0, 0).real());
    }
    CHECK(std::fabs(a.mean - 1.0) < 3 * a.se());
  }

  TEST_CASE("real 2x2 Gaussian is i times an antisymmetric matrix") {
    const auto ctx = FieldContext::make(Field::R, 2);
    Rng rng(4);
    const auto m = sample_gaussian_hermitian(ctx, rng);
    CHECK(m.data(0, 0) == cplx(0, 0));
    CHECK(m.data(1, 1) == cplx(0, 0));
    CHECK(m.data(0, 1).real() == 0.0);
    CHECK(m.data(0, 1) == -m.data(1, 0));
    CHECK(structure_defect(m) < 1e-14);
  }

  TEST_CASE("Gaussian second moment equals the real dimension") {
    for (const auto& ctx : small_contexts()) {
      CAPTURE(to_string(ctx.field));
      CAPTURE(ctx.n);
      Rng rng(11 + ctx.n);
      Accumulator a;
      for (int i = 0; i < 20000; ++i) {
        const auto m = sample_gaussian_hermitian(ctx, rng);
        a.add(hermitian_inner(m, m));
      }
      CHECK(std::fabs(a.mean - dim_hermitian(ctx)) < 3 * a.se());
    }
    CHECK(dim_hermitian(FieldContext::make(Field::H, 1)) == 3);
    CHECK(dim_hermitian(FieldContext::make(Field::R, 2)) == 1);
    CHECK(dim_hermitian(FieldContext::make(Field::C, 3)) == 9);
  }

  TEST_CASE("rectangular Gaussian moments") {
    struct Case {
      Field f;
      int n, k, dim;
    };
    for (const auto& cs : {Case{Field::R, 1, 1, 1}, Case{Field::C, 1, 1, 2}, Case{Field::H, 2, 3, 24},
                           Case{Field::R, 3, 2, 6}}) {
      const auto ctx = FieldContext::make(cs.f, cs.n);
      CHECK(dim_rectangular(ctx, cs.k) == cs.dim);
      Rng rng(21);
      Accumulator a;
      for (int i = 0; i < 20000; ++i) {
        const auto m = sample_gaussian_rectangular(ctx, cs.k, rng);
        CHECK(m.kind == MatrixKind::rectangular_M);
        a.add(rectangular_inner(m, m));
      }
      CHECK(std::fabs(a.mean - cs.dim) < 3 * a.se());
    }
    Rng rng(1);
    CHECK_THROWS_AS(sample_gaussian_rectangular(FieldContext::make(Field::C, 2), 0, rng), DomainError);
  }

  TEST_CASE("Haar samples are structured unitaries") {
    for (const auto& ctx : small_contexts()) {
      Rng rng(31 + ctx.n);
      for (int t = 0; t < 20; ++t) {
        const auto u = sample_haar_unitary(ctx, rng);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.data.rows(), u.data.cols());
        CHECK((u.data * u.data.adjoint() - id).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(structure_defect(u) < 1e-10);
        if (ctx.field == Field::R) CHECK(std::fabs(u.data.determinant() - cplx(1, 0)) < 1e-10);
      }
    }
  }

  TEST_CASE("Haar columns are uniform on the sphere") {
    {
      // first coordinate of a uniform point of S^2 is uniform on [-1, 1]
      const auto ctx = FieldContext::make(Field::R, 3);
      auto x = draws<double>(20000, 41, [&](Rng& r) { return sample_haar_unitary(ctx, r).data(0, 0).real(); });
      const auto t = ks_one_sample(x, [](double v) { return std::clamp((v + 1) / 2, 0.0, 1.0); });
      CHECK(t.p_value > 0.01);
    }
    {
      // |u_1|^2 of a uniform point of the unit sphere of C^3 is Beta(1, 2)
      const auto ctx = FieldContext::make(Field::C, 3);
      auto x = draws<double>(20000, 42, [&](Rng& r) { return std::norm(sample_haar_unitary(ctx, r).data(0, 0)); });
      const auto t = ks_one_sample(x, [](double v) { return v <= 0 ? 0.0 : v >= 1 ? 1.0 : boost::math::ibeta(1.0, 2.0, v); });
      CHECK(t.p_value > 0.01);
    }
  }

  TEST_CASE("radial part of omega") {
    const RadialPoint l3(FieldContext::make(Field::C, 3), {2, 1, 0});
    const auto r3 = radial_part(omega(l3));
    for (int i = 0; i < 3; ++i) CHECK(r3[i] == doctest::Approx(l3[i]).epsilon(1e-12));
    const RadialPoint d(FieldContext::make(Field::R, 2), {-1.5});
    CHECK(radial_part(omega(d))[0] == doctest::Approx(-1.5).epsilon(1e-12));
  }

  TEST_CASE("round trip and conjugation invariance") {
    Rng rng(51);
    for (const auto& ctx : small_contexts()) {
      for (int t = 0; t < 10; ++t) {
        const RadialPoint lam(ctx, random_chamber_point(ctx, rng));
        const auto m = omega(lam);
        const auto back = radial_part(m);
        const auto conj = radial_part(conjugate(sample_haar_unitary(ctx, rng), m));
        for (int i = 0; i < lam.size(); ++i) {
          CHECK(std::fabs(back[i] - lam[i]) < 1e-10);
          CHECK(std::fabs(conj[i] - lam[i]) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("omega block shapes") {
    const auto z = omega(RadialPoint(FieldContext::make(Field::H, 3), {0, 0, 0}));
    CHECK(z.data.cwiseAbs().maxCoeff() == 0.0);

    const double a = 1.7;
    const auto r = omega(RadialPoint(FieldContext::make(Field::R, 3), {a}));
    REQUIRE(r.data.rows() == 3);
    CHECK(r.data(0, 1) == I * a);
    CHECK(r.data(1, 0) == -I * a);
    double rest = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!((i == 0 && j == 1) || (i == 1 && j == 0))) rest += std::abs(r.data(i, j));
    CHECK(rest == 0.0);

    const auto h = omega(RadialPoint(FieldContext::make(Field::H, 2), {2.0, 0.5}));
    Eigen::VectorXcd diag(4);
    diag << 2.0, -2.0, 0.5, -0.5;
    CHECK((h.data - Eigen::MatrixXcd(diag.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("minors") {
    const auto ctx = FieldContext::make(Field::C, 3);
    Rng rng(61);
    const auto m = sample_gaussian_hermitian(ctx, rng);
    CHECK((minor(m, 3).data - m.data).cwiseAbs().maxCoeff() == 0.0);
    const auto d = minor(omega(RadialPoint(ctx, {3, 2, 1})), 2);
    CHECK((d.data - omega(RadialPoint(FieldContext::make(Field::C, 2), {3, 2})).data).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& c : small_contexts()) {
      const auto g = sample_gaussian_hermitian(c, rng);
      for (int k = 1; k <= c.n; ++k) {
        const auto mk = minor(g, k);
        CHECK(mk.kind == MatrixKind::hermitian_P);
        CHECK(structure_defect(mk) < 1e-14);
      }
    }
    CHECK_THROWS_AS(minor(m, 4), DomainError);
    CHECK_THROWS_AS(minor(m, 0), DomainError);
  }

  TEST_CASE("minor process of a diagonal matrix truncates") {
    const RadialPoint lam(FieldContext::make(Field::C, 4), {4, 3, 1, -1});
    const auto p = minor_process(omega(lam));
    for (int k = 1; k <= 4; ++k)
      for (int i = 0; i < k; ++i) CHECK(p.levels[k - 1][i] == doctest::Approx(lam[i]).epsilon(1e-12));
  }

  TEST_CASE("minor processes interlace") {
    Rng rng(71);
    for (const auto& ctx : small_contexts()) {
      for (int t = 0; t < 20; ++t) {
        const auto m = sample_gaussian_hermitian(ctx, rng);
        const auto p = minor_process(m);
        CHECK(gt_contains(RadialPoint(ctx, p.top()), p, 1e-12));
      }
    }
  }

  TEST_CASE("first minor of a conjugated (1,0) orbit is uniform") {
    const auto ctx = FieldContext::make(Field::C, 2);
    const auto om = omega(RadialPoint(ctx, {1, 0}));
    auto x = draws<double>(20000, 81, [&](Rng& r) {
      return minor_process(conjugate(sample_haar_unitary(ctx, r), om)).levels[0][0];
    });
    CHECK(ks_one_sample(x, [](double v) { return std::clamp(v, 0.0, 1.0); }).p_value > 0.01);
  }

  TEST_CASE("pfaffian") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 2.5, -2.5, 0;
    CHECK(pfaffian(a) == doctest::Approx(2.5));
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b(0, 1) = 1;
    b(2, 3) = 3;
    b(1, 0) = -1;
    b(3, 2) = -3;
    CHECK(pfaffian(b) == doctest::Approx(3.0));
    CHECK(pfaffian(Eigen::MatrixXd::Zero(3, 3)) == 0.0);
  }

  TEST_CASE("same seed, same matrix") {
    const auto ctx = FieldContext::make(Field::H, 2);
    Rng a(7), b(7);
    CHECK((sample_gaussian_hermitian(ctx, a).data - sample_gaussian_hermitian(ctx, b).data).norm() == 0.0);
    Rng root(9);
    Rng s1 = root.split(3), s2 = root.split(3), s3 = root.split(4);
    CHECK(s1.uniform() == s2.uniform());
    CHECK(s1.uniform() != s3.uniform());
  }
}
