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


#include "orbit/verify.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "orbit/combinat.hpp"
#include "orbit/detproc.hpp"
#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"
#include "orbit/gtpolytope.hpp"
#include "orbit/perturbation.hpp"
#include "orbit/quadrature.hpp"
#include "orbit/stats.hpp"
#include "orbit/weyl.hpp"

namespace orbit {

namespace {

constexpr int kChunks = 64;

// Monte Carlo in a fixed number of chunks, each with its own split stream,
// so the output does not depend on the thread count.
template <typename T>
std::vector<T> collect(long total, std::uint64_t seed, int threads,
                       const std::function<T(Rng&)>& draw) {
  Rng root(seed);
  auto parts = parallel_map(kChunks, threads, [&](std::size_t c) {
    const long lo = total * static_cast<long>(c) / kChunks;
    const long hi = total * static_cast<long>(c + 1) / kChunks;
    Rng rng = root.split(c);
    std::vector<T> out;
    out.reserve(hi - lo);
    for (long i = lo; i < hi; ++i) out.push_back(draw(rng));
    return out;
  });
  std::vector<T> all;
  all.reserve(total);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

// independent seed for a sub-check
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag + 0x3c6ef372fe94f82bULL));
}

long scaled(const VerifyOptions& o, long full) {
  return o.budget == Budget::full ? full : std::max(1000L, full / 10);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string ctx_label(const FieldContext& ctx) { return to_string(ctx.field) + std::to_string(ctx.n); }

// CDF of a density on [lo, hi], tabulated by cumulative quadrature and
// interpolated linearly.
struct TabulatedCdf {
  double lo, hi;
  std::vector<double> f;

  TabulatedCdf(const Integrand& density, double a, double b, int nodes = 2000) : lo(a), hi(b) {
    f.assign(nodes + 1, 0.0);
    const double h = (b - a) / nodes;
    for (int i = 0; i < nodes; ++i)
      f[i + 1] = f[i] + integrate(density, a + i * h, a + (i + 1) * h, 1e-10);
  }
  double mass() const { return f.back(); }
  double operator()(double x) const {
    if (x <= lo) return 0.0;
    if (x >= hi) return f.back();
    const double t = (x - lo) / (hi - lo) * (f.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(t), f.size() - 2);
    return f[i] + (t - i) * (f[i + 1] - f[i]);
  }
};

// ---- 1: exact counting ----

void dominant_weights(int rank, long long top, bool signed_last,
                      const std::function<void(const IntWeight&)>& fn) {
  IntWeight w(rank);
  std::function<void(int, long long)> rec = [&](int i, long long hi) {
    if (i == rank) {
      fn(w);
      return;
    }
    const long long lo = i == rank - 1 && signed_last ? -hi : 0;
    for (long long v = lo; v <= hi; ++v) {
      w[i] = v;
      rec(i + 1, v < 0 ? -v : v);
    }
  };
  rec(0, top);
}

std::vector<CheckResult> suite_counts(const VerifyOptions& opt) {
  const long long top = opt.budget == Budget::full ? 5 : 3;
  struct Case {
    Field f;
    int n;
  };
  const std::vector<Case> cases = {{Field::C, 1}, {Field::C, 2}, {Field::C, 3}, {Field::C, 4},
                                   {Field::H, 1}, {Field::H, 2}, {Field::H, 3}, {Field::H, 4},
                                   {Field::R, 3}, {Field::R, 5}, {Field::R, 7}, {Field::R, 9},
                                   {Field::R, 2}, {Field::R, 4}, {Field::R, 6}, {Field::R, 8}};
  std::vector<CheckResult> out;
  for (const auto& cs : cases) {
    const FieldContext ctx = FieldContext::make(cs.f, cs.n);
    const int rank = cs.f == Field::R ? ctx.n_tilde : ctx.n;
    std::vector<IntWeight> ws;
    dominant_weights(rank, top, ctx.chamber == Chamber::D,
                     [&](const IntWeight& w) { ws.push_back(w); });
    struct Row {
      bool ok;
      std::uint64_t patterns;
      std::string bad;
    };
    auto rows = parallel_map(ws.size(), opt.threads, [&](std::size_t i) {
      const BigInt g = gt_count(ctx, ws[i]);
      const BigInt d = weyl_dim(ctx, ws[i]);
      const std::uint64_t e = gt_enumerate_visit(ctx, ws[i]);
      Row r{g == d && d == BigInt(e), e, {}};
      if (!r.ok) r.bad = g.str() + "/" + d.str() + "/" + std::to_string(e);
      return r;
    });
    CheckResult c;
    c.name = "counts " + to_string(ctx.chamber) + std::to_string(rank) + " (" + ctx_label(ctx) + ")";
    c.pass = true;
    double patterns = 0;
    for (const auto& r : rows) {
      patterns += static_cast<double>(r.patterns);
      if (!r.ok && c.pass) {
        c.pass = false;
        c.detail = "mismatch gt_count/weyl_dim/enumeration " + r.bad;
      }
    }
    if (c.pass) c.detail = std::to_string(ws.size()) + " weights, all equal";
    c.stats = {{"weights", static_cast<double>(ws.size())}, {"patterns", patterns}};
    out.push_back(c);
  }
  return out;
}

// ---- 2: tensor dimension conservation ----

std::vector<CheckResult> suite_tensor(const VerifyOptions& opt) {
  const int instances = opt.budget == Budget::full ? 50 : 10;
  struct Type {
    Chamber t;
    Field f;
    std::vector<int> ns;
  };
  const std::vector<Type> types = {{Chamber::A, Field::C, {2, 3, 4}},
                                   {Chamber::B, Field::R, {3, 5, 7}},
                                   {Chamber::C, Field::H, {1, 2, 3}},
                                   {Chamber::D, Field::R, {4, 6, 8}}};
  std::vector<CheckResult> out;
  Rng root(opt.seed);
  for (std::size_t ti = 0; ti < types.size(); ++ti) {
    Rng rng = root.split(ti);
    const auto& ty = types[ti];
    CheckResult c;
    c.name = "tensor " + to_string(ty.t);
    c.pass = true;
    double terms = 0;
    for (int i = 0; i < instances; ++i) {
      const int n = ty.ns[static_cast<std::size_t>(rng.uniform() * ty.ns.size())];
      const FieldContext ctx = FieldContext::make(ty.f, n);
      const int rank = ty.f == Field::R ? ctx.n_tilde : n;
      IntWeight l(rank);
      for (auto& v : l) v = static_cast<long long>(rng.uniform() * 6);
      std::sort(l.begin(), l.end(), std::greater<long long>());
      if (ty.t == Chamber::D && rng.uniform() < 0.5) l.back() = -l.back();
      const long long m = static_cast<long long>(rng.uniform() * 7);
      IntWeight gamma(rank, 0);
      gamma[0] = m;
      const DecompositionTable t = tensor_rank_one(ctx, l, m);
      terms += static_cast<double>(t.size());
      const BigInt lhs = table_dimension(ctx, t);
      const BigInt rhs = weyl_dim(ctx, l) * weyl_dim(ctx, gamma);
      if (lhs != rhs && c.pass) {
        c.pass = false;
        std::ostringstream s;
        s << ctx_label(ctx) << " m=" << m << ": " << lhs << " != " << rhs;
        c.detail = s.str();
      }
    }
    if (c.pass) c.detail = std::to_string(instances) + " instances, m <= 6, exact";
    c.stats = {{"instances", static_cast<double>(instances)}, {"table_entries", terms}};
    out.push_back(c);
  }
  return out;
}

// ---- 3: minor-process marginals ----

CheckResult ks_check(const std::string& name, std::vector<double> x,
                     const std::function<double(double)>& cdf) {
  const TestResult r = ks_one_sample(std::move(x), cdf);
  CheckResult c;
  c.name = name;
  c.pass = r.p_value >= tol::significance;
  c.detail = "KS D=" + fmt(r.statistic) + " p=" + fmt(r.p_value);
  c.stats = {{"D", r.statistic}, {"p", r.p_value}};
  return c;
}

std::vector<CheckResult> suite_minors(const VerifyOptions& opt) {
  const long n = scaled(opt, 100000);
  std::vector<CheckResult> out;
  {
    const RadialPoint lam(FieldContext::make(Field::C, 3), {2.0, 1.0, 0.0});
    auto xs = collect<double>(n, opt.seed, opt.threads, [&](Rng& rng) {
      return sample_uniform_spectral(lam, rng).levels[1][0];
    });
    auto marginal = [&](double b1) {
      return integrate([&](double b2) { return mu_lambda_density(lam, {b1, b2}); }, 0.0, 1.0,
                       1e-10);
    };
    TabulatedCdf cdf(marginal, 1.0, 2.0);
    CheckResult c = ks_check("minors C3 x(2)_1, lambda=(2,1,0)", xs, cdf);
    c.stats["mass"] = cdf.mass();
    c.stats["samples"] = static_cast<double>(n);
    out.push_back(c);
  }
  {
    const RadialPoint lam(FieldContext::make(Field::R, 4), {2.0, 1.0});
    auto xs = collect<double>(n, sub_seed(opt.seed, 1), opt.threads, [&](Rng& rng) {
      return std::fabs(sample_uniform_spectral(lam, rng).levels[2][0]);
    });
    TabulatedCdf cdf([&](double b) { return mu_lambda_density(lam, {b}); }, 1.0, 2.0);
    CheckResult c = ks_check("minors R4 |x(3)_1|, lambda=(2,1)", xs, cdf);
    c.stats["mass"] = cdf.mass();
    c.stats["samples"] = static_cast<double>(n);
    out.push_back(c);
  }
  return out;
}

// ---- 4: spectral vs hit-and-run ----

std::vector<CheckResult> suite_samplers(const VerifyOptions& opt) {
  const long n = scaled(opt, 20000);
  const std::vector<RadialPoint> cases = {
      RadialPoint(FieldContext::make(Field::C, 3), {2.0, 1.0, 0.0}),
      RadialPoint(FieldContext::make(Field::H, 2), {2.0, 1.0})};
  std::vector<CheckResult> out;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const RadialPoint& lam = cases[ci];
    const std::uint64_t seed = sub_seed(opt.seed, 10 * ci);
    auto a = collect<std::vector<double>>(n, seed, opt.threads, [&](Rng& rng) {
      return flatten_free(sample_uniform_spectral(lam, rng));
    });
    const long steps = 200L * static_cast<long>(a.front().size());
    auto b = collect<std::vector<double>>(n, sub_seed(seed, 1), opt.threads, [&](Rng& rng) {
      return flatten_free(sample_uniform_walk(lam, rng, steps));
    });
    const int d = static_cast<int>(a.front().size());
    for (int idx : {0, d / 2, d - 1}) {
      std::vector<double> x, y;
      for (const auto& v : a) x.push_back(v[idx]);
      for (const auto& v : b) y.push_back(v[idx]);
      const TestResult r = ks_two_sample(x, y);
      CheckResult c;
      c.name = "samplers " + ctx_label(lam.ctx) + " coordinate " + std::to_string(idx);
      c.pass = r.p_value >= tol::significance;
      c.detail = "KS D=" + fmt(r.statistic) + " p=" + fmt(r.p_value);
      c.stats = {{"D", r.statistic}, {"p", r.p_value}, {"samples", static_cast<double>(n)}};
      out.push_back(c);
    }
  }
  return out;
}

// ---- 5: rank-one Gamma law ----

std::vector<CheckResult> suite_gamma(const VerifyOptions& opt) {
  const long n = scaled(opt, 100000);
  std::vector<CheckResult> out;
  std::uint64_t seed = 0;
  for (Field f : {Field::C, Field::R, Field::H}) {
    for (int dim : {2, 3, 4}) {
      const FieldContext ctx = FieldContext::make(f, dim);
      // (rate, shape): (1, n), (1, n - 1), (2, 2n)
      const double rate = f == Field::H ? 2.0 : 1.0;
      const double shape = f == Field::C ? dim : f == Field::R ? dim - 1 : 2.0 * dim;
      auto xs = collect<double>(n, sub_seed(opt.seed, seed++), opt.threads,
                                [&](Rng& rng) { return rank_one_matrix_sample(ctx, rng); });
      CheckResult c = ks_check("gamma " + ctx_label(ctx), xs, [&](double x) {
        return x <= 0 ? 0.0 : boost::math::gamma_p(shape, rate * x);
      });
      c.stats["shape"] = shape;
      c.stats["rate"] = rate;
      out.push_back(c);
    }
  }
  return out;
}

// ---- 6: characteristic function of M Omega_k M* ----

std::vector<CheckResult> suite_fourier(const VerifyOptions& opt) {
  const long n = scaled(opt, 100000);
  struct Case {
    Field f;
    int n, k;
  };
  const std::vector<Case> cases = {{Field::C, 3, 2}, {Field::R, 4, 3}, {Field::H, 2, 3}};
  const std::vector<double> scales = {0.1, 0.25, 0.5, 0.8, 1.2};
  std::vector<CheckResult> out;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const FieldContext ctx = FieldContext::make(cases[ci].f, cases[ci].n);
    const FieldContext kc = FieldContext::make(cases[ci].f, cases[ci].k);
    const StructuredMatrix om = omega_ones(kc, kc.n_tilde);
    Rng grid_rng(sub_seed(opt.seed, 500), ci);
    std::vector<StructuredMatrix> ns;
    for (double s : scales) {
      StructuredMatrix g = sample_gaussian_hermitian(ctx, grid_rng);
      g.data *= s / std::sqrt(static_cast<double>(dim_hermitian(ctx)));
      ns.push_back(g);
    }
    auto phases = collect<std::vector<double>>(n, sub_seed(opt.seed, ci), opt.threads, [&](Rng& rng) {
      const StructuredMatrix h = sandwich(sample_gaussian_rectangular(ctx, cases[ci].k, rng), om);
      std::vector<double> p;
      // pairing exp(-i <N, H>)
      for (const auto& m : ns) p.push_back(-hermitian_inner(m, h));
      return p;
    });
    CheckResult c;
    c.name = "fourier " + ctx_label(ctx) + " k=" + std::to_string(cases[ci].k);
    double worst = 0.0;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      Accumulator re, im;
      for (const auto& p : phases) {
        re.add(std::cos(p[j]));
        im.add(std::sin(p[j]));
      }
      const std::complex<double> exact = lue_char_exact(ctx, cases[ci].k, ns[j]);
      worst = std::max(worst, std::fabs(re.mean - exact.real()) / re.se());
      worst = std::max(worst, std::fabs(im.mean - exact.imag()) / im.se());
    }
    c.pass = worst <= tol::se_multiple;
    c.detail = "5 matrices, worst |z|=" + fmt(worst);
    c.stats = {{"worst_z", worst}, {"samples", static_cast<double>(n)}};
    out.push_back(c);
  }
  return out;
}

// ---- 7: LUE eigenvalue density ----

std::vector<CheckResult> suite_lue(const VerifyOptions& opt) {
  const long n = scaled(opt, 100000);
  struct Case {
    Field f;
    int n, k;
  };
  const std::vector<Case> cases = {{Field::C, 2, 3}, {Field::R, 4, 5}, {Field::H, 2, 3}};
  std::vector<CheckResult> out;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const FieldContext ctx = FieldContext::make(cases[ci].f, cases[ci].n);
    const int k = cases[ci].k;
    if (lue_rank(ctx, k) != 2) throw DomainError("lue check expects two positive eigenvalues");
    // bin edges from a pilot run on a separate stream
    auto pilot = collect<std::vector<double>>(4000, sub_seed(opt.seed, 1000 + ci), opt.threads,
                                              [&](Rng& rng) { return lue_positive_eigenvalues(ctx, k, rng); });
    std::vector<double> pooled;
    for (const auto& v : pilot) pooled.insert(pooled.end(), v.begin(), v.end());
    std::sort(pooled.begin(), pooled.end());
    const int nb = 8;
    std::vector<double> edges = {0.0};
    for (int i = 1; i < nb; ++i) edges.push_back(pooled[pooled.size() * i / nb]);
    edges.push_back(kInf);

    auto xs = collect<std::vector<double>>(n, sub_seed(opt.seed, ci), opt.threads,
                                           [&](Rng& rng) { return lue_positive_eigenvalues(ctx, k, rng); });
    auto bin = [&](double x) {
      return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin()) - 1;
    };
    std::vector<double> obs(nb * nb, 0.0), expc(nb * nb, 0.0);
    for (const auto& v : xs) obs[bin(v[0]) * nb + bin(v[1])] += 1.0;
    std::vector<double> o, e;
    double mass = 0.0;
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double p = integrate(
            [&](double l1) {
              const double top = std::min(edges[j + 1], l1);
              if (top <= edges[j]) return 0.0;
              return integrate([&](double l2) { return lue_density(ctx, k, {l1, l2}); }, edges[j],
                               top, 1e-9);
            },
            edges[i], edges[i + 1], 1e-8);
        mass += p;
        o.push_back(obs[i * nb + j]);
        e.push_back(p * static_cast<double>(n));
      }
    }
    const TestResult r = chi_square_gof(o, e);
    CheckResult c;
    c.name = "lue " + ctx_label(ctx) + " k=" + std::to_string(k);
    c.pass = r.p_value >= tol::significance;
    c.detail = "chi2=" + fmt(r.statistic) + " dof=" + std::to_string(r.dof) + " p=" + fmt(r.p_value);
    c.stats = {{"chi2", r.statistic}, {"dof", static_cast<double>(r.dof)}, {"p", r.p_value},
               {"mass", mass}};
    out.push_back(c);
  }
  return out;
}

// ---- 8: kernel level counts ----

CheckResult level_count_check(const std::string& name, const CorrelationKernel& k,
                              const std::function<int(int)>& points) {
  CheckResult c;
  c.name = name;
  double worst = 0.0;
  for (int r : k.levels()) worst = std::max(worst, std::fabs(level_count(k, r) - points(r)));
  c.pass = worst <= tol::level_count;
  c.detail = std::to_string(k.levels().size()) + " levels, max error " + fmt(worst);
  c.stats = {{"max_error", worst}};
  return c;
}

std::vector<CheckResult> suite_kernels(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const int c_max = opt.budget == Budget::full ? 4 : 3;
  for (int n = 1; n <= c_max; ++n)
    out.push_back(level_count_check("kernels GUE C" + std::to_string(n),
                                    gue_minor_kernel(FieldContext::make(Field::C, n)),
                                    [](int r) { return r; }));
  for (int n : {3, 5})
    out.push_back(level_count_check("kernels GUE R" + std::to_string(n),
                                    gue_minor_kernel(FieldContext::make(Field::R, n)),
                                    [](int r) { return r / 2; }));
  for (Field f : {Field::C, Field::H}) {
    const RadialPoint lam(FieldContext::make(f, 2), {2.0, 1.0});
    out.push_back(level_count_check("kernels rectangular " + to_string(f) + "2 m=3",
                                    rectangular_kernel(lam, 3), [](int) { return 2; }));
  }
  return out;
}

// ---- 9: two-point function ----

std::vector<CheckResult> suite_rho2(const VerifyOptions& opt) {
  const long n = opt.budget == Budget::full ? 10000 : 2000;
  const FieldContext ctx = FieldContext::make(Field::C, 2);
  const BinGrid grid{{1, 2}, {-4.0, -0.75, 0.75, 4.0}};
  Rng root(opt.seed);
  auto parts = parallel_map(kChunks, opt.threads, [&](std::size_t c) {
    Rng rng = root.split(c);
    std::optional<CorrelationAccumulator> acc(grid);
    const long lo = n * static_cast<long>(c) / kChunks, hi = n * static_cast<long>(c + 1) / kChunks;
    for (long i = lo; i < hi; ++i) acc->add(minor_configuration(sample_gaussian_hermitian(ctx, rng)));
    return acc;
  });
  CorrelationAccumulator acc(grid);
  for (const auto& p : parts) acc.merge(*p);
  const CorrelationEstimate est = acc.result();
  const CorrelationKernel k = gue_minor_kernel(ctx);

  CheckResult c;
  c.name = "rho2 GUE C2";
  double worst = 0.0;
  int compared = 0;
  for (int a = 0; a < grid.cells(); ++a) {
    for (int b = 0; b < grid.cells(); ++b) {
      if (est.rho2_missing(a, b)) continue;
      const double diff = std::fabs(est.rho2(a, b) - kernel_rho2_cell(k, grid, a, b));
      // cells where the estimate is identically zero have zero spread
      const double z = est.rho2_se(a, b) > 0 ? diff / est.rho2_se(a, b) : (diff < 1e-9 ? 0.0 : kInf);
      worst = std::max(worst, z);
      ++compared;
    }
  }
  c.pass = compared > 0 && worst <= tol::se_multiple;
  c.detail = std::to_string(compared) + " cell pairs, worst |z|=" + fmt(worst);
  c.stats = {{"worst_z", worst}, {"pairs", static_cast<double>(compared)},
             {"samples", static_cast<double>(n)}};
  return {c};
}

// ---- 10: triangular kernel vs explicit real formula ----

std::vector<CheckResult> suite_guer(const VerifyOptions& opt) {
  const int n = opt.budget == Budget::full ? 5 : 3;
  const CorrelationKernel tri = gue_minor_kernel(FieldContext::make(Field::R, n));
  const CorrelationKernel stated = guer_kernel(n, IndicatorConvention::stated);
  const CorrelationKernel deriv = guer_kernel(n, IndicatorConvention::derivation);
  double worst = 0.0, worst_deriv = 0.0;
  int points = 0;
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s)
      for (double x = 0.05; x < 4.0; x += 0.35)
        for (double y = 0.1; y < 4.0; y += 0.35) {
          const double t = tri(r, x, s, y);
          worst = std::max(worst, std::fabs(t - stated(r, x, s, y)));
          worst_deriv = std::max(worst_deriv, std::fabs(t - deriv(r, x, s, y)));
          ++points;
        }
  CheckResult c;
  c.name = "guer R" + std::to_string(n) + " triangular vs explicit";
  c.pass = worst <= tol::kernel_agreement;
  c.detail = std::to_string(points) + " points, max diff " + fmt(worst) +
             " (other indicator: " + fmt(worst_deriv) + ")";
  c.stats = {{"max_diff", worst}, {"max_diff_other_indicator", worst_deriv},
             {"points", static_cast<double>(points)}};
  return {c};
}

// ---- 11: semiclassical convergence ----

std::vector<CheckResult> suite_semiclassical(const VerifyOptions& opt) {
  SemiclassicalSchedule s{FieldContext::make(Field::C, 2), SemiclassicalSchedule::Kind::branching,
                          {1.0, 0.0}};
  SemiclassicalOptions so;
  so.seed = opt.seed;
  so.threads = opt.threads;
  CheckResult c;
  c.name = "semiclassical A1 lambda=(1,0)";
  std::vector<double> d;
  for (int k : {10, 40, 100}) {
    d.push_back(semiclassical_distance(s, k, so));
    c.stats["w1_k" + std::to_string(k)] = d.back();
  }
  c.pass = d[0] > d[1] && d[1] > d[2] && d[2] < tol::semiclassical_w1;
  c.detail = "W1 " + fmt(d[0]) + " > " + fmt(d[1]) + " > " + fmt(d[2]);
  return {c};
}

// ---- 12: real odd vs quaternionic perturbations ----

std::vector<CheckResult> suite_equivalence(const VerifyOptions& opt) {
  const long n = scaled(opt, 20000);
  const std::vector<double> lam = {2.0, 1.0};
  const double theta = 1.0;
  const RadialPoint lr(FieldContext::make(Field::R, 5), lam);
  const RadialPoint lh(FieldContext::make(Field::H, 2), lam);
  auto a = collect<std::vector<double>>(
      n, opt.seed, opt.threads, [&](Rng& rng) { return perturb_spectral_sample(lr, theta, rng).coords; });
  auto b = collect<std::vector<double>>(
      n, sub_seed(opt.seed, 1), opt.threads, [&](Rng& rng) { return perturb_spectral_sample(lh, theta, rng).coords; });
  std::vector<CheckResult> out;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> x, y;
    for (const auto& v : a) x.push_back(v[i]);
    for (const auto& v : b) y.push_back(v[i]);
    const TestResult r = ks_two_sample(x, y);
    CheckResult c;
    c.name = "equivalence R5/H2 beta_" + std::to_string(i + 1);
    c.pass = r.p_value >= tol::significance;
    c.detail = "KS D=" + fmt(r.statistic) + " p=" + fmt(r.p_value);
    c.stats = {{"D", r.statistic}, {"p", r.p_value}, {"samples", static_cast<double>(n)}};
    out.push_back(c);
  }
  return out;
}

using SuiteFn = std::vector<CheckResult> (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"counts", suite_counts},   {"tensor", suite_tensor},
      {"minors", suite_minors},   {"samplers", suite_samplers},
      {"gamma", suite_gamma},     {"fourier", suite_fourier},
      {"lue", suite_lue},         {"kernels", suite_kernels},
      {"rho2", suite_rho2},       {"guer", suite_guer},
      {"semiclassical", suite_semiclassical}, {"equivalence", suite_equivalence}};
  return r;
}

}  // namespace

bool SuiteReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    rep.budget = opt.budget;
    const auto t0 = std::chrono::steady_clock::now();
    rep.checks = fn(opt);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  throw DomainError("unknown verify suite '" + name + "'");
}

std::string to_string(Budget b) { return b == Budget::full ? "full" : "small"; }

Budget parse_budget(const std::string& s) {
  if (s == "full") return Budget::full;
  if (s == "small") return Budget::small;
  throw DomainError("budget must be 'small' or 'full', got '" + s + "'");
}

}  // namespace orbit
