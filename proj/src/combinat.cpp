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


#include "orbit/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "orbit/error.hpp"
#include "orbit/gtpolytope.hpp"
#include "orbit/parallel.hpp"
#include "orbit/perturbation.hpp"
#include "orbit/stats.hpp"

namespace orbit {

namespace {

void require_integral(const FieldContext& ctx, const IntWeight& lambda) {
  if (!is_integral_dominant(ctx, lambda))
    throw DomainError("weight is not integral dominant for " + to_string(ctx.field) + " n=" +
                      std::to_string(ctx.n));
}

BigInt to_integer(const Rational& q, const char* what) {
  if (boost::multiprecision::denominator(q) != 1)
    throw NumericalFailure(std::string(what) + " is not an integer", 0.0);
  return boost::multiprecision::numerator(q);
}

}  // namespace

BigInt gt_count(const FieldContext& ctx, const IntWeight& l) {
  require_integral(ctx, l);
  Rational q = 1;
  const int n = ctx.n;
  switch (ctx.field) {
    case Field::C:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          q *= Rational(l[i - 1] - l[j - 1] + j - i, j - i);
      break;
    case Field::H:
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          q *= Rational(l[i - 1] - l[j - 1] + j - i, j - i);
          q *= Rational(l[i - 1] + l[j - 1] + 2 * n + 2 - j - i, 2 * n + 2 - j - i);
        }
        q *= Rational(l[i - 1] + n + 1 - i, n + 1 - i);
      }
      break;
    case Field::R: {
      const int r = ctx.n_tilde, e = ctx.epsilon;
      for (int i = 1; i <= r; ++i) {
        for (int j = i + 1; j <= r; ++j) {
          q *= Rational(l[i - 1] - l[j - 1] + j - i, j - i);
          q *= Rational(l[i - 1] + l[j - 1] + 2 * r + e - j - i, 2 * r + e - j - i);
        }
        // (lambda_i + r + 1/2 - i) / (r + 1/2 - i), doubled top and bottom
        if (e) q *= Rational(2 * l[i - 1] + 2 * r + 1 - 2 * i, 2 * r + 1 - 2 * i);
      }
      break;
    }
  }
  return to_integer(q, "lattice count");
}

std::uint64_t gt_enumerate_visit(const FieldContext& ctx, const IntWeight& lambda,
                                 const std::function<void(const GTPattern&)>& visit) {
  require_integral(ctx, lambda);
  std::vector<double> top(lambda.begin(), lambda.end());
  RadialPoint lam(ctx, top);
  const GTLayout g = gt_layout(ctx);
  const std::vector<LinearConstraint> cons = gt_constraints(lam);
  const int dim = g.free_dim;

  // top-down order; a constraint is applied at the last of its variables
  std::vector<int> order;
  for (int l = static_cast<int>(g.levels.size()) - 2; l >= 0; --l)
    for (int j = 0; j < g.levels[l].length; ++j) order.push_back(g.offset[l] + j);
  std::vector<int> rank(dim);
  for (int i = 0; i < dim; ++i) rank[order[i]] = i;
  std::vector<std::vector<int>> at(dim);
  for (std::size_t c = 0; c < cons.size(); ++c) {
    if (cons[c].terms.empty()) {
      if (cons[c].constant < 0) return 0;
      continue;
    }
    int last = -1;
    for (const auto& t : cons[c].terms) last = std::max(last, rank[t.first]);
    at[last].push_back(static_cast<int>(c));
  }

  std::vector<double> x(dim, 0.0);
  std::uint64_t count = 0;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == dim) {
      ++count;
      if (visit) visit(unflatten(lam, x));
      return;
    }
    const int v = order[pos];
    double lo = -1e18, hi = 1e18;
    for (int c : at[pos]) {
      double coef = 0.0, rest = cons[c].constant;
      for (const auto& [i, a] : cons[c].terms) {
        if (i == v)
          coef += a;
        else
          rest += a * x[i];
      }
      if (coef > 0)
        lo = std::max(lo, -rest / coef);
      else if (coef < 0)
        hi = std::min(hi, rest / -coef);
      else if (rest < 0)
        return;
    }
    const long long a = static_cast<long long>(std::ceil(lo - 1e-9));
    const long long b = static_cast<long long>(std::floor(hi + 1e-9));
    for (long long t = a; t <= b; ++t) {
      x[v] = static_cast<double>(t);
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

std::vector<GTPattern> gt_enumerate(const FieldContext& ctx, const IntWeight& lambda,
                                    std::uint64_t limit) {
  BigInt expected = weyl_dim(ctx, lambda);
  if (expected > limit)
    throw InstanceTooLarge("GT lattice has " + expected.str() + " points, above the limit " +
                           std::to_string(limit));
  std::vector<GTPattern> out;
  gt_enumerate_visit(ctx, lambda, [&](const GTPattern& p) { out.push_back(p); });
  return out;
}

// ---- tensor products with (m, 0, ..., 0) ----

namespace {

// beta_1 >= c_1 >= beta_2 >= ... over c (length q), beta of length p; the
// first entry is bounded by c_1 + budget. Calls fn(beta) for each beta with
// sum_i (beta_i - c_i) == target, the sum over the first q entries.
void betas_over(const IntWeight& c, int p, long long target, long long last_lo, long long last_hi,
                const std::function<void(const IntWeight&)>& fn) {
  IntWeight beta(p);
  const int q = static_cast<int>(c.size());
  std::function<void(int, long long)> rec = [&](int i, long long left) {
    if (i == p) {
      if (left == 0) fn(beta);
      return;
    }
    long long lo, hi;
    if (i < q) {
      lo = c[i];
      hi = i == 0 ? c[0] + left : std::min(c[i - 1], c[i] + left);
    } else {
      lo = last_lo;
      hi = last_hi;
    }
    for (long long b = lo; b <= hi; ++b) {
      beta[i] = b;
      rec(i + 1, i < q ? left - (b - c[i]) : left);
    }
  };
  if (target >= 0) rec(0, target);
}

// c with lambda_1 >= c_1 >= lambda_2 >= ... >= c_q >= floor, q entries
void cs_under(const IntWeight& lambda, int q, long long floor,
              const std::function<void(const IntWeight&)>& fn) {
  IntWeight c(q);
  std::function<void(int)> rec = [&](int i) {
    if (i == q) {
      fn(c);
      return;
    }
    long long hi = lambda[i];
    long long lo = i + 1 < static_cast<int>(lambda.size()) ? lambda[i + 1] : floor;
    if (i == q - 1) lo = std::max(lo, floor);
    for (long long v = lo; v <= hi; ++v) {
      c[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace

DecompositionTable tensor_rank_one(const FieldContext& ctx, const IntWeight& lambda, long long m) {
  require_integral(ctx, lambda);
  if (m < 0) throw DomainError("tensor power m must be >= 0");
  DecompositionTable t;
  const int n = ctx.n;
  switch (ctx.chamber) {
    case Chamber::A: {
      // Pieri: beta interlaces over lambda, |beta| = |lambda| + m
      IntWeight beta(n);
      std::function<void(int, long long)> rec = [&](int i, long long left) {
        if (i == n) {
          if (left == 0) t[beta] += 1;
          return;
        }
        long long hi = i == 0 ? lambda[0] + left : std::min(lambda[i - 1], lambda[i] + left);
        for (long long b = lambda[i]; b <= hi; ++b) {
          beta[i] = b;
          rec(i + 1, left - (b - lambda[i]));
        }
      };
      rec(0, m);
      break;
    }
    case Chamber::C:
    case Chamber::B: {
      const int r = ctx.n_tilde;
      const bool b_type = ctx.chamber == Chamber::B;
      cs_under(lambda, r, 0, [&](const IntWeight& c) {
        long long base = 0;
        for (int i = 0; i < r; ++i) base += lambda[i] - c[i];
        for (int s = 0; s <= (b_type ? 1 : 0); ++s) {
          if (s == 1 && c[r - 1] == 0) continue;
          betas_over(c, r, m - base - s, 0, 0, [&](const IntWeight& beta) { t[beta] += 1; });
        }
      });
      break;
    }
    case Chamber::D: {
      const int r = ctx.n_tilde;
      if (r < 2) throw UnsupportedCase("rank-one tensor rule needs D_r with r >= 2");
      const long long lr = lambda[r - 1];
      cs_under(lambda, r - 1, std::llabs(lr), [&](const IntWeight& c) {
        long long base = 0;
        for (int i = 0; i < r - 1; ++i) base += lambda[i] - c[i];
        const long long cl = c[r - 2];
        // beta_r ranges over [-c_{r-1}, c_{r-1}] and costs |lambda_r - beta_r|
        for (long long br = -cl; br <= cl; ++br) {
          long long target = m - base - std::llabs(lr - br);
          betas_over(c, r, target, br, br, [&](const IntWeight& beta) { t[beta] += 1; });
        }
      });
      break;
    }
  }
  return t;
}

// ---- branching ----

FieldContext sub_context(const FieldContext& ctx) {
  if (ctx.n > 1) return FieldContext::make(ctx.field, ctx.n - 1);
  FieldContext z = ctx;
  z.n = 0;
  z.n_tilde = 0;
  z.epsilon = 0;
  return z;
}

std::vector<double> embed_sub_torus(const FieldContext& ctx, const std::vector<double>& zeta) {
  std::vector<double> out = zeta;
  const int full = ctx.field == Field::R ? ctx.n_tilde : ctx.n;
  out.resize(full, 0.0);
  return out;
}

DecompositionTable branch(const FieldContext& ctx, const IntWeight& lambda) {
  require_integral(ctx, lambda);
  DecompositionTable t;
  const int n = ctx.n;
  switch (ctx.field) {
    case Field::C: {
      IntWeight beta(n - 1);
      std::function<void(int)> rec = [&](int i) {
        if (i == n - 1) {
          t[beta] += 1;
          return;
        }
        for (long long b = lambda[i + 1]; b <= lambda[i]; ++b) {
          beta[i] = b;
          rec(i + 1);
        }
      };
      rec(0);
      break;
    }
    case Field::H: {
      // through the half level c: lambda > c > beta, c >= 0
      cs_under(lambda, n, 0, [&](const IntWeight& c) {
        IntWeight beta(n - 1);
        std::function<void(int)> rec = [&](int i) {
          if (i == n - 1) {
            t[beta] += 1;
            return;
          }
          for (long long b = c[i + 1]; b <= c[i]; ++b) {
            beta[i] = b;
            rec(i + 1);
          }
        };
        rec(0);
      });
      break;
    }
    case Field::R: {
      const int r = ctx.n_tilde;
      if (n % 2 == 1) {
        // B_r -> D_r: lambda_1 >= beta_1 >= ... >= lambda_r >= |beta_r|
        IntWeight beta(r);
        std::function<void(int)> rec = [&](int i) {
          if (i == r) {
            t[beta] += 1;
            return;
          }
          long long lo = i + 1 < r ? lambda[i + 1] : -lambda[r - 1];
          for (long long b = lo; b <= lambda[i]; ++b) {
            beta[i] = b;
            rec(i + 1);
          }
        };
        rec(0);
      } else {
        // D_r -> B_{r-1}: lambda_1 >= beta_1 >= ... >= beta_{r-1} >= |lambda_r|
        IntWeight beta(r - 1);
        std::function<void(int)> rec = [&](int i) {
          if (i == r - 1) {
            t[beta] += 1;
            return;
          }
          long long lo = i + 1 < r - 1 ? lambda[i + 1] : std::llabs(lambda[r - 1]);
          for (long long b = lo; b <= lambda[i]; ++b) {
            beta[i] = b;
            rec(i + 1);
          }
        };
        rec(0);
      }
      break;
    }
  }
  return t;
}

BigInt table_dimension(const FieldContext& ctx, const DecompositionTable& t) {
  BigInt s = 0;
  for (const auto& [beta, mult] : t) s += mult * (ctx.n == 0 ? BigInt(1) : weyl_dim(ctx, beta));
  return s;
}

// ---- semiclassical schedules ----

IntWeight SemiclassicalSchedule::approximant(int k) const {
  IntWeight out;
  for (double v : lambda) out.push_back(std::llround(k * v));
  if (ctx.chamber == Chamber::D && out.size() >= 2) {
    std::sort(out.begin(), out.end() - 1, std::greater<long long>());
  } else {
    std::stable_sort(out.begin(), out.end(), std::greater<long long>());
  }
  return out;
}

long long SemiclassicalSchedule::theta_approximant(int k) const { return std::llround(k * theta); }

std::vector<std::pair<std::vector<double>, double>> semiclassical_measure(
    const SemiclassicalSchedule& s, int k) {
  if (k < 1) throw DomainError("scale k must be >= 1");
  const IntWeight lk = s.approximant(k);
  std::vector<std::pair<std::vector<double>, double>> atoms;
  DecompositionTable t;
  FieldContext dctx = s.ctx;
  double total;
  if (s.kind == SemiclassicalSchedule::Kind::branching) {
    t = branch(s.ctx, lk);
    dctx = sub_context(s.ctx);
    total = weyl_dim(s.ctx, lk).convert_to<double>();
  } else {
    IntWeight gamma(lk.size(), 0);
    gamma[0] = s.theta_approximant(k);
    t = tensor_rank_one(s.ctx, lk, gamma[0]);
    total = (weyl_dim(s.ctx, lk) * weyl_dim(s.ctx, gamma)).convert_to<double>();
  }
  for (const auto& [beta, mult] : t) {
    BigInt d = dctx.n == 0 ? BigInt(1) : weyl_dim(dctx, beta);
    std::vector<double> pos;
    for (long long b : beta) pos.push_back(static_cast<double>(b) / k);
    atoms.push_back({pos, (mult * d).convert_to<double>() / total});
  }
  return atoms;
}

double semiclassical_distance(const SemiclassicalSchedule& s, int k,
                              const SemiclassicalOptions& opt) {
  const auto atoms = semiclassical_measure(s, k);
  if (static_cast<long long>(atoms.size()) > opt.max_weights)
    throw InstanceTooLarge("semiclassical measure exceeds the enumeration budget");
  if (atoms.empty()) throw DegenerateInput("empty discrete measure");
  const int dim = static_cast<int>(atoms.front().first.size());
  auto marginal = [&](int i) {
    std::vector<std::pair<double, double>> m;
    for (const auto& a : atoms) m.push_back({a.first[i], a.second});
    return m;
  };

  if (s.kind == SemiclassicalSchedule::Kind::branching && s.ctx.field == Field::C &&
      s.ctx.n == 2) {
    // mu_lambda is uniform on [lambda_2, lambda_1]
    const double lo = s.lambda[1], hi = s.lambda[0];
    auto cdf = [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
    return wasserstein1_cdf(marginal(0), cdf, lo, hi);
  }

  const RadialPoint lam(s.ctx, s.lambda);
  const int chunks = 64;
  const int per = (opt.target_samples + chunks - 1) / chunks;
  Rng root(opt.seed);
  auto parts = parallel_map(chunks, opt.threads, [&](std::size_t c) {
    Rng rng = root.split(c);
    std::vector<std::vector<double>> out;
    for (int i = 0; i < per; ++i) {
      if (s.kind == SemiclassicalSchedule::Kind::branching) {
        GTPattern p = sample_uniform_spectral(lam, rng);
        const std::size_t idx = s.ctx.field == Field::H ? 2 * s.ctx.n - 3 : s.ctx.n - 2;
        out.push_back(p.levels[idx]);
      } else {
        out.push_back(perturb_spectral_sample(lam, s.theta, rng).coords);
      }
    }
    return out;
  });
  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> y;
    for (const auto& part : parts)
      for (const auto& v : part) y.push_back(v[i]);
    worst = std::max(worst, wasserstein1_weighted(marginal(i), y));
  }
  return worst;
}

}  // namespace orbit
