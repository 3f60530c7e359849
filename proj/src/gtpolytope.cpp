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


#include "orbit/gtpolytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"
#include "orbit/weyl.hpp"

namespace orbit {

double LinearConstraint::eval(const std::vector<double>& x) const {
  double s = constant;
  for (const auto& [i, a] : terms) s += a * x[i];
  return s;
}

GTLayout gt_layout(const FieldContext& ctx) {
  GTLayout g;
  g.levels = pattern_levels(ctx);
  int off = 0;
  for (std::size_t l = 0; l + 1 < g.levels.size(); ++l) {
    g.offset.push_back(off);
    off += g.levels[l].length;
  }
  g.free_dim = off;
  return g;
}

namespace {

// affine value coef * x[idx] + constant; idx < 0 for a pure constant
struct Term {
  int idx = -1;
  double coef = 0.0;
  double constant = 0.0;
};

Term neg(Term t) {
  t.coef = -t.coef;
  t.constant = -t.constant;
  return t;
}

class Builder {
 public:
  Builder(const RadialPoint& lambda) : lambda_(lambda), layout_(gt_layout(lambda.ctx)) {}

  Term entry(std::size_t level, int j) const {
    Term t;
    if (level + 1 == layout_.levels.size()) {
      t.constant = lambda_[j];
    } else {
      t.idx = layout_.offset[level] + j;
      t.coef = 1.0;
    }
    return t;
  }

  // a >= b
  void geq(Term a, Term b) {
    LinearConstraint c;
    if (a.idx >= 0) c.terms.push_back({a.idx, a.coef});
    if (b.idx >= 0) c.terms.push_back({b.idx, -b.coef});
    c.constant = a.constant - b.constant;
    out.push_back(c);
  }
  void geq_abs(Term a, Term b) {
    geq(a, b);
    geq(a, neg(b));
  }
  void nonneg(Term a) { geq(a, Term{}); }

  // upper level u (length p) over lower level w (length q = p or p - 1):
  // u_1 >= w_1 >= u_2 >= ... ; abs_last applies |.| to the signed last entry
  // of whichever level carries it.
  void interlace(std::size_t u, std::size_t w, bool upper_signed, bool lower_signed) {
    int p = layout_.levels[u].length, q = layout_.levels[w].length;
    for (int j = 0; j < q; ++j) {
      Term uj = entry(u, j), wj = entry(w, j);
      if (lower_signed && j == q - 1)
        geq_abs(uj, wj);
      else
        geq(uj, wj);
      if (j + 1 < p) {
        Term un = entry(u, j + 1);
        if (upper_signed && j + 1 == p - 1)
          geq_abs(wj, un);
        else
          geq(wj, un);
      }
    }
  }

  std::vector<LinearConstraint> out;
  const RadialPoint& lambda_;
  GTLayout layout_;
};

}  // namespace

std::vector<LinearConstraint> gt_constraints(const RadialPoint& lambda) {
  Builder b(lambda);
  const auto& lv = b.layout_.levels;
  for (std::size_t l = 1; l < lv.size(); ++l) b.interlace(l, l - 1, lv[l].signed_last, lv[l - 1].signed_last);
  for (std::size_t l = 0; l + 1 < lv.size(); ++l)
    if (lv[l].nonneg && !lv[l].signed_last && lv[l].length > 0)
      b.nonneg(b.entry(l, lv[l].length - 1));
  if (lambda.ctx.field == Field::R) {
    // signed levels: all but the last entry are >= 0
    for (std::size_t l = 0; l + 1 < lv.size(); ++l)
      if (lv[l].signed_last && lv[l].length > 1) b.nonneg(b.entry(l, lv[l].length - 2));
  }
  return b.out;
}

std::vector<double> flatten_free(const GTPattern& p) {
  std::vector<double> x;
  for (std::size_t l = 0; l + 1 < p.levels.size(); ++l)
    x.insert(x.end(), p.levels[l].begin(), p.levels[l].end());
  return x;
}

GTPattern unflatten(const RadialPoint& lambda, const std::vector<double>& x) {
  GTLayout g = gt_layout(lambda.ctx);
  GTPattern p;
  p.ctx = lambda.ctx;
  for (std::size_t l = 0; l + 1 < g.levels.size(); ++l)
    p.levels.emplace_back(x.begin() + g.offset[l], x.begin() + g.offset[l] + g.levels[l].length);
  p.levels.push_back(lambda.coords);
  return p;
}

bool gt_contains(const RadialPoint& lambda, const GTPattern& p, double tol) {
  GTLayout g = gt_layout(lambda.ctx);
  if (!(p.ctx == lambda.ctx) || p.levels.size() != g.levels.size())
    throw DomainError("pattern shape does not match the polytope");
  for (std::size_t l = 0; l < g.levels.size(); ++l)
    if (static_cast<int>(p.levels[l].size()) != g.levels[l].length)
      throw DomainError("pattern level " + g.levels[l].label + " has the wrong length");
  for (int j = 0; j < lambda.size(); ++j)
    if (std::fabs(p.top()[j] - lambda[j]) > tol) return false;
  std::vector<double> x = flatten_free(p);
  for (const auto& c : gt_constraints(lambda))
    if (c.eval(x) < -tol) return false;
  return true;
}

double gt_volume(const RadialPoint& lambda) { return asym_dim(lambda); }

GTPattern sample_uniform_spectral(const RadialPoint& lambda, Rng& rng) {
  const FieldContext& ctx = lambda.ctx;
  if (!lambda.in_chamber(0.0)) throw DomainError("lambda is not in the Weyl chamber");
  if (ctx.field != Field::H) {
    StructuredMatrix u = sample_haar_unitary(ctx, rng);
    GTPattern p = minor_process(conjugate(u, omega(lambda)));
    p.levels.back() = lambda.coords;
    return p;
  }
  // x^(k-1/2) <- |level 2k| and x^(k) <- level 2k+1 of SO(2n+1)
  FieldContext odd = FieldContext::make(Field::R, 2 * ctx.n + 1);
  RadialPoint lo(odd, lambda.coords);
  StructuredMatrix u = sample_haar_unitary(odd, rng);
  GTPattern q = minor_process(conjugate(u, omega(lo)));
  GTPattern p;
  p.ctx = ctx;
  for (int k = 1; k <= ctx.n; ++k) {
    std::vector<double> half = q.levels[2 * k - 1];
    for (double& v : half) v = std::fabs(v);
    p.levels.push_back(half);
    p.levels.push_back(q.levels[2 * k]);
  }
  p.levels.back() = lambda.coords;
  return p;
}

namespace {

// level-wise midpoints going down from the top
std::vector<double> midpoint_start(const RadialPoint& lambda) {
  const FieldContext& ctx = lambda.ctx;
  GTLayout g = gt_layout(ctx);
  std::vector<std::vector<double>> lv(g.levels.size());
  lv.back() = lambda.coords;
  for (int l = static_cast<int>(g.levels.size()) - 2; l >= 0; --l) {
    const std::vector<double>& up = lv[l + 1];
    const LevelInfo& info = g.levels[l];
    std::vector<double> w(info.length);
    auto at = [&](int j, bool absval) {
      if (j >= static_cast<int>(up.size())) return 0.0;
      return absval ? std::fabs(up[j]) : up[j];
    };
    for (int j = 0; j < info.length; ++j) {
      if (ctx.field == Field::R && info.signed_last && j == info.length - 1) {
        w[j] = 0.0;
      } else if (ctx.field == Field::C) {
        w[j] = 0.5 * (up[j] + up[j + 1]);
      } else {
        bool absval = ctx.field == Field::R;
        w[j] = 0.5 * (at(j, absval) + at(j + 1, absval));
      }
    }
    lv[l] = w;
  }
  std::vector<double> x;
  for (std::size_t l = 0; l + 1 < lv.size(); ++l) x.insert(x.end(), lv[l].begin(), lv[l].end());
  return x;
}

}  // namespace

GTWalker::GTWalker(const RadialPoint& lambda)
    : lambda_(lambda), cons_(gt_constraints(lambda)), x_(midpoint_start(lambda)) {
  if (!lambda.in_chamber(0.0)) throw DomainError("lambda is not in the Weyl chamber");
  double scale = 1.0;
  for (double v : lambda.coords) scale = std::max(scale, std::fabs(v));
  for (const auto& c : cons_) {
    if (c.eval(x_) <= 1e-12 * scale)
      throw DegenerateInput(
          "GT polytope has empty interior (repeated or boundary entries in lambda); "
          "use the spectral sampler");
  }
}

void GTWalker::step(Rng& rng) {
  const int d = dimension();
  if (d == 0) return;
  std::vector<double> dir(d);
  double nrm = 0;
  for (double& v : dir) {
    v = rng.normal();
    nrm += v * v;
  }
  nrm = std::sqrt(nrm);
  for (double& v : dir) v /= nrm;
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  for (const auto& c : cons_) {
    double a = 0;
    for (const auto& [i, coef] : c.terms) a += coef * dir[i];
    if (a == 0.0) continue;
    double t = -c.eval(x_) / a;
    if (a > 0)
      tmin = std::max(tmin, t);
    else
      tmax = std::min(tmax, t);
  }
  if (!(tmax >= tmin)) return;
  double t = tmin + (tmax - tmin) * rng.uniform();
  for (int i = 0; i < d; ++i) x_[i] += t * dir[i];
}

void GTWalker::run(Rng& rng, long steps) {
  for (long s = 0; s < steps; ++s) step(rng);
}

GTPattern sample_uniform_walk(const RadialPoint& lambda, Rng& rng, long steps) {
  GTWalker w(lambda);
  w.run(rng, std::max(steps, w.burn_in()));
  return w.pattern();
}

std::vector<GTPattern> sample_uniform_walk_chain(const RadialPoint& lambda, Rng& rng,
                                                 int count) {
  GTWalker w(lambda);
  w.run(rng, w.burn_in());
  std::vector<GTPattern> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    w.run(rng, GTWalker::thinning);
    out.push_back(w.pattern());
  }
  return out;
}

namespace {

bool interlaced(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] > x[j]) return false;
    if (j + 1 < x.size() && y[j] < x[j + 1]) return false;
  }
  return true;
}

std::vector<double> absolute(std::vector<double> v) {
  for (double& a : v) a = std::fabs(a);
  return v;
}

}  // namespace

double mu_lambda_density(const RadialPoint& lambda, const std::vector<double>& beta) {
  const FieldContext& ctx = lambda.ctx;
  if (ctx.n < 2) throw DomainError("mu_lambda needs n >= 2");
  FieldContext sub = FieldContext::make(ctx.field, ctx.n - 1);
  if (static_cast<int>(beta.size()) != sub.n_tilde)
    throw DomainError("beta must have " + std::to_string(sub.n_tilde) + " coordinates");
  RadialPoint b(sub, beta);
  if (!b.in_chamber(0.0)) return 0.0;
  if (lambda.interior()) {
    double ratio = asym_dim(b) / asym_dim(lambda);
    switch (ctx.field) {
      case Field::C:
        return interlaced(lambda.coords, beta) ? ratio : 0.0;
      case Field::R:
        return interlaced(absolute(lambda.coords), absolute(beta)) ? ratio : 0.0;
      case Field::H: {
        const int n = ctx.n;
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double bj = j < n - 1 ? beta[j] : 0.0;
            m(i, j) = lambda[i] >= bj ? lambda[i] - bj : 0.0;
          }
        return ratio * std::max(0.0, m.determinant());
      }
    }
  }
  // rank one (theta, 0, ..., 0)
  for (int i = 1; i < lambda.size(); ++i)
    if (lambda[i] != 0.0)
      throw UnsupportedCase("mu_lambda density is implemented for interior or rank-one lambda");
  const double th = lambda.size() > 0 ? lambda[0] : 0.0;
  if (th <= 0.0) throw UnsupportedCase("mu_lambda of lambda = 0 is a point mass");
  for (std::size_t i = 1; i < beta.size(); ++i)
    if (beta[i] != 0.0) return 0.0;
  if (beta.empty()) return 1.0;
  double x = std::fabs(beta[0]);
  if (x > th || (beta[0] < 0 && sub.chamber != Chamber::D)) return 0.0;
  const int n = ctx.n;
  switch (ctx.field) {
    case Field::C:
      return (n - 1) * std::pow(x, n - 2) / std::pow(th, n - 1);
    case Field::R: {
      double g = (n - 2) * std::pow(x, n - 3) / std::pow(th, n - 2);
      // one signed coordinate (n = 3): the mass spreads over [-theta, theta]
      return sub.n_tilde == 1 && sub.chamber == Chamber::D ? 0.5 * g : g;
    }
    case Field::H:
      return (2.0 * n - 2) * (2.0 * n - 1) * std::pow(x, 2 * n - 3) / std::pow(th, 2 * n - 1) *
             (th - x);
  }
  return 0.0;
}

}  // namespace orbit
