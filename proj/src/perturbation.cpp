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


#include "orbit/perturbation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "orbit/error.hpp"
#include "orbit/weyl.hpp"

namespace orbit {

namespace {

RadialPoint rank_one(const FieldContext& ctx, double theta) {
  std::vector<double> x(ctx.n_tilde, 0.0);
  if (!x.empty()) x[0] = theta;
  return RadialPoint(ctx, x);
}

// constant K with f_Theta = K d_n(theta) e^{-c theta}
double rank_one_constant(const FieldContext& ctx) {
  switch (ctx.field) {
    case Field::C: return 1.0;
    case Field::R: return ctx.n == 2 ? 1.0 : 0.5;  // d_2 = 1, not 2 theta^0 / 0!
    case Field::H: return std::ldexp(1.0, 2 * ctx.n);
  }
  return 1.0;
}

void require_rank_one_ok(const FieldContext& ctx) {
  if (ctx.field == Field::R && ctx.n < 2)
    throw DomainError("rank-one perturbation over R needs n >= 2");
}

bool interlaced(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j < x.size() && y[j] > x[j] + tol) return false;
    if (j + 1 < x.size() && y[j] < x[j + 1] - tol) return false;
  }
  return true;
}

// Intervals for z: [max(l_{i+1}, b_{i+1}), min(l_i, b_i)], padded by 0; for
// R even the last one is [max(|l_r|, |b_r|), min(l_{r-1}, b_{r-1})].
struct ZBox {
  std::vector<double> lo, hi;
};

ZBox z_box(const FieldContext& ctx, const std::vector<double>& l, const std::vector<double>& b) {
  ZBox box;
  const int r = ctx.n_tilde;
  const bool d_type = ctx.chamber == Chamber::D;
  const int m = d_type ? r - 1 : r;
  auto at = [&](const std::vector<double>& v, int i) { return i < r ? v[i] : 0.0; };
  for (int i = 0; i < m; ++i) {
    double lo = (d_type && i == m - 1) ? std::max(std::fabs(l[r - 1]), std::fabs(b[r - 1]))
                                       : std::max(at(l, i + 1), at(b, i + 1));
    box.lo.push_back(std::max(lo, 0.0));
    box.hi.push_back(std::min(l[i], b[i]));
  }
  return box;
}

// sum_{i<m}(l_i + b_i) (+ |l_r - b_r| for D); theta = T - 2 sum z
double trace_part(const FieldContext& ctx, const std::vector<double>& l,
                  const std::vector<double>& b) {
  const int r = ctx.n_tilde;
  double t = 0;
  if (ctx.chamber == Chamber::D) {
    for (int i = 0; i + 1 < r; ++i) t += l[i] + b[i];
    t += std::fabs(l[r - 1] - b[r - 1]);
  } else {
    for (int i = 0; i < r; ++i) t += l[i] + b[i];
  }
  return t;
}

// (m-1)-volume of {y in prod [0, w_i] : sum y = s}, projected on m-1 axes
double irwin_hall_slice(const std::vector<double>& w, double s) {
  const int m = static_cast<int>(w.size());
  if (m == 0) return 0.0;
  double fact = boost::math::factorial<double>(m - 1);
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    double t = s;
    int bits = 0;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1u) {
        t -= w[i];
        ++bits;
      }
    if (t <= 0) continue;
    double term = m == 1 ? 1.0 : std::pow(t, m - 1) / fact;
    total += bits % 2 ? -term : term;
  }
  return std::max(total, 0.0);
}

int nonzero_count(const RadialPoint& lambda) {
  int k = 0;
  for (int i = 0; i < lambda.size(); ++i)
    if (lambda[i] != 0.0) k = i + 1;
  return k;
}

// lambda = (l_1 > ... > l_k > 0, 0, ...), with the signed-last variant for D
void require_perturb_shape(const RadialPoint& lambda) {
  const int k = nonzero_count(lambda);
  const int r = lambda.size();
  for (int i = 0; i < k; ++i) {
    bool signed_last = lambda.ctx.chamber == Chamber::D && i == r - 1;
    if (!signed_last && !(lambda[i] > 0.0))
      throw UnsupportedCase("nu_lambda needs lambda = (l_1 > ... > l_k > 0, 0, ..., 0)");
    if (i + 1 < k) {
      double next = (lambda.ctx.chamber == Chamber::D && i + 1 == r - 1) ? std::fabs(lambda[i + 1])
                                                                          : lambda[i + 1];
      if (!(lambda[i] > next))
        throw UnsupportedCase("nu_lambda needs distinct nonzero entries in lambda");
    }
  }
}

}  // namespace

double rank_one_radial_sample(const FieldContext& ctx, Rng& rng) {
  require_rank_one_ok(ctx);
  switch (ctx.field) {
    case Field::C: return rng.gamma(ctx.n, 1.0);
    case Field::R: return rng.gamma(ctx.n - 1, 1.0);
    case Field::H: return rng.gamma(2.0 * ctx.n, 2.0);
  }
  return 0.0;
}

double rank_one_matrix_sample(const FieldContext& ctx, Rng& rng) {
  require_rank_one_ok(ctx);
  StructuredMatrix m = sample_gaussian_rectangular(ctx, ctx.n, rng);
  RadialPoint r = radial_part(sandwich(m, omega_ones(ctx, 1)));
  return std::fabs(r[0]);
}

double rank_one_density(const FieldContext& ctx, double theta) {
  require_rank_one_ok(ctx);
  if (theta <= 0) return 0.0;
  return rank_one_constant(ctx) * asym_dim(rank_one(ctx, theta)) * std::exp(-ctx.c * theta);
}

RadialPoint perturb_spectral_sample(const RadialPoint& lambda, double theta, Rng& rng) {
  if (theta < 0) throw DomainError("theta must be >= 0");
  if (theta == 0.0) return lambda;
  StructuredMatrix u = sample_haar_unitary(lambda.ctx, rng);
  StructuredMatrix p = conjugate(u, omega(rank_one(lambda.ctx, theta)));
  return radial_part(add(omega(lambda), p));
}

RadialPoint perturb_gaussian_sample(const RadialPoint& lambda, Rng& rng) {
  const FieldContext& ctx = lambda.ctx;
  require_rank_one_ok(ctx);
  StructuredMatrix m = sample_gaussian_rectangular(ctx, ctx.n, rng);
  return radial_part(add(omega(lambda), sandwich(m, omega_ones(ctx, 1))));
}

std::optional<PerturbWitness> e_set_witness(const RadialPoint& lambda, double theta,
                                            const RadialPoint& beta, double tol) {
  const FieldContext& ctx = lambda.ctx;
  if (!(beta.ctx == ctx)) throw DomainError("lambda and beta live over different contexts");
  const auto& l = lambda.coords;
  const auto& b = beta.coords;
  PerturbWitness w;
  w.beta = beta;
  if (ctx.field == Field::C) {
    if (!interlaced(b, l, tol)) return std::nullopt;
    double t = 0;
    for (int i = 0; i < ctx.n; ++i) t += b[i] - l[i];
    if (t < -tol || (theta >= 0 && std::fabs(t - theta) > tol * std::max(1.0, theta)))
      return std::nullopt;
    w.theta = t;
    return w;
  }
  if (!beta.in_chamber(tol)) return std::nullopt;
  ZBox box = z_box(ctx, l, b);
  double slo = 0, shi = 0;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (box.lo[i] > box.hi[i] + tol) return std::nullopt;
    box.hi[i] = std::max(box.hi[i], box.lo[i]);
    slo += box.lo[i];
    shi += box.hi[i];
  }
  const double tr = trace_part(ctx, l, b);
  const bool odd = ctx.field == Field::R && ctx.epsilon == 1;
  std::vector<int> bits{0};
  if (odd && l.back() != 0.0) bits.push_back(1);
  for (int s : bits) {
    // sum z = (tr + s - theta) / 2
    double target;
    if (theta >= 0) {
      target = 0.5 * (tr + s - theta);
      if (target < slo - tol || target > shi + tol) continue;
      target = std::clamp(target, slo, shi);
    } else {
      target = 0.5 * (slo + shi);
    }
    double f = shi > slo ? (target - slo) / (shi - slo) : 0.0;
    w.z.clear();
    for (std::size_t i = 0; i < box.lo.size(); ++i) w.z.push_back(box.lo[i] + f * (box.hi[i] - box.lo[i]));
    double zs = 0;
    for (double v : w.z) zs += v;
    w.theta = tr + s - 2 * zs;
    if (w.theta < -tol) continue;
    w.s = odd ? s : -1;
    return w;
  }
  return std::nullopt;
}

double nu_lambda_theta_density(const RadialPoint& lambda, double theta,
                               const std::vector<double>& beta) {
  const FieldContext& ctx = lambda.ctx;
  if (!lambda.interior())
    throw UnsupportedCase("nu_{lambda,theta} density needs lambda in the open chamber");
  if (!(theta > 0)) throw DomainError("theta must be > 0");
  if (ctx.field == Field::R && ctx.n == 2)
    throw UnsupportedCase("nu_{lambda,theta} for R with n = 2 is a point mass pair");
  if (static_cast<int>(beta.size()) != ctx.n_tilde)
    throw DomainError("beta must have " + std::to_string(ctx.n_tilde) + " coordinates");
  RadialPoint b(ctx, beta);
  if (!b.in_chamber(0.0)) return 0.0;
  const double dl = asym_dim(lambda), dt = asym_dim(rank_one(ctx, theta));
  if (ctx.field == Field::C) {
    if (!interlaced(beta, lambda.coords, 0.0)) return 0.0;
    double t = 0;
    for (int i = 0; i < ctx.n; ++i) t += beta[i] - lambda[i];
    if (std::fabs(t - theta) > 1e-9 * std::max(1.0, theta)) return 0.0;
    return asym_dim(b) / (dl * dt);
  }
  ZBox box = z_box(ctx, lambda.coords, beta);
  std::vector<double> w;
  double slo = 0;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (box.lo[i] > box.hi[i]) return 0.0;
    w.push_back(box.hi[i] - box.lo[i]);
    slo += box.lo[i];
  }
  double s = 0.5 * (trace_part(ctx, lambda.coords, beta) - theta) - slo;
  double slice = irwin_hall_slice(w, s);
  // lattice covolume of the slice: 2 unless the bit s absorbs the parity
  double cov = (ctx.field == Field::R && ctx.epsilon == 1) ? 1.0 : 2.0;
  return asym_dim(b) * slice / (cov * dl * dt);
}

int nu_lambda_support_dim(const RadialPoint& lambda) {
  return std::min(nonzero_count(lambda) + 1, lambda.ctx.n_tilde);
}

double nu_lambda_density(const RadialPoint& lambda, const std::vector<double>& beta) {
  const FieldContext& ctx = lambda.ctx;
  require_rank_one_ok(ctx);
  if (ctx.field == Field::R && ctx.n == 2)
    throw UnsupportedCase("nu_lambda for R with n = 2 has no z coordinates");
  if (static_cast<int>(beta.size()) != ctx.n_tilde)
    throw DomainError("beta must have " + std::to_string(ctx.n_tilde) + " coordinates");
  require_perturb_shape(lambda);
  const int k = nonzero_count(lambda);
  const int dim = nu_lambda_support_dim(lambda);
  for (int i = dim; i < ctx.n_tilde; ++i)
    if (beta[i] != 0.0) return 0.0;
  RadialPoint b(ctx, beta);
  if (!b.in_chamber(0.0)) return 0.0;
  if (k == 0) return beta.empty() ? 1.0 : rank_one_density(ctx, beta[0]);
  const double kf = rank_one_constant(ctx);
  const double ratio = asym_dim(b) / asym_dim(lambda);
  const double c = ctx.c;
  if (ctx.field == Field::C) {
    if (!interlaced(beta, lambda.coords, 0.0)) return 0.0;
    double t = 0;
    for (int i = 0; i < ctx.n; ++i) t += beta[i] - lambda[i];
    return kf * ratio * std::exp(-t);
  }
  const auto& l = lambda.coords;
  ZBox box = z_box(ctx, l, beta);
  double prod = 1.0;
  int free_count = 0;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    if (l[i] == 0.0) {
      // z_i pinned at 0
      if (box.lo[i] > 0.0 || box.hi[i] < 0.0) return 0.0;
      prod *= std::exp(-c * (l[i] + beta[i]));
      continue;
    }
    if (box.lo[i] > box.hi[i]) return 0.0;
    ++free_count;
    double hi = box.hi[i], lo = box.lo[i];
    prod *= std::exp(-c * (l[i] + beta[i] - 2 * hi)) * -std::expm1(-2 * c * (hi - lo)) / (2 * c);
  }
  if (ctx.chamber == Chamber::D) {
    const int r = ctx.n_tilde;
    prod *= std::exp(-c * std::fabs(l[r - 1] - beta[r - 1]));
  }
  if (free_count == 0) throw NumericalFailure("nu_lambda: no free z coordinate", 0.0);
  double cov = (ctx.field == Field::R && ctx.epsilon == 1 && l.back() != 0.0) ? 1.0 : 2.0;
  return kf * (2.0 / cov) * ratio * prod;
}

std::vector<RadialPoint> lue_chain(const FieldContext& ctx, int k, Rng& rng,
                                   const RadialPoint& start) {
  if (k < 1) throw DomainError("chain length k must be >= 1");
  if (!(start.ctx == ctx)) throw DomainError("start point lives over a different context");
  require_rank_one_ok(ctx);
  StructuredMatrix s = omega(start);
  StructuredMatrix one = omega_ones(ctx, 1);
  std::vector<RadialPoint> out;
  for (int j = 0; j < k; ++j) {
    StructuredMatrix m = sample_gaussian_rectangular(ctx, ctx.n, rng);
    s = add(s, sandwich(m, one));
    out.push_back(radial_part(s));
  }
  return out;
}

int lue_rank(const FieldContext& ctx, int k) {
  FieldContext kc = FieldContext::make(ctx.field, k);
  return std::min(ctx.n_tilde, kc.n_tilde);
}

RadialPoint lue_sample(const FieldContext& ctx, int k, Rng& rng) {
  FieldContext kc = FieldContext::make(ctx.field, k);
  StructuredMatrix m = sample_gaussian_rectangular(ctx, k, rng);
  return radial_part(sandwich(m, omega_ones(kc, kc.n_tilde)));
}

std::vector<double> lue_positive_eigenvalues(const FieldContext& ctx, int k, Rng& rng) {
  RadialPoint r = lue_sample(ctx, k, rng);
  std::vector<double> x(r.coords.begin(), r.coords.begin() + lue_rank(ctx, k));
  for (double& v : x) v = std::fabs(v);
  std::sort(x.begin(), x.end(), std::greater<double>());
  return x;
}

namespace {

// d_n(lambda padded with zeros) = ratio * det(lambda_i^{e_j}), e_j = step (j-1) + base
struct PaddedDim {
  std::vector<int> exps;
  double ratio = 1.0;
};

std::vector<double> pad(const FieldContext& ctx, const std::vector<double>& x) {
  std::vector<double> p(ctx.n_tilde, 0.0);
  std::copy(x.begin(), x.end(), p.begin());
  return p;
}

double power_det(const std::vector<double>& x, const std::vector<int>& e) {
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = std::pow(x[i], e[j]);
  return a.determinant();
}

PaddedDim padded_dim(const FieldContext& ctx, int m) {
  PaddedDim pd;
  int step = ctx.field == Field::C ? 1 : 2;
  int base = 0;
  switch (ctx.field) {
    case Field::C: base = ctx.n - m; break;
    case Field::H: base = 2 * (ctx.n - m) + 1; break;
    case Field::R: base = 2 * (ctx.n_tilde - m) + ctx.epsilon; break;
  }
  for (int j = 0; j < m; ++j) pd.exps.push_back(step * j + base);
  std::vector<double> probe(m);
  for (int i = 0; i < m; ++i) probe[i] = 0.5 + 0.37 * (m - i);
  pd.ratio = asym_dim(ctx, pad(ctx, probe)) / power_det(probe, pd.exps);
  return pd;
}

double vandermonde(const std::vector<double>& x) {
  double v = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
  return v;
}

bool positive_decreasing(const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) return false;
    if (i + 1 < x.size() && x[i] < x[i + 1]) return false;
  }
  return true;
}

std::mutex cache_mu;
std::map<std::tuple<int, int, int>, double> lue_cache;

}  // namespace

double lue_normalizer(const FieldContext& ctx, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  auto key = std::make_tuple(static_cast<int>(ctx.field), ctx.n, k);
  {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = lue_cache.find(key);
    if (it != lue_cache.end()) return it->second;
  }
  const int m = lue_rank(ctx, k);
  FieldContext kc = FieldContext::make(ctx.field, k);
  const int a = std::max(kc.n_tilde - ctx.n_tilde, 0);
  PaddedDim pd = padded_dim(ctx, m);
  // d_n * Delta = ratio * det(x^{e_i}) * det(x^{j-1}) * (-1)^{m(m-1)/2}
  double sign = (m * (m - 1) / 2) % 2 ? -1.0 : 1.0;
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double p = pd.exps[i] + j + a + 1.0;
      g(i, j) = std::exp(std::lgamma(p) - p * std::log(static_cast<double>(ctx.c)));
    }
  double z = std::fabs(sign * pd.ratio * g.determinant());
  std::lock_guard<std::mutex> lk(cache_mu);
  lue_cache.emplace(key, z);
  return z;
}

double lue_density(const FieldContext& ctx, int k, const std::vector<double>& lambda) {
  const int m = lue_rank(ctx, k);
  if (static_cast<int>(lambda.size()) != m)
    throw DomainError("lue density needs " + std::to_string(m) + " eigenvalues");
  if (!positive_decreasing(lambda)) return 0.0;
  FieldContext kc = FieldContext::make(ctx.field, k);
  const int a = std::max(kc.n_tilde - ctx.n_tilde, 0);
  double v = asym_dim(ctx, pad(ctx, lambda)) * vandermonde(lambda);
  for (double x : lambda) v *= std::pow(x, a) * std::exp(-ctx.c * x);
  return v / lue_normalizer(ctx, k);
}

double lue_matrix_log_density(const FieldContext& ctx, int k, const StructuredMatrix& h) {
  if (!(h.ctx == ctx) || h.kind != MatrixKind::hermitian_P)
    throw DomainError("lue_matrix_log_density needs a Hermitian matrix over the same context");
  if (k < ctx.n) throw DomainError("matrix density exists only for k >= n");
  RadialPoint r = radial_part(h);
  std::vector<double> x = r.coords;
  const double ninf = -std::numeric_limits<double>::infinity();
  double s = 0;
  switch (ctx.field) {
    case Field::C:
      for (double v : x) {
        if (!(v > 0)) return ninf;
        s += (k - ctx.n) * std::log(v) - v;
      }
      return s;
    case Field::H:
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0)) return ninf;
        for (std::size_t j = i + 1; j < x.size(); ++j) s -= std::log(x[i] + x[j]);
        s += (k - ctx.n - 1) * std::log(x[i]) - 2 * x[i];
      }
      return s;
    case Field::R: {
      FieldContext kc = FieldContext::make(Field::R, k);
      for (double& v : x) v = std::fabs(v);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0)) return ninf;
        for (std::size_t j = i + 1; j < x.size(); ++j) s -= std::log(x[i] + x[j]);
        s += (kc.n_tilde - ctx.n_tilde - ctx.epsilon) * std::log(x[i]) - x[i];
      }
      return s;
    }
  }
  return s;
}

double wishart_general_density(const FieldContext& ctx, int k, const std::vector<double>& alpha,
                               const std::vector<double>& lambda) {
  FieldContext kc = FieldContext::make(ctx.field, k);
  const int m = kc.n_tilde;
  if (k > ctx.n) throw DomainError("wishart_general_density needs k <= n");
  if (static_cast<int>(alpha.size()) != m || static_cast<int>(lambda.size()) != m)
    throw DomainError("alpha and lambda need " + std::to_string(m) + " coordinates");
  for (int i = 0; i < m; ++i)
    if (!(alpha[i] > 0) || (i + 1 < m && !(alpha[i] > alpha[i + 1])))
      throw UnsupportedCase("alpha must be strictly decreasing and positive");
  if (!positive_decreasing(lambda)) return 0.0;
  const double c = ctx.c;
  PaddedDim pd = padded_dim(ctx, m);
  Eigen::MatrixXd g(m, m), e(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double p = pd.exps[i] + 1.0;
      g(i, j) = std::exp(std::lgamma(p) + p * std::log(alpha[j] / c));
      e(i, j) = std::exp(-c * lambda[i] / alpha[j]);
    }
  double z = pd.ratio * g.determinant();
  return asym_dim(ctx, pad(ctx, lambda)) * e.determinant() / z;
}

std::vector<double> wishart_general_sample(const FieldContext& ctx, int k,
                                           const std::vector<double>& alpha, Rng& rng) {
  FieldContext kc = FieldContext::make(ctx.field, k);
  StructuredMatrix m = sample_gaussian_rectangular(ctx, k, rng);
  RadialPoint r = radial_part(sandwich(m, omega(RadialPoint(kc, alpha))));
  std::vector<double> x(r.coords.begin(), r.coords.begin() + std::min(kc.n_tilde, ctx.n_tilde));
  for (double& v : x) v = std::fabs(v);
  std::sort(x.begin(), x.end(), std::greater<double>());
  return x;
}

std::complex<double> lue_char_exact(const FieldContext& ctx, int k, const StructuredMatrix& n) {
  if (!(n.ctx == ctx)) throw DomainError("N lives over a different context");
  FieldContext kc = FieldContext::make(ctx.field, k);
  const int a = ctx.ambient();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(a, a) +
                       std::complex<double>(0.0, 1.0 / ctx.c) * n.data;
  std::complex<double> d = m.partialPivLu().determinant();
  std::complex<double> inv = 1.0 / d, out = 1.0;
  for (int i = 0; i < kc.n_tilde; ++i) out *= inv;
  return out;
}

}  // namespace orbit
