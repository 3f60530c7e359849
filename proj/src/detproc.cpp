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


#include "orbit/detproc.hpp"

#include <algorithm>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <cmath>
#include <limits>

#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"

namespace orbit {

namespace {

double factorial(int k) { return boost::math::factorial<double>(static_cast<unsigned>(k)); }
double binom(int n, int k) {
  return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                   static_cast<unsigned>(k));
}

// generalized Laguerre L_k^{(alpha)}, standard normalization
double laguerre_std(int k, double alpha, double x) {
  if (k < 0) return 0.0;
  double p0 = 1.0;
  if (k == 0) return p0;
  double p1 = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    double p2 = ((2 * j + 1 + alpha - x) * p1 - (j + alpha) * p0) / (j + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

// ---- PolynomialBasis ----

PolynomialBasis PolynomialBasis::hermite() { return PolynomialBasis{}; }

PolynomialBasis PolynomialBasis::laguerre(double alpha) {
  if (alpha <= -1.0) throw DomainError("Laguerre weight needs alpha > -1");
  PolynomialBasis b;
  b.kind_ = Kind::laguerre;
  b.alpha_ = alpha;
  return b;
}

PolynomialBasis PolynomialBasis::monomial() {
  PolynomialBasis b;
  b.kind_ = Kind::monomial;
  return b;
}

double PolynomialBasis::a(int k) const {
  return kind_ == Kind::laguerre ? 2.0 * k + alpha_ + 1.0 : 0.0;
}

double PolynomialBasis::b(int k) const {
  if (k <= 0) return 0.0;
  switch (kind_) {
    case Kind::hermite: return std::sqrt(static_cast<double>(k));
    case Kind::laguerre: return std::sqrt(k * (k + alpha_));
    case Kind::monomial: return 0.0;
  }
  return 0.0;
}

std::vector<double> PolynomialBasis::values(int deg, double x) const {
  std::vector<double> p(deg + 1);
  if (kind_ == Kind::monomial) {
    double v = 1.0;
    for (int k = 0; k <= deg; ++k, v *= x) p[k] = v;
    return p;
  }
  p[0] = kind_ == Kind::hermite ? std::pow(2.0 * M_PI, -0.25)
                                : std::exp(-0.5 * std::lgamma(alpha_ + 1.0));
  if (deg >= 1) p[1] = (x - a(0)) * p[0] / b(1);
  for (int k = 1; k < deg; ++k) p[k + 1] = ((x - a(k)) * p[k] - b(k) * p[k - 1]) / b(k + 1);
  return p;
}

double PolynomialBasis::operator()(int k, double x) const { return values(k, x)[k]; }

double PolynomialBasis::derivative(int k, int d, double x) const {
  if (d == 0) return (*this)(k, x);
  if (d > k) return 0.0;
  switch (kind_) {
    case Kind::hermite:
      // h_k' = sqrt(k) h_{k-1}
      return std::sqrt(factorial(k) / factorial(k - d)) * (*this)(k - d, x);
    case Kind::laguerre: {
      double nu = std::exp(0.5 * (std::lgamma(k + alpha_ + 1.0) - std::lgamma(k + 1.0)));
      double sign = (k + d) % 2 ? -1.0 : 1.0;
      return sign * laguerre_std(k - d, alpha_ + d, x) / nu;
    }
    case Kind::monomial:
      return factorial(k) / factorial(k - d) * std::pow(x, k - d);
  }
  return 0.0;
}

double PolynomialBasis::weight(double x) const {
  switch (kind_) {
    case Kind::hermite: return std::exp(-0.5 * x * x);
    case Kind::laguerre: return x < 0 ? 0.0 : std::pow(x, alpha_) * std::exp(-x);
    case Kind::monomial: return 1.0;
  }
  return 0.0;
}

double PolynomialBasis::support_lo() const { return kind_ == Kind::laguerre ? 0.0 : -kInf; }

// ---- interlacing ----

namespace {

void require_strict(const std::vector<double>& v, const char* name) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] == v[i + 1]) throw DegenerateInput(std::string("tie inside ") + name);
    if (v[i] < v[i + 1]) throw DomainError(std::string(name) + " is not decreasing");
  }
}

}  // namespace

bool interlaces_direct(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(x[i] > y[i])) return false;
    if (i + 1 < x.size() && !(y[i] > x[i + 1])) return false;
  }
  return true;
}

int interlace_indicator_det(const std::vector<double>& x, const std::vector<double>& y) {
  if (y.size() != x.size() && y.size() + 1 != x.size())
    throw DomainError("interlacing needs |y| = |x| or |x| - 1");
  require_strict(x, "x");
  require_strict(y, "y");
  for (double a : x)
    for (double b : y)
      if (a == b) throw DegenerateInput("x and y share a value");
  const int k = static_cast<int>(x.size());
  std::vector<double> yy = y;
  if (static_cast<int>(yy.size()) < k) yy.push_back(-kInf);
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = x[i] > yy[j] ? 1.0 : 0.0;
  const int det = static_cast<int>(std::lround(m.determinant()));
  const int direct = interlaces_direct(x, y) ? 1 : 0;
  if (det != direct) throw NumericalFailure("interlacing determinant disagrees", det - direct);
  return det;
}

// ---- Cauchy-Binet ----

CauchyBinetCheck cauchy_binet(const std::vector<Integrand>& phi, const std::vector<Integrand>& psi,
                              const Measure& m, double rel_tol) {
  const int n = static_cast<int>(phi.size());
  if (n == 0 || static_cast<int>(psi.size()) != n) throw DomainError("need n phi and n psi");
  if (n > 3) throw InstanceTooLarge("Cauchy-Binet check is limited to n <= 3");
  auto w = [&](double x) { return m.density ? m.density(x) : 1.0; };

  CauchyBinetCheck out;
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = integrate([&](double x) { return phi[i](x) * psi[j](x) * w(x); }, m.lo, m.hi,
                          rel_tol);
  out.lhs = g.determinant();

  std::vector<double> pts(n);
  std::function<double(int)> nest = [&](int depth) -> double {
    if (depth == n) {
      Eigen::MatrixXd a(n, n), b(n, n);
      double wt = 1.0;
      for (int j = 0; j < n; ++j) {
        wt *= w(pts[j]);
        for (int i = 0; i < n; ++i) {
          a(i, j) = phi[i](pts[j]);
          b(i, j) = psi[i](pts[j]);
        }
      }
      return a.determinant() * b.determinant() * wt;
    }
    return integrate(
        [&, depth](double x) {
          pts[depth] = x;
          return nest(depth + 1);
        },
        m.lo, m.hi, rel_tol);
  };
  out.rhs = nest(0) / factorial(n);
  return out;
}

// ---- CorrelationKernel ----

int CorrelationKernel::expected_count(int r) const {
  for (std::size_t i = 0; i < spec_.levels.size(); ++i)
    if (spec_.levels[i] == r) return spec_.counts[i];
  throw DomainError("level " + std::to_string(r) + " is not a level of " + spec_.name);
}

std::string CorrelationKernel::reference_measure() const {
  return "counting on levels " + std::to_string(spec_.levels.front()) + ".." +
         std::to_string(spec_.levels.back()) + " x Lebesgue on " +
         (spec_.half_line ? "R_+" : "R");
}

double level_count(const CorrelationKernel& k, int r, double rel_tol) {
  std::vector<double> pts{k.lo(), k.hi()};
  for (double b : k.breakpoints())
    if (b > k.lo() && b < k.hi()) pts.push_back(b);
  return integrate_pieces([&](double x) { return k(r, x, r, x); }, pts, rel_tol);
}

// ---- triangular kernels ----

namespace {

std::vector<int> chi_exponents(const FieldContext& ctx) {
  std::vector<int> e;
  switch (ctx.field) {
    case Field::C:
      for (int i = 1; i <= ctx.n; ++i) e.push_back(i - 1);
      break;
    case Field::R:
      for (int i = 1; i <= ctx.n_tilde; ++i) e.push_back(2 * i - 2 + ctx.epsilon);
      break;
    case Field::H:
      for (int i = 1; i <= ctx.n; ++i) e.push_back(2 * i - 1);
      break;
  }
  return e;
}

int minor_count(const FieldContext& ctx, int r) { return ctx.field == Field::R ? r / 2 : r; }

// first z (of a doubling probe) past which every |psi_j| (1 + z)^deg is
// below the double-precision floor; infinite if none is found
double tail_cutoff(const std::vector<Integrand>& psi, int deg) {
  for (double z = 4.0; z <= 4096.0; z *= 2.0) {
    bool small = true;
    for (double t : {z, 1.25 * z, 1.5 * z, 2.0 * z})
      for (const auto& f : psi)
        if (std::fabs(f(t)) * std::pow(1.0 + t, deg) > 1e-300) small = false;
    if (small) return z;
  }
  return kInf;
}

struct TriangularData {
  FieldContext ctx;
  std::vector<Integrand> psi;
  std::vector<int> exps;
  Eigen::MatrixXd ginv;
  double scale = 1.0;  // chi_i = scale h_{e_i}
  double lo = 0.0, hi = 0.0;

  double first_term(int r, double x, int s, double y) const {
    if (s <= r || y < x) return 0.0;
    int d = ctx.c * (s - r);
    return -std::pow(y - x, d - 1) / factorial(d - 1);
  }

  double psi_lift(int k, int r, double x) const {
    if (r == ctx.n) return psi[k](x);
    const int d = ctx.c * (ctx.n - r);
    const double a = std::max(x, lo);
    if (a >= hi) return 0.0;
    const double fd = factorial(d - 1);
    return integrate([&](double z) { return std::pow(z - x, d - 1) / fd * psi[k](z); }, a, hi,
                     1e-13);
  }

  double operator()(int r, double x, int s, double y) const {
    const int m = static_cast<int>(exps.size());
    const int d = ctx.c * (ctx.n - s);
    PolynomialBasis h = PolynomialBasis::hermite();
    std::vector<double> chi(m);
    for (int i = 0; i < m; ++i) chi[i] = scale * h.derivative(exps[i], d, y);
    double v = first_term(r, x, s, y);
    for (int k = 0; k < m; ++k) {
      double phi = 0.0;
      for (int i = 0; i < m; ++i) phi += ginv(k, i) * chi[i];
      if (phi != 0.0) v += psi_lift(k, r, x) * phi;
    }
    return v;
  }
};

CorrelationKernel build_triangular(const FieldContext& ctx, std::vector<Integrand> psi,
                                   bool require_biorthogonal, const std::string& name) {
  auto data = std::make_shared<TriangularData>();
  data->ctx = ctx;
  data->exps = chi_exponents(ctx);
  const int m = static_cast<int>(data->exps.size());
  if (static_cast<int>(psi.size()) != m)
    throw DomainError("triangular kernel needs " + std::to_string(m) + " functions psi_i");
  data->psi = std::move(psi);
  const bool half = ctx.field != Field::C;
  data->scale = half ? std::sqrt(2.0) : 1.0;
  const int deg = data->exps.back() + ctx.c * ctx.n;
  const double t = tail_cutoff(data->psi, deg);
  data->hi = t;
  data->lo = half ? 0.0 : -t;

  PolynomialBasis h = PolynomialBasis::hermite();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      g(i, j) = integrate(
          [&](double z) { return data->scale * h(data->exps[i], z) * data->psi[j](z); },
          data->lo, data->hi, 1e-13);
  const double defect = (g - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (defect < 1e-8) {
    data->ginv = Eigen::MatrixXd::Identity(m, m);
  } else {
    if (require_biorthogonal) throw NumericalFailure("chi and psi are not biorthogonal", defect);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const auto& sv = svd.singularValues();
    double cond = sv(m - 1) > 0 ? sv(0) / sv(m - 1) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) throw IllConditioned("triangular kernel Gram matrix", cond);
    data->ginv = g.colPivHouseholderQr().inverse();
  }

  CorrelationKernel::Spec spec;
  spec.name = name;
  for (int r = 1; r <= ctx.n; ++r) {
    spec.levels.push_back(r);
    spec.counts.push_back(minor_count(ctx, r));
  }
  spec.half_line = half;
  spec.lo = data->lo;
  spec.hi = data->hi;
  return CorrelationKernel(spec, [data](int r, double x, int s, double y) {
    return (*data)(r, x, s, y);
  });
}

}  // namespace

CorrelationKernel triangular_kernel(const FieldContext& ctx, std::vector<Integrand> psi) {
  return build_triangular(ctx, std::move(psi), false, "triangular/" + to_string(ctx.field));
}

std::vector<Integrand> gue_psi(const FieldContext& ctx) {
  std::vector<Integrand> out;
  const bool half = ctx.field != Field::C;
  const double s = half ? std::sqrt(2.0) : 1.0;
  for (int e : chi_exponents(ctx)) {
    out.push_back([e, s, half](double x) {
      if (half && x < 0) return 0.0;
      return s * PolynomialBasis::hermite()(e, x) * std::exp(-0.5 * x * x);
    });
  }
  return out;
}

CorrelationKernel gue_minor_kernel(const FieldContext& ctx) {
  return build_triangular(ctx, gue_psi(ctx), true, "gue_minor/" + to_string(ctx.field));
}

double top_level_density(const CorrelationKernel& k, const std::vector<double>& x) {
  const int top = k.levels().back();
  if (static_cast<int>(x.size()) != k.expected_count(top))
    throw DomainError("expected " + std::to_string(k.expected_count(top)) + " coordinates");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (k.half_line() && x[i] < 0) return 0.0;
    if (i > 0 && !(x[i] < x[i - 1])) return 0.0;
  }
  const int p = static_cast<int>(x.size());
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = k(top, x[i], top, x[j]);
  return p == 0 ? 1.0 : m.determinant();
}

namespace {

// J_j(x) = int_x^inf (z - x)^j e^{-z^2/2} dz, by the recursion
// J_j = (j - 1) J_{j-2} - x J_{j-1}
std::vector<double> gaussian_tail_moments(int jmax, double x) {
  std::vector<double> J(jmax + 1);
  J[0] = std::sqrt(M_PI / 2) * std::erfc(x / std::sqrt(2.0));
  if (jmax >= 1) J[1] = std::exp(-0.5 * x * x) - x * J[0];
  for (int j = 2; j <= jmax; ++j) J[j] = (j - 1) * J[j - 2] - x * J[j - 1];
  return J;
}

}  // namespace

CorrelationKernel guer_kernel(int n_max, IndicatorConvention conv) {
  if (n_max < 1) throw DomainError("guer_kernel needs n_max >= 1");
  const double h0 = std::pow(2.0 * M_PI, -0.25);
  auto eval = [conv, h0](int r, double x, int s, double y) {
    PolynomialBasis h = PolynomialBasis::hermite();
    double v = 0.0;
    int lo = conv == IndicatorConvention::stated ? r : s;
    int hi = conv == IndicatorConvention::stated ? s : r;
    if (lo < hi && y >= x) v -= std::pow(y - x, hi - lo - 1) / factorial(hi - lo - 1);
    const int rt = r / 2, st = s / 2;
    // h~ = sqrt(2) h is orthonormal on R_+, hence the factor 2
    const double gx = std::exp(-0.5 * x * x);
    for (int i = 1; i <= std::min(rt, st); ++i)
      v += 2.0 * std::sqrt(factorial(r - 2 * i) / factorial(s - 2 * i)) * h(s - 2 * i, y) *
           h(r - 2 * i, x) * gx;
    if (st > rt) {
      std::vector<double> J = gaussian_tail_moments(2 * st - r, x);
      for (int i = rt + 1; i <= st; ++i) {
        int j = 2 * i - r;  // number of antiderivatives of e^{-z^2/2}
        double tail = J[j - 1] / factorial(j - 1);
        v += 2.0 * h0 / std::sqrt(factorial(s - 2 * i)) * h(s - 2 * i, y) * tail;
      }
    }
    return v;
  };
  CorrelationKernel::Spec spec;
  spec.name = "guer";
  for (int r = 1; r <= n_max; ++r) {
    spec.levels.push_back(r);
    spec.counts.push_back(r / 2);
  }
  spec.half_line = true;
  spec.lo = 0.0;
  spec.hi = 14.0 + std::sqrt(2.0 * n_max);
  return CorrelationKernel(spec, eval);
}

// ---- rectangular kernel ----

namespace {

void require_rect_field(const FieldContext& ctx) {
  if (ctx.field == Field::R && ctx.n % 2 == 0)
    throw UnsupportedCase("rectangular kernel is not available for F = R with n even");
}

// moments E[L^q], q <= qmax, of a sum of s independent Laplace(b) variables
std::vector<double> laplace_sum_moments(int s, int qmax, double b) {
  std::vector<double> one(qmax + 1, 0.0), cur(qmax + 1, 0.0);
  for (int q = 0; q <= qmax; q += 2) one[q] = factorial(q) * std::pow(b, q);
  cur[0] = 1.0;
  for (int t = 0; t < s; ++t) {
    std::vector<double> nxt(qmax + 1, 0.0);
    for (int q = 0; q <= qmax; ++q)
      for (int a = 0; a <= q; ++a) nxt[q] += binom(q, a) * cur[a] * one[q - a];
    cur = nxt;
  }
  return cur;
}

// density of a sum of s independent Laplace(b) variables, as a difference
// of two Gamma(s, 1/b) variables
double laplace_sum_density(int s, double b, double u) {
  u = std::fabs(u);
  double sum = 0.0;
  for (int q = 0; q < s; ++q)
    sum += binom(s - 1, q) * std::pow(u, s - 1 - q) * factorial(s - 1 + q) *
           std::pow(b / 2, s + q);
  const double g = factorial(s - 1);
  return std::exp(-u / b) * sum / (g * g * std::pow(b, 2 * s));
}

std::vector<int> rect_exponents(const FieldContext& ctx) {
  std::vector<int> e;
  for (int i = 1; i <= ctx.n_tilde; ++i) e.push_back(ctx.field == Field::C ? i - 1 : 2 * i - 1);
  return e;
}

}  // namespace

double rect_phi_power(const FieldContext& ctx, int s, double x, double y) {
  require_rect_field(ctx);
  if (s <= 0) return 0.0;
  if (ctx.field == Field::C) {
    if (y < x) return 0.0;
    return std::pow(y - x, s - 1) / factorial(s - 1) * std::exp(-(y - x));
  }
  // phi(x, y) = g(x - y) - g(x + y), g(u) = e^{-c|u|}, so phi^{(s)} uses the
  // s-fold convolution g_s = (2/c)^s (Laplace(1/c) sum density)
  const double c = ctx.c;
  const double k = std::pow(2.0 / c, s);
  return k * (laplace_sum_density(s, 1.0 / c, x - y) - laplace_sum_density(s, 1.0 / c, x + y));
}

double rect_phi_power_monomial(const FieldContext& ctx, int s, int p, double x) {
  require_rect_field(ctx);
  if (s <= 0) return std::pow(x, p);
  double v = 0.0;
  if (ctx.field == Field::C) {
    // E[(x + T)^p], T ~ Gamma(s, 1)
    for (int q = 0; q <= p; ++q)
      v += binom(p, q) * std::pow(x, p - q) * std::exp(std::lgamma(s + q) - std::lgamma(s));
    return v;
  }
  // odd p: the odd extension of x^p convolved with g_s
  const double c = ctx.c;
  std::vector<double> mom = laplace_sum_moments(s, p, 1.0 / c);
  for (int q = 0; q <= p; q += 2) v += binom(p, q) * std::pow(x, p - q) * mom[q];
  return std::pow(2.0 / c, s) * v;
}

CorrelationKernel rectangular_kernel(const RadialPoint& lambda, int m) {
  const FieldContext ctx = lambda.ctx;
  require_rect_field(ctx);
  if (m < 1) throw DomainError("rectangular kernel needs m >= 1");
  if (!lambda.interior()) throw DomainError("rectangular kernel needs lambda strictly inside");
  const int nt = ctx.n_tilde;
  const std::vector<double> lam = lambda.coords;
  const std::vector<int> exps = rect_exponents(ctx);

  Eigen::MatrixXd a(nt, nt);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nt; ++j) a(i, j) = rect_phi_power_monomial(ctx, m, exps[j], lam[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  double cond = sv(nt - 1) > 0 ? sv(0) / sv(nt - 1) : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) throw IllConditioned("rectangular kernel matrix A", cond);
  const Eigen::MatrixXd ainv = a.colPivHouseholderQr().inverse();

  auto eval = [ctx, lam, exps, ainv, m, nt](int r, double x, int s, double y) {
    double v = s > r ? -rect_phi_power(ctx, s - r, x, y) : 0.0;
    std::vector<double> f(nt), g(nt);
    for (int i = 0; i < nt; ++i) f[i] = rect_phi_power_monomial(ctx, m - r, exps[i], x);
    for (int j = 0; j < nt; ++j) g[j] = rect_phi_power(ctx, s, lam[j], y);
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nt; ++j) v += f[i] * ainv(i, j) * g[j];
    return v;
  };

  CorrelationKernel::Spec spec;
  spec.name = "rectangular/" + to_string(ctx.field);
  for (int r = 1; r <= m; ++r) {
    spec.levels.push_back(r);
    spec.counts.push_back(nt);
  }
  spec.half_line = ctx.field != Field::C;
  const double tail = (60.0 + 4.0 * (m + ctx.n)) / ctx.c;
  spec.lo = ctx.field == Field::C ? lam.back() : 0.0;
  spec.hi = lam.front() + tail;
  spec.breakpoints = lam;
  return CorrelationKernel(spec, eval);
}

// ---- estimation ----

int BinGrid::cell(int level, double x) const {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it == levels.end() || x < edges.front() || x >= edges.back()) return -1;
  int b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin()) - 1;
  return static_cast<int>(it - levels.begin()) * bins() + b;
}

CorrelationAccumulator::CorrelationAccumulator(BinGrid grid) : grid_(std::move(grid)) {
  if (grid_.bins() < 1 || grid_.levels.empty()) throw DomainError("empty bin grid");
  const int c = grid_.cells();
  s1_ = q1_ = Eigen::VectorXd::Zero(c);
  s2_ = q2_ = Eigen::MatrixXd::Zero(c, c);
}

void CorrelationAccumulator::add(const Configuration& conf) {
  const int c = grid_.cells();
  Eigen::VectorXd cnt = Eigen::VectorXd::Zero(c);
  for (const auto& p : conf) {
    int k = grid_.cell(p.level, p.x);
    if (k >= 0) cnt(k) += 1.0;
  }
  Eigen::MatrixXd pair = cnt * cnt.transpose();
  pair.diagonal() -= cnt;
  s1_ += cnt;
  q1_ += cnt.cwiseProduct(cnt);
  s2_ += pair;
  q2_ += pair.cwiseProduct(pair);
  ++n_;
}

void CorrelationAccumulator::merge(const CorrelationAccumulator& o) {
  if (o.grid_.cells() != grid_.cells()) throw DomainError("merging different grids");
  s1_ += o.s1_;
  q1_ += o.q1_;
  s2_ += o.s2_;
  q2_ += o.q2_;
  n_ += o.n_;
}

CorrelationEstimate CorrelationAccumulator::result() const {
  CorrelationEstimate e;
  e.grid = grid_;
  e.samples = n_;
  const int c = grid_.cells();
  const double n = static_cast<double>(n_);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto se = [n, nan](double s, double q) {
    if (n < 2) return nan;
    double mean = s / n;
    double var = std::max(0.0, (q / n - mean * mean) * n / (n - 1));
    return std::sqrt(var / n);
  };
  e.rho1.assign(c, nan);
  e.rho1_se.assign(c, nan);
  e.rho1_missing.assign(c, true);
  e.rho2 = Eigen::MatrixXd::Constant(c, c, nan);
  e.rho2_se = Eigen::MatrixXd::Constant(c, c, nan);
  e.rho2_missing.setConstant(c, c, true);
  for (int a = 0; a < c; ++a) {
    const double wa = grid_.hi(a) - grid_.lo(a);
    if (s1_(a) > 0) {
      e.rho1[a] = s1_(a) / n / wa;
      e.rho1_se[a] = se(s1_(a), q1_(a)) / wa;
      e.rho1_missing[a] = false;
    }
    for (int b = 0; b < c; ++b) {
      if (s2_(a, b) <= 0) continue;
      const double w = wa * (grid_.hi(b) - grid_.lo(b));
      e.rho2(a, b) = s2_(a, b) / n / w;
      e.rho2_se(a, b) = se(s2_(a, b), q2_(a, b)) / w;
      e.rho2_missing(a, b) = false;
    }
  }
  return e;
}

CorrelationEstimate estimate_correlations(const std::vector<Configuration>& samples,
                                          const BinGrid& grid, long min_samples) {
  if (static_cast<long>(samples.size()) < min_samples)
    throw DomainError("correlation estimates need at least " + std::to_string(min_samples) +
                      " samples");
  CorrelationAccumulator acc(grid);
  for (const auto& s : samples) acc.add(s);
  return acc.result();
}

namespace {

std::vector<double> cuts_in(const CorrelationKernel& k, double a, double b) {
  std::vector<double> pts{a, b};
  for (double t : k.breakpoints())
    if (t > a && t < b) pts.push_back(t);
  return pts;
}

}  // namespace

double kernel_rho1_cell(const CorrelationKernel& k, const BinGrid& g, int cell, double rel_tol) {
  const int r = g.level_of(cell);
  const double a = g.lo(cell), b = g.hi(cell);
  return integrate_pieces([&](double x) { return k(r, x, r, x); }, cuts_in(k, a, b), rel_tol) /
         (b - a);
}

double kernel_rho2_cell(const CorrelationKernel& k, const BinGrid& g, int ca, int cb,
                        double rel_tol) {
  const int r = g.level_of(ca), s = g.level_of(cb);
  const double a0 = g.lo(ca), a1 = g.hi(ca), b0 = g.lo(cb), b1 = g.hi(cb);
  auto inner = [&](double x) {
    const double kxx = k(r, x, r, x);
    std::vector<double> pts = cuts_in(k, b0, b1);
    if (x > b0 && x < b1) pts.push_back(x);  // the 1{y >= x} jump
    return integrate_pieces(
        [&](double y) { return kxx * k(s, y, s, y) - k(r, x, s, y) * k(s, y, r, x); }, pts,
        rel_tol);
  };
  return integrate_pieces(inner, cuts_in(k, a0, a1), rel_tol) / ((a1 - a0) * (b1 - b0));
}

Configuration minor_configuration(const StructuredMatrix& m) {
  GTPattern p = minor_process(m);
  Configuration out;
  const int n = m.ctx.n;
  for (int r = 1; r <= n; ++r) {
    const auto& lev = m.ctx.field == Field::H ? p.levels[2 * r - 1] : p.levels[r - 1];
    for (double v : lev) out.push_back({r, m.ctx.field == Field::C ? v : std::fabs(v)});
  }
  return out;
}

}  // namespace orbit
