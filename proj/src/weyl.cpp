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


#include "orbit/weyl.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbit/error.hpp"

namespace orbit {

std::vector<double> RootSystemData::rho_double() const {
  std::vector<double> r;
  for (const auto& q : rho) r.push_back(static_cast<double>(q));
  return r;
}

RootSystemData root_system(Chamber type, int rank) {
  RootSystemData rs;
  rs.type = type;
  rs.rank = rank;
  auto unit = [&](int i, int a, int j, int b) {
    std::vector<int> v(rank, 0);
    v[i] += a;
    if (j >= 0) v[j] += b;
    return v;
  };
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      rs.positive_roots.push_back(unit(i, 1, j, -1));
      if (type != Chamber::A) rs.positive_roots.push_back(unit(i, 1, j, 1));
    }
  for (int i = 0; i < rank; ++i) {
    if (type == Chamber::B) rs.positive_roots.push_back(unit(i, 1, -1, 0));
    if (type == Chamber::C) rs.positive_roots.push_back(unit(i, 2, -1, 0));
  }
  rs.rho.assign(rank, Rational(0));
  for (const auto& a : rs.positive_roots)
    for (int i = 0; i < rank; ++i) rs.rho[i] += Rational(a[i], 2);
  return rs;
}

RootSystemData root_system(const FieldContext& ctx) {
  return root_system(ctx.chamber, ctx.chamber == Chamber::A ? ctx.n : ctx.n_tilde);
}

double asym_dim(const FieldContext& ctx, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  if (m != ctx.n_tilde) throw DomainError("asym_dim: wrong number of coordinates");
  const int n = ctx.n;
  long double v = 1.0L, c = 1.0L;
  // indices below are 1-based to match the product formulas
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      double a = x[i - 1], b = x[j - 1];
      if (a != b) {
        v *= a - b;
        c *= j - i;
      }
      if (ctx.field != Field::C && a != -b) {
        v *= a + b;
        c *= ctx.field == Field::H ? 2 * n + 2 - j - i : n - j - i;
      }
    }
  bool short_roots = ctx.field == Field::H || (ctx.field == Field::R && ctx.epsilon == 1);
  if (short_roots)
    for (int i = 1; i <= m; ++i)
      if (x[i - 1] != 0.0) {
        v *= x[i - 1];
        c *= ctx.field == Field::H ? n + 1 - i : ctx.n_tilde + 0.5L - i;
      }
  return static_cast<double>(v / c);
}

double asym_dim(const RadialPoint& lambda) { return asym_dim(lambda.ctx, lambda.coords); }

double asym_dim_det(const RadialPoint& lambda) {
  if (!lambda.interior()) throw DomainError("asym_dim_det needs an interior point");
  const FieldContext& ctx = lambda.ctx;
  const int m = lambda.size();
  if (m == 0) return 1.0;
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 1; j <= m; ++j) {
      int p = ctx.field == Field::C ? j - 1 : (ctx.field == Field::H ? 2 * j - 1 : 2 * j - 2 + ctx.epsilon);
      a(i, j - 1) = std::pow(lambda[i], p);
    }
  // c_n: every factor present on the interior
  std::vector<double> ones(m);
  long double cn = 1.0L;
  const int n = ctx.n;
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      cn *= j - i;
      if (ctx.field == Field::H) cn *= 2 * n + 2 - j - i;
      if (ctx.field == Field::R) cn *= n - j - i;
    }
  for (int i = 1; i <= m; ++i) {
    if (ctx.field == Field::H) cn *= n + 1 - i;
    if (ctx.field == Field::R && ctx.epsilon) cn *= ctx.n_tilde + 0.5L - i;
  }
  double sign = ((m * (m - 1) / 2) % 2) ? -1.0 : 1.0;
  return static_cast<double>(sign * a.determinant() / cn);
}

bool is_integral_dominant(const FieldContext& ctx, const IntWeight& x) {
  const int m = static_cast<int>(x.size());
  if (m != ctx.n_tilde) return false;
  for (int i = 0; i + 1 < m; ++i) {
    if (ctx.chamber == Chamber::D && i + 1 == m - 1) {
      if (x[i] < std::llabs(x[i + 1])) return false;
    } else if (x[i] < x[i + 1]) {
      return false;
    }
  }
  if ((ctx.chamber == Chamber::B || ctx.chamber == Chamber::C) && m > 0 && x[m - 1] < 0)
    return false;
  return true;
}

BigInt weyl_dim(const FieldContext& ctx, const IntWeight& lambda) {
  if (!is_integral_dominant(ctx, lambda))
    throw DomainError("weyl_dim: weight is not integral dominant for type " +
                      to_string(ctx.chamber));
  RootSystemData rs = root_system(ctx);
  Rational num(1), den(1);
  for (const auto& a : rs.positive_roots) {
    Rational lr(0), r(0);
    for (int i = 0; i < rs.rank; ++i) {
      lr += (Rational(lambda[i]) + rs.rho[i]) * a[i];
      r += rs.rho[i] * a[i];
    }
    num *= lr;
    den *= r;
  }
  Rational q = num / den;
  if (boost::multiprecision::denominator(q) != 1)
    throw NumericalFailure("weyl_dim produced a non-integer", 0.0);
  return boost::multiprecision::numerator(q);
}

std::size_t weyl_order(Chamber type, int rank) {
  std::size_t f = 1;
  for (int i = 2; i <= rank; ++i) f *= i;
  if (type == Chamber::A) return f;
  std::size_t s = std::size_t(1) << rank;
  if (type == Chamber::D && rank > 0) s /= 2;
  return f * s;
}

void for_each_weyl(Chamber type, int rank, const std::function<void(const WeylElement&)>& fn) {
  WeylElement w;
  w.perm.resize(rank);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(rank, 1);
  do {
    int inv = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j)
        if (w.perm[i] > w.perm[j]) ++inv;
    int psign = inv % 2 ? -1 : 1;
    if (type == Chamber::A) {
      w.det = psign;
      fn(w);
      continue;
    }
    for (unsigned mask = 0; mask < (1u << rank); ++mask) {
      int flips = __builtin_popcount(mask);
      if (type == Chamber::D && flips % 2) continue;
      for (int i = 0; i < rank; ++i) w.sign[i] = (mask >> i) & 1u ? -1 : 1;
      w.det = psign * (flips % 2 ? -1 : 1);
      fn(w);
    }
  } while (std::next_permutation(w.perm.begin(), w.perm.end()));
}

std::vector<double> weyl_apply(const WeylElement& w, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = w.sign[i] * x[w.perm[i]];
  return y;
}

std::complex<double> richardson_limit(const std::function<std::complex<double>(double)>& f,
                                      double h, int levels) {
  std::vector<std::vector<std::complex<double>>> t(levels);
  for (int j = 0; j < levels; ++j) {
    t[j].resize(j + 1);
    t[j][0] = f(h / std::pow(2.0, j));
    for (int m = 1; m <= j; ++m) {
      double p = std::pow(2.0, m);
      t[j][m] = (p * t[j][m - 1] - t[j - 1][m - 1]) / (p - 1.0);
    }
  }
  return t[levels - 1][levels - 1];
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double root_pair(const std::vector<int>& a, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

std::vector<double> generic_direction(int rank) {
  std::vector<double> d(rank);
  for (int i = 0; i < rank; ++i) d[i] = std::sqrt(2.0 + i) - 0.3 * i;
  return d;
}

std::complex<double> character_regular(const RootSystemData& rs, const std::vector<double>& lr,
                                       const std::vector<double>& zeta) {
  const std::complex<double> I(0, 1);
  std::complex<double> num = 0;
  for_each_weyl(rs.type, rs.rank, [&](const WeylElement& w) {
    num += double(w.det) * std::exp(I * dot(weyl_apply(w, lr), zeta));
  });
  std::complex<double> den = 1;
  for (const auto& a : rs.positive_roots) den *= 2.0 * I * std::sin(0.5 * root_pair(a, zeta));
  return num / den;
}

bool near_singular_torus(const RootSystemData& rs, const std::vector<double>& zeta) {
  for (const auto& a : rs.positive_roots)
    if (std::fabs(std::sin(0.5 * root_pair(a, zeta))) < 1e-7) return true;
  return false;
}

bool near_singular_lie(const RootSystemData& rs, const std::vector<double>& x) {
  for (const auto& a : rs.positive_roots)
    if (std::fabs(root_pair(a, x)) < 1e-7) return true;
  return false;
}

}  // namespace

std::complex<double> character(const FieldContext& ctx, const IntWeight& lambda,
                               const std::vector<double>& zeta) {
  RootSystemData rs = root_system(ctx);
  if (static_cast<int>(zeta.size()) != rs.rank) throw DomainError("character: zeta has wrong length");
  if (!is_integral_dominant(ctx, lambda)) throw DomainError("character: weight not integral dominant");
  bool zero = std::all_of(zeta.begin(), zeta.end(), [](double v) { return v == 0.0; });
  if (zero) return static_cast<double>(weyl_dim(ctx, lambda));
  std::vector<double> lr = rs.rho_double();
  for (int i = 0; i < rs.rank; ++i) lr[i] += static_cast<double>(lambda[i]);
  if (!near_singular_torus(rs, zeta)) return character_regular(rs, lr, zeta);
  std::vector<double> d = generic_direction(rs.rank);
  auto f = [&](double t) {
    std::vector<double> z = zeta;
    for (int i = 0; i < rs.rank; ++i) z[i] += t * d[i];
    return character_regular(rs, lr, z);
  };
  return richardson_limit(f, 0.05, 6);
}

std::complex<double> orbital_integral(const RadialPoint& lambda, const std::vector<double>& zeta) {
  RootSystemData rs = root_system(lambda.ctx);
  if (static_cast<int>(zeta.size()) != rs.rank) throw DomainError("orbital_integral: zeta has wrong length");
  bool zz = std::all_of(zeta.begin(), zeta.end(), [](double v) { return v == 0.0; });
  if (zz || lambda.is_zero()) return 1.0;
  const std::vector<double> rho = rs.rho_double();
  auto eval = [&](const std::vector<double>& lam, const std::vector<double>& z) {
    const std::complex<double> I(0, 1);
    std::complex<double> num = 0;
    for_each_weyl(rs.type, rs.rank, [&](const WeylElement& w) {
      num += double(w.det) * std::exp(I * dot(weyl_apply(w, lam), z));
    });
    std::complex<double> den = 1;
    for (const auto& a : rs.positive_roots)
      den *= I * root_pair(a, z) * root_pair(a, lam) / root_pair(a, rho);
    return num / den;
  };
  bool sl = near_singular_lie(rs, lambda.coords), sz = near_singular_lie(rs, zeta);
  if (!sl && !sz) return eval(lambda.coords, zeta);
  std::vector<double> d = generic_direction(rs.rank);
  double scale_l = 0, scale_z = 0;
  for (int i = 0; i < rs.rank; ++i) {
    scale_l = std::max(scale_l, std::fabs(lambda[i]));
    scale_z = std::max(scale_z, std::fabs(zeta[i]));
  }
  auto f = [&](double t) {
    std::vector<double> l = lambda.coords, z = zeta;
    for (int i = 0; i < rs.rank; ++i) {
      if (sl) l[i] += t * scale_l * d[i];
      if (sz) z[i] += t * scale_z * d[i];
    }
    return eval(l, z);
  };
  return richardson_limit(f, 0.05, 6);
}

}  // namespace orbit
