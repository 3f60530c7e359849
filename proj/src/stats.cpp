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


#include "orbit/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "orbit/error.hpp"
#include "orbit/quadrature.hpp"

namespace orbit {

double kolmogorov_q(double t) {
  if (t < 1e-3) return 1.0;
  if (t < 1.18) {
    // small-t form converges faster there
    const double pi2 = M_PI * M_PI;
    double s = 0.0;
    for (int j = 1; j <= 50; ++j) s += std::exp(-(2 * j - 1) * (2 * j - 1) * pi2 / (8 * t * t));
    return std::clamp(1.0 - std::sqrt(2.0 * M_PI) / t * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = std::exp(-2.0 * j * j * t * t);
    s += (j % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

double ks_p(double d, double ne) {
  double rn = std::sqrt(ne);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

}  // namespace

TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw DomainError("KS test needs samples");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, ks_p(d, n), 0};
}

TestResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw DomainError("KS test needs samples");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = x.size(), n2 = y.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(i / n1 - j / n2));
  }
  return {d, ks_p(d, n1 * n2 / (n1 + n2)), 0};
}

TestResult chi_square_gof(const std::vector<double>& observed, const std::vector<double>& expected,
                          double min_expected, int fitted_params) {
  if (observed.size() != expected.size()) throw DomainError("chi-square: size mismatch");
  std::vector<double> o, e;
  double co = 0, ce = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    co += observed[i];
    ce += expected[i];
    if (ce >= min_expected) {
      o.push_back(co);
      e.push_back(ce);
      co = ce = 0;
    }
  }
  if (ce > 0 || co > 0) {
    if (e.empty()) {
      o.push_back(co);
      e.push_back(ce);
    } else {
      o.back() += co;
      e.back() += ce;
    }
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  int dof = static_cast<int>(o.size()) - 1 - fitted_params;
  if (dof < 1) throw DomainError("chi-square: too few populated bins");
  double p = boost::math::gamma_q(dof / 2.0, stat / 2.0);
  return {stat, p, dof};
}

double wasserstein1_weighted(std::vector<std::pair<double, double>> atoms, std::vector<double> y) {
  if (atoms.empty() || y.empty()) throw DomainError("W1 needs two nonempty measures");
  std::sort(atoms.begin(), atoms.end());
  std::sort(y.begin(), y.end());
  double total = 0;
  for (const auto& a : atoms) total += a.second;
  // sweep the merged support, integrating |F - G|
  std::size_t i = 0, j = 0;
  double f = 0, g = 0, w = 0, prev = std::min(atoms[0].first, y[0]);
  const double ny = y.size();
  while (i < atoms.size() || j < y.size()) {
    double v;
    if (j >= y.size() || (i < atoms.size() && atoms[i].first <= y[j]))
      v = atoms[i].first;
    else
      v = y[j];
    w += std::fabs(f - g) * (v - prev);
    while (i < atoms.size() && atoms[i].first <= v) f += atoms[i++].second / total;
    while (j < y.size() && y[j] <= v) {
      g += 1.0 / ny;
      ++j;
    }
    prev = v;
  }
  return w;
}

double wasserstein1(std::vector<double> x, std::vector<double> y) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(x.size());
  for (double v : x) atoms.push_back({v, 1.0});
  return wasserstein1_weighted(std::move(atoms), std::move(y));
}

double wasserstein1_cdf(std::vector<std::pair<double, double>> atoms,
                        const std::function<double(double)>& cdf, double lo, double hi) {
  std::sort(atoms.begin(), atoms.end());
  double total = 0;
  for (const auto& a : atoms) total += a.second;
  std::vector<double> cuts{lo};
  for (const auto& a : atoms)
    if (a.first > lo && a.first < hi) cuts.push_back(a.first);
  cuts.push_back(hi);
  double w = 0, f = 0;
  std::size_t i = 0;
  while (i < atoms.size() && atoms[i].first <= lo) f += atoms[i++].second / total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], b = cuts[k + 1];
    while (i < atoms.size() && atoms[i].first <= a) f += atoms[i++].second / total;
    if (b > a) w += integrate([&](double x) { return std::fabs(f - cdf(x)); }, a, b, 1e-8);
  }
  // atoms outside [lo, hi], where the target CDF is 0 or 1
  double below = 0, above = 0;
  for (const auto& a : atoms) {
    if (a.first < lo) below += a.second / total * (lo - a.first);
    if (a.first > hi) above += a.second / total * (a.first - hi);
  }
  return w + below + above;
}

MeanSE mean_se(const std::vector<double>& x) {
  Accumulator a;
  for (double v : x) a.add(v);
  return {a.mean, a.se(), a.n};
}

void Accumulator::add(double x) {
  ++n;
  double d = x - mean;
  mean += d / n;
  m2 += d * (x - mean);
}

void Accumulator::merge(const Accumulator& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  double tot = n + o.n;
  double d = o.mean - mean;
  mean += d * o.n / tot;
  m2 += o.m2 + d * d * n * o.n / tot;
  n += o.n;
}

double Accumulator::se() const { return n > 1 ? std::sqrt(variance() / n) : 0.0; }

}  // namespace orbit
