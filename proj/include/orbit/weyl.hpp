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


#ifndef ORBIT_WEYL_HPP
#define ORBIT_WEYL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <functional>
#include <vector>

#include "orbit/field.hpp"
#include "orbit/pattern.hpp"

namespace orbit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntWeight = std::vector<long long>;

struct RootSystemData {
  Chamber type = Chamber::A;
  int rank = 0;  // number of epsilon coordinates
  std::vector<std::vector<int>> positive_roots;
  std::vector<Rational> rho;

  std::vector<double> rho_double() const;
};

RootSystemData root_system(Chamber type, int rank);
// chamber type of ctx with rank n_tilde (n for type A)
RootSystemData root_system(const FieldContext& ctx);

// d_n(lambda): product over pairs present after the skip rules.
double asym_dim(const RadialPoint& lambda);
double asym_dim(const FieldContext& ctx, const std::vector<double>& lambda);
// Determinant form; lambda strictly inside the chamber.
double asym_dim_det(const RadialPoint& lambda);

bool is_integral_dominant(const FieldContext& ctx, const IntWeight& lambda);
BigInt weyl_dim(const FieldContext& ctx, const IntWeight& lambda);

// Weyl group element acting by (w x)_i = sign_i x_{perm_i}.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;
  int det = 1;
};
void for_each_weyl(Chamber type, int rank, const std::function<void(const WeylElement&)>& fn);
std::size_t weyl_order(Chamber type, int rank);
std::vector<double> weyl_apply(const WeylElement& w, const std::vector<double>& x);

std::complex<double> character(const FieldContext& ctx, const IntWeight& lambda,
                               const std::vector<double>& zeta);
std::complex<double> orbital_integral(const RadialPoint& lambda,
                                      const std::vector<double>& zeta);

// Richardson extrapolation of f(t) to t -> 0 from steps h, h/2, ...
std::complex<double> richardson_limit(const std::function<std::complex<double>(double)>& f,
                                      double h, int levels);

}  // namespace orbit

#endif
