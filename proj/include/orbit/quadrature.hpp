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


#ifndef ORBIT_QUADRATURE_HPP
#define ORBIT_QUADRATURE_HPP

#include <functional>
#include <limits>
#include <vector>

namespace orbit {

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (61 points). b may be +infinity.
double integrate(const Integrand& f, double a, double b, double rel_tol = 1e-12,
                 double* error = nullptr);

// Integral over [a, b] split at the given interior break points, useful
// when f has kinks.
double integrate_pieces(const Integrand& f, std::vector<double> points, double rel_tol = 1e-12);

// Iterated integral over the box [a0,b0] x [a1,b1].
double integrate_2d(const std::function<double(double, double)>& f, double a0, double b0,
                    double a1, double b1, double rel_tol = 1e-10);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace orbit

#endif
