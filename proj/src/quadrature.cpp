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


#include "orbit/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace orbit {

double integrate(const Integrand& f, double a, double b, double rel_tol, double* error) {
  if (a == b) return 0.0;
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol,
                                                                         &err);
  if (error) *error = err;
  return v;
}

double integrate_pieces(const Integrand& f, std::vector<double> points, double rel_tol) {
  std::sort(points.begin(), points.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1] > points[i]) s += integrate(f, points[i], points[i + 1], rel_tol);
  return s;
}

double integrate_2d(const std::function<double(double, double)>& f, double a0, double b0,
                    double a1, double b1, double rel_tol) {
  auto inner = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, a1, b1, rel_tol);
  };
  return integrate(inner, a0, b0, rel_tol);
}

}  // namespace orbit
