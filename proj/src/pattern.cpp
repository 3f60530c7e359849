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


#include "orbit/pattern.hpp"

#include <cmath>

#include "orbit/error.hpp"

namespace orbit {

RadialPoint::RadialPoint(FieldContext c, std::vector<double> x)
    : ctx(c), coords(std::move(x)) {
  if (static_cast<int>(coords.size()) != ctx.n_tilde)
    throw DomainError("radial point for " + to_string(ctx.field) + ", n=" +
                      std::to_string(ctx.n) + " needs " +
                      std::to_string(ctx.n_tilde) + " coordinates, got " +
                      std::to_string(coords.size()));
}

bool RadialPoint::in_chamber(double tol) const {
  const auto& x = coords;
  int r = size();
  for (int i = 0; i + 1 < r; ++i) {
    if (ctx.chamber == Chamber::D && i + 1 == r - 1) {
      if (x[i] < std::fabs(x[i + 1]) - tol) return false;
    } else if (x[i] < x[i + 1] - tol) {
      return false;
    }
  }
  if ((ctx.chamber == Chamber::B || ctx.chamber == Chamber::C) && r > 0 &&
      x[r - 1] < -tol)
    return false;
  return true;
}

bool RadialPoint::interior() const {
  const auto& x = coords;
  int r = size();
  for (int i = 0; i + 1 < r; ++i) {
    if (ctx.chamber == Chamber::D && i + 1 == r - 1) {
      if (!(x[i] > std::fabs(x[i + 1]))) return false;
    } else if (!(x[i] > x[i + 1])) {
      return false;
    }
  }
  if ((ctx.chamber == Chamber::B || ctx.chamber == Chamber::C) && r > 0 &&
      !(x[r - 1] > 0))
    return false;
  return true;
}

bool RadialPoint::is_zero() const {
  for (double v : coords)
    if (v != 0.0) return false;
  return true;
}

void require_chamber(const FieldContext& ctx, const std::vector<double>& coords,
                     double tol) {
  RadialPoint p(ctx, coords);
  if (!p.in_chamber(tol))
    throw DomainError("point is not in the type " + to_string(ctx.chamber) +
                      " Weyl chamber");
}

std::vector<LevelInfo> pattern_levels(const FieldContext& ctx) {
  std::vector<LevelInfo> out;
  const int n = ctx.n;
  switch (ctx.field) {
    case Field::C:
      for (int k = 1; k <= n; ++k) out.push_back({k, false, false, std::to_string(k)});
      break;
    case Field::H:
      for (int k = 1; k <= n; ++k) {
        out.push_back({k, false, true, std::to_string(2 * k - 1) + "/2"});
        out.push_back({k, false, true, std::to_string(k)});
      }
      break;
    case Field::R:
      for (int k = 1; k <= n; ++k) {
        bool even = k % 2 == 0;
        out.push_back({k / 2, even, true, std::to_string(k)});
      }
      break;
  }
  return out;
}

}  // namespace orbit
