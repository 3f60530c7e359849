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


#ifndef ORBIT_PATTERN_HPP
#define ORBIT_PATTERN_HPP

#include <string>
#include <vector>

#include "orbit/field.hpp"

namespace orbit {

// Point of the Weyl chamber C_n. Length n for C and H, floor(n/2) for R.
struct RadialPoint {
  FieldContext ctx;
  std::vector<double> coords;

  RadialPoint() = default;
  RadialPoint(FieldContext c, std::vector<double> x);

  int size() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }
  bool in_chamber(double tol = 0.0) const;
  // strictly inside the open chamber
  bool interior() const;
  bool is_zero() const;
};

// throws DomainError unless coords lie in the chamber of ctx
void require_chamber(const FieldContext& ctx, const std::vector<double>& coords,
                     double tol = 0.0);

// Level array with top row x^(n). For H the half levels are interleaved:
// levels = x^(1/2), x^(1), x^(3/2), ..., x^(n).
struct GTPattern {
  FieldContext ctx;
  std::vector<std::vector<double>> levels;

  const std::vector<double>& top() const { return levels.back(); }
};

// Shape description of the levels of a pattern over ctx.
struct LevelInfo {
  int length;
  bool signed_last;  // D-type level for R: last entry carries a sign
  bool nonneg;       // entries constrained to be >= 0
  std::string label;
};
std::vector<LevelInfo> pattern_levels(const FieldContext& ctx);

}  // namespace orbit

#endif
