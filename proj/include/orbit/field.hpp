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


#ifndef ORBIT_FIELD_HPP
#define ORBIT_FIELD_HPP

#include <string>

namespace orbit {

enum class Field { R, C, H };
enum class Chamber { A, B, C, D };

// Derived constants of (F, n). n counts rows over F.
struct FieldContext {
  Field field = Field::C;
  int n = 1;
  int c = 1;
  int n_tilde = 1;
  int epsilon = 1;
  Chamber chamber = Chamber::A;

  static FieldContext make(Field f, int n);

  // side of the complex matrix that stores an n x n matrix over F
  int ambient() const { return field == Field::H ? 2 * n : n; }
  // number of positive roots of the chamber type
  int num_positive_roots() const;
  bool operator==(const FieldContext& o) const {
    return field == o.field && n == o.n;
  }
};

std::string to_string(Field f);
std::string to_string(Chamber t);
Field parse_field(const std::string& s);

}  // namespace orbit

#endif
