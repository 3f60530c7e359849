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


#include "orbit/field.hpp"

#include "orbit/error.hpp"

namespace orbit {

FieldContext FieldContext::make(Field f, int n) {
  if (n < 1) throw DomainError("matrix size n must be >= 1");
  FieldContext ctx;
  ctx.field = f;
  ctx.n = n;
  ctx.c = f == Field::H ? 2 : 1;
  ctx.n_tilde = f == Field::R ? n / 2 : n;
  ctx.epsilon = n % 2;
  switch (f) {
    case Field::C: ctx.chamber = Chamber::A; break;
    case Field::H: ctx.chamber = Chamber::C; break;
    case Field::R: ctx.chamber = n % 2 ? Chamber::B : Chamber::D; break;
  }
  return ctx;
}

int FieldContext::num_positive_roots() const {
  const int r = n_tilde;
  switch (chamber) {
    case Chamber::A: return n * (n - 1) / 2;
    case Chamber::B:
    case Chamber::C: return r * r;
    case Chamber::D: return r * (r - 1);
  }
  return 0;
}

std::string to_string(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
  }
  return "?";
}

std::string to_string(Chamber t) {
  switch (t) {
    case Chamber::A: return "A";
    case Chamber::B: return "B";
    case Chamber::C: return "C";
    case Chamber::D: return "D";
  }
  return "?";
}

Field parse_field(const std::string& s) {
  if (s == "R" || s == "r") return Field::R;
  if (s == "C" || s == "c") return Field::C;
  if (s == "H" || s == "h") return Field::H;
  throw DomainError("field must be one of R, C, H (got '" + s + "')");
}

}  // namespace orbit
