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


#ifndef ORBIT_ERROR_HPP
#define ORBIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace orbit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Valid input for which the requested formula branch does not exist.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double cond)
      : Error(what + " (condition estimate " + std::to_string(cond) + ")"),
        condition(cond) {}
  double condition;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double res)
      : Error(what + " (residual " + std::to_string(res) + ")"), residual(res) {}
  double residual;
};

}  // namespace orbit

#endif
