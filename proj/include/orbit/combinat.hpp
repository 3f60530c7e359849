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


#ifndef ORBIT_COMBINAT_HPP
#define ORBIT_COMBINAT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "orbit/field.hpp"
#include "orbit/pattern.hpp"
#include "orbit/rng.hpp"
#include "orbit/weyl.hpp"

namespace orbit {

// Integral dominant weight -> multiplicity (always >= 1).
using DecompositionTable = std::map<IntWeight, BigInt>;

// Number of integer points of GT_n(lambda), by the explicit product formulas.
BigInt gt_count(const FieldContext& ctx, const IntWeight& lambda);

// Visits every integer pattern of GT_n(lambda); returns how many there are.
std::uint64_t gt_enumerate_visit(const FieldContext& ctx, const IntWeight& lambda,
                                 const std::function<void(const GTPattern&)>& visit = {});
// All integer patterns; throws InstanceTooLarge above `limit` patterns.
std::vector<GTPattern> gt_enumerate(const FieldContext& ctx, const IntWeight& lambda,
                                    std::uint64_t limit = 1000000);

// V_lambda (x) V_{(m,0,...,0)} for the group of ctx: A (C), C (H), B (R, n
// odd), D (R, n even, rank >= 2). Multiplicities count the witnesses
// c (and s for B) by direct integer loops.
DecompositionTable tensor_rank_one(const FieldContext& ctx, const IntWeight& lambda, long long m);

// Restriction from U_n(F) to U_{n-1}(F); keys are weights of rank n-1.
DecompositionTable branch(const FieldContext& ctx, const IntWeight& lambda);

// sum of mult(beta) dim(beta), dims taken over ctx
BigInt table_dimension(const FieldContext& ctx, const DecompositionTable& t);

// Context of U_{n-1}(F).
FieldContext sub_context(const FieldContext& ctx);
// Torus of U_{n-1}(F) inside that of U_n(F): zeta of the smaller rank,
// padded with zeros where needed.
std::vector<double> embed_sub_torus(const FieldContext& ctx, const std::vector<double>& zeta_sub);

// Discrete measures of the semiclassical approximation: lambda_k =
// round(k lambda), scale 1/k.
struct SemiclassicalSchedule {
  enum class Kind { branching, tensor };
  FieldContext ctx;
  Kind kind = Kind::branching;
  std::vector<double> lambda;
  double theta = 0.0;  // tensor: gamma = (theta, 0, ..., 0)

  IntWeight approximant(int k) const;
  long long theta_approximant(int k) const;
};

// Atoms (beta / k, weight) of mu_k (branching) or nu_k (tensor).
std::vector<std::pair<std::vector<double>, double>> semiclassical_measure(
    const SemiclassicalSchedule& s, int k);

struct SemiclassicalOptions {
  int target_samples = 20000;  // Monte Carlo size for the continuous target
  std::uint64_t seed = 1;
  int threads = 1;
  long long max_weights = 5000000;  // enumeration budget
};

// Largest 1-Wasserstein distance over coordinates between the discrete
// measure at scale k and the continuous limit. For C with n = 2 branching
// the exact uniform CDF of mu_lambda is used; otherwise the limit is
// sampled exactly.
double semiclassical_distance(const SemiclassicalSchedule& s, int k,
                              const SemiclassicalOptions& opt = {});

}  // namespace orbit

#endif
