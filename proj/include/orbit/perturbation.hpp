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


#ifndef ORBIT_PERTURBATION_HPP
#define ORBIT_PERTURBATION_HPP

#include <complex>
#include <optional>
#include <vector>

#include "orbit/ensembles.hpp"
#include "orbit/pattern.hpp"
#include "orbit/rng.hpp"

namespace orbit {

// Witness (z, s) for beta in E(lambda, theta). z is empty for C; s is -1
// unless F = R with n odd.
struct PerturbWitness {
  RadialPoint beta;
  std::vector<double> z;
  int s = -1;
  double theta = 0.0;
};

// The nonzero coordinate of the radial part of M Omega_n^1 M*, sampled
// exactly from its Gamma law.
double rank_one_radial_sample(const FieldContext& ctx, Rng& rng);
// Same law, through the matrix construction.
double rank_one_matrix_sample(const FieldContext& ctx, Rng& rng);
// density k d_n(theta) e^{-c theta}
double rank_one_density(const FieldContext& ctx, double theta);

// radial part of Omega(lambda) + U Omega(theta) U*, U Haar
RadialPoint perturb_spectral_sample(const RadialPoint& lambda, double theta, Rng& rng);
// radial part of Omega(lambda) + M Omega^1 M*, M standard Gaussian
RadialPoint perturb_gaussian_sample(const RadialPoint& lambda, Rng& rng);

// Feasible witness for beta in E(lambda, theta); theta < 0 accepts any
// theta >= 0 (used to audit the chain, whose steps mix over theta).
std::optional<PerturbWitness> e_set_witness(const RadialPoint& lambda, double theta,
                                            const RadialPoint& beta, double tol = 1e-9);

// Density of nu_{lambda, theta}. lambda must be interior. For C the density
// is with respect to beta_1..beta_{n-1} (beta_n fixed by the trace); for H
// and R with respect to all coordinates of beta.
double nu_lambda_theta_density(const RadialPoint& lambda, double theta,
                               const std::vector<double>& beta);

// Density L_lambda of nu_lambda with respect to the first (k+1) ^ n_tilde
// coordinates of beta, where lambda has k nonzero entries; the remaining
// coordinates of beta must be 0.
double nu_lambda_density(const RadialPoint& lambda, const std::vector<double>& beta);
// number of coordinates that carry the density L_lambda
int nu_lambda_support_dim(const RadialPoint& lambda);

// Radial parts R_1..R_k of Omega(start) + sum_j M_j Omega^1 M_j*.
std::vector<RadialPoint> lue_chain(const FieldContext& ctx, int k, Rng& rng,
                                   const RadialPoint& start);

// radial part of M Omega_k M*, M standard Gaussian in M_{n,k}(F)
RadialPoint lue_sample(const FieldContext& ctx, int k, Rng& rng);
// its n_tilde ^ k_tilde positive eigenvalues, decreasing
std::vector<double> lue_positive_eigenvalues(const FieldContext& ctx, int k, Rng& rng);
int lue_rank(const FieldContext& ctx, int k);

// f_{n,k}, normalized; lambda of length n_tilde ^ k_tilde, ordered decreasing.
double lue_density(const FieldContext& ctx, int k, const std::vector<double>& lambda);
double lue_normalizer(const FieldContext& ctx, int k);

// log of the unnormalized matrix density l(H); -infinity off the support.
double lue_matrix_log_density(const FieldContext& ctx, int k, const StructuredMatrix& h);

// g_{n,k}: positive eigenvalues of M Omega_k(alpha) M*, normalized.
double wishart_general_density(const FieldContext& ctx, int k, const std::vector<double>& alpha,
                               const std::vector<double>& lambda);
std::vector<double> wishart_general_sample(const FieldContext& ctx, int k,
                                           const std::vector<double>& alpha, Rng& rng);

// det(I + (i/c) N)^{-k_tilde}, N Hermitian structured
std::complex<double> lue_char_exact(const FieldContext& ctx, int k, const StructuredMatrix& n);

}  // namespace orbit

#endif
