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


#ifndef ORBIT_ENSEMBLES_HPP
#define ORBIT_ENSEMBLES_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "orbit/field.hpp"
#include "orbit/pattern.hpp"
#include "orbit/rng.hpp"

namespace orbit {

using cplx = std::complex<double>;

enum class MatrixKind { hermitian_P, rectangular_M, unitary_U };

// Matrix over F stored as a complex matrix. Quaternions use the 2x2 block
// ((a, b), (-conj(b), conj(a))); an H matrix with n x k quaternion entries
// is stored as 2n x 2k.
struct StructuredMatrix {
  FieldContext ctx;
  MatrixKind kind = MatrixKind::hermitian_P;
  int cols = 0;  // k for rectangular_M, n otherwise
  Eigen::MatrixXcd data;
};

// Scalar product of P_n(F): b tr(MN), b = 1 for C, 1/2 for R and H.
double hermitian_inner(const StructuredMatrix& a, const StructuredMatrix& b);
// Scalar product of M_{n,k}(F): a Re tr(MN*), a = 1 for R, 2 for C and H.
double rectangular_inner(const StructuredMatrix& a, const StructuredMatrix& b);

// Max deviation from the structure required by kind.
double structure_defect(const StructuredMatrix& m);

StructuredMatrix sample_gaussian_hermitian(const FieldContext& ctx, Rng& rng);
StructuredMatrix sample_gaussian_rectangular(const FieldContext& ctx, int k, Rng& rng);
StructuredMatrix sample_haar_unitary(const FieldContext& ctx, Rng& rng);

StructuredMatrix omega(const RadialPoint& lambda);
// Omega_k^n(1,...,1,0,...,0) with `ones` leading ones, as a k x k matrix over F.
StructuredMatrix omega_ones(const FieldContext& ctx_k, int ones);

RadialPoint radial_part(const StructuredMatrix& m);
StructuredMatrix minor(const StructuredMatrix& m, int k);
GTPattern minor_process(const StructuredMatrix& m);

// U M U*
StructuredMatrix conjugate(const StructuredMatrix& u, const StructuredMatrix& m);
// M Omega M* for rectangular M (n x k over F) and Omega in P_k(F)
StructuredMatrix sandwich(const StructuredMatrix& m, const StructuredMatrix& om);
StructuredMatrix add(const StructuredMatrix& a, const StructuredMatrix& b);

// Pfaffian of a real antisymmetric matrix (0 for odd size).
double pfaffian(Eigen::MatrixXd a);

// real dimension of P_n(F) and M_{n,k}(F)
int dim_hermitian(const FieldContext& ctx);
int dim_rectangular(const FieldContext& ctx, int k);

}  // namespace orbit

#endif
