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


#ifndef ORBIT_DETPROC_HPP
#define ORBIT_DETPROC_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "orbit/field.hpp"
#include "orbit/ensembles.hpp"
#include "orbit/pattern.hpp"
#include "orbit/quadrature.hpp"

namespace orbit {

// Orthonormal polynomials p_0, p_1, ... for a weight w, in the form
// x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
class PolynomialBasis {
 public:
  enum class Kind { hermite, laguerre, monomial };

  static PolynomialBasis hermite();  // weight e^{-x^2/2} on R
  static PolynomialBasis laguerre(double alpha);  // weight x^alpha e^{-x} on R_+
  static PolynomialBasis monomial();  // x^k, weight 1; not orthonormal

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  double operator()(int k, double x) const;
  // p_0(x) .. p_deg(x)
  std::vector<double> values(int deg, double x) const;
  // d-th derivative of p_k
  double derivative(int k, int d, double x) const;

  double weight(double x) const;
  double support_lo() const;
  double support_hi() const { return kInf; }

  // recurrence coefficients; monomials have a_k = 0, b_k = 0 and are
  // generated by x p_k = p_{k+1}
  double a(int k) const;
  double b(int k) const;

 private:
  Kind kind_ = Kind::hermite;
  double alpha_ = 0.0;
};

// 1{x > y} interlacing (x_1 > y_1 > x_2 > y_2 > ...), computed as
// det(1{x_i > y_j}). y may be one shorter than x. Throws DegenerateInput on
// ties and DomainError on vectors that are not strictly decreasing.
int interlace_indicator_det(const std::vector<double>& x, const std::vector<double>& y);
bool interlaces_direct(const std::vector<double>& x, const std::vector<double>& y);

struct Measure {
  double lo = 0.0;
  double hi = 1.0;
  Integrand density;  // empty means Lebesgue
};

struct CauchyBinetCheck {
  double lhs = 0.0;  // det(int phi_i psi_j dm)
  double rhs = 0.0;  // (1/n!) int det(phi_i(x_j)) det(psi_i(x_j)) prod dm(x_j)
};

// n <= 3 (the right side is an n-fold nested quadrature).
CauchyBinetCheck cauchy_binet(const std::vector<Integrand>& phi, const std::vector<Integrand>& psi,
                              const Measure& m, double rel_tol = 1e-10);

// K((r,x),(s,y)) on {levels} x (R or R_+), with the reference measure
// counting on levels times Lebesgue. Immutable and safe to share.
class CorrelationKernel {
 public:
  using Eval = std::function<double(int, double, int, double)>;

  struct Spec {
    std::string name;
    std::vector<int> levels;
    std::vector<int> counts;  // deterministic number of points per level
    bool half_line = false;
    // integration window; the kernel is negligible outside
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> breakpoints;  // kinks of the diagonal
  };

  CorrelationKernel(Spec spec, Eval eval) : spec_(std::move(spec)), eval_(std::move(eval)) {}

  double operator()(int r, double x, int s, double y) const { return eval_(r, x, s, y); }

  const std::string& name() const { return spec_.name; }
  const std::vector<int>& levels() const { return spec_.levels; }
  int expected_count(int r) const;
  bool half_line() const { return spec_.half_line; }
  double lo() const { return spec_.lo; }
  double hi() const { return spec_.hi; }
  const std::vector<double>& breakpoints() const { return spec_.breakpoints; }
  std::string reference_measure() const;

 private:
  Spec spec_;
  Eval eval_;
};

// int K((r,x),(r,x)) dx over the kernel window
double level_count(const CorrelationKernel& k, int r, double rel_tol = 1e-10);

// Kernel of the minor process of an invariant matrix whose (positive)
// eigenvalues have density proportional to d_n(lambda) det(psi_j(lambda_i)).
// The polynomial side is expanded in Hermite polynomials; when the Gram
// matrix int chi_i psi_j is the identity (to 1e-8) it is used as is,
// otherwise it is inverted, refusing condition numbers above 1e12.
// Levels 1..n; for H level r has r points and matches level 2r+1 of the
// real odd case of size 2n+1.
CorrelationKernel triangular_kernel(const FieldContext& ctx, std::vector<Integrand> psi);

// psi for the Gaussian ensemble: h_{i-1}(x) e^{-x^2/2} for C, and
// sqrt(2) h_{e_i}(x) e^{-x^2/2} 1{x > 0} for R and H, so that the Gram
// matrix against the matching chi is exactly the identity.
std::vector<Integrand> gue_psi(const FieldContext& ctx);
CorrelationKernel gue_minor_kernel(const FieldContext& ctx);

// Joint density of the ordered top-level points (eigenvalues for C, positive
// radial coordinates for R and H) of a triangular kernel: det K(n, x_i; n,
// x_j). Zero off the chamber.
double top_level_density(const CorrelationKernel& k, const std::vector<double>& x);

// Indicator of the explicit real-Gaussian formula's first term: the stated
// 1{r < s} or the 1{s < r} appearing in its derivation.
enum class IndicatorConvention { stated, derivation };

// Explicit Hermite-sum kernel of the infinite real Gaussian minor process,
// levels 1..n_max, with the normalization made exact on R_+.
CorrelationKernel guer_kernel(int n_max, IndicatorConvention conv = IndicatorConvention::stated);

// Kernel of the rank-one perturbation chain started at Omega(lambda), levels
// 1..m. Field C, H or R with n odd; lambda strictly decreasing (and
// positive unless F = C).
CorrelationKernel rectangular_kernel(const RadialPoint& lambda, int m);

// phi^{(s)}(x, y) of the rectangular construction, exposed for tests.
double rect_phi_power(const FieldContext& ctx, int s, double x, double y);
// (phi^{(s)} * x^p)(x); s = 0 gives x^p
double rect_phi_power_monomial(const FieldContext& ctx, int s, int p, double x);

// ---- correlation estimation ----

struct LevelPoint {
  int level;
  double x;
};
using Configuration = std::vector<LevelPoint>;

// Cells are (level, bin) pairs, bins given by common edges.
struct BinGrid {
  std::vector<int> levels;
  std::vector<double> edges;

  int bins() const { return static_cast<int>(edges.size()) - 1; }
  int cells() const { return static_cast<int>(levels.size()) * bins(); }
  // -1 outside the grid
  int cell(int level, double x) const;
  int level_of(int cell) const { return levels[cell / bins()]; }
  double lo(int cell) const { return edges[cell % bins()]; }
  double hi(int cell) const { return edges[cell % bins() + 1]; }
};

struct CorrelationEstimate {
  BinGrid grid;
  long samples = 0;
  // rho_1 per cell; missing where no point ever fell
  std::vector<double> rho1, rho1_se;
  std::vector<bool> rho1_missing;
  // rho_2 per ordered pair of cells, excluding coincident points
  Eigen::MatrixXd rho2, rho2_se;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> rho2_missing;
};

// Associative accumulator of binned moment sums.
class CorrelationAccumulator {
 public:
  explicit CorrelationAccumulator(BinGrid grid);
  void add(const Configuration& c);
  void merge(const CorrelationAccumulator& o);
  CorrelationEstimate result() const;
  long samples() const { return n_; }

 private:
  BinGrid grid_;
  long n_ = 0;
  Eigen::VectorXd s1_, q1_;
  Eigen::MatrixXd s2_, q2_;
};

CorrelationEstimate estimate_correlations(const std::vector<Configuration>& samples,
                                          const BinGrid& grid, long min_samples = 1000);

// Bin averages predicted by a kernel: rho_1 over a cell, and the 2 x 2
// determinant over a pair of cells.
double kernel_rho1_cell(const CorrelationKernel& k, const BinGrid& g, int cell,
                        double rel_tol = 1e-9);
double kernel_rho2_cell(const CorrelationKernel& k, const BinGrid& g, int a, int b,
                        double rel_tol = 1e-7);

// Points of the minor process of m at the levels of the triangular kernel:
// all eigenvalues for C, absolute radial coordinates for R and H.
Configuration minor_configuration(const StructuredMatrix& m);

}  // namespace orbit

#endif
