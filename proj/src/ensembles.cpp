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


#include "orbit/ensembles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "orbit/error.hpp"

namespace orbit {

namespace {

const cplx I(0.0, 1.0);

StructuredMatrix make(const FieldContext& ctx, MatrixKind kind, int cols,
                      Eigen::MatrixXcd data) {
  StructuredMatrix m;
  m.ctx = ctx;
  m.kind = kind;
  m.cols = cols;
  m.data = std::move(data);
  return m;
}

// quaternion a + b j as its 2x2 complex block
void put_quaternion(Eigen::MatrixXcd& m, int bi, int bj, cplx a, cplx b) {
  m(2 * bi, 2 * bj) = a;
  m(2 * bi, 2 * bj + 1) = b;
  m(2 * bi + 1, 2 * bj) = -std::conj(b);
  m(2 * bi + 1, 2 * bj + 1) = std::conj(a);
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("Hermitian eigensolver did not converge", h.norm());
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

}  // namespace

int dim_hermitian(const FieldContext& ctx) {
  const int n = ctx.n;
  switch (ctx.field) {
    case Field::R: return n * (n - 1) / 2;
    case Field::C: return n * n;
    case Field::H: return n * (2 * n + 1);
  }
  return 0;
}

int dim_rectangular(const FieldContext& ctx, int k) {
  int per = ctx.field == Field::R ? 1 : (ctx.field == Field::C ? 2 : 4);
  return per * ctx.n * k;
}

double hermitian_inner(const StructuredMatrix& a, const StructuredMatrix& b) {
  double bfac = a.ctx.field == Field::C ? 1.0 : 0.5;
  return bfac * (a.data * b.data).trace().real();
}

double rectangular_inner(const StructuredMatrix& a, const StructuredMatrix& b) {
  double afac = a.ctx.field == Field::R ? 1.0 : 2.0;
  return afac * (a.data * b.data.adjoint()).trace().real();
}

double structure_defect(const StructuredMatrix& m) {
  const auto& d = m.data;
  double def = 0.0;
  auto upd = [&](double v) { def = std::max(def, v); };
  if (m.kind == MatrixKind::hermitian_P) upd((d - d.adjoint()).cwiseAbs().maxCoeff());
  if (m.kind == MatrixKind::unitary_U) {
    Eigen::MatrixXcd e = d * d.adjoint() - Eigen::MatrixXcd::Identity(d.rows(), d.rows());
    upd(e.cwiseAbs().maxCoeff());
  }
  switch (m.ctx.field) {
    case Field::C: break;
    case Field::R:
      if (m.kind == MatrixKind::hermitian_P) {
        upd(d.real().cwiseAbs().maxCoeff());
      } else {
        upd(d.imag().cwiseAbs().maxCoeff());
        if (m.kind == MatrixKind::unitary_U)
          upd(std::fabs(d.real().determinant() - 1.0));
      }
      break;
    case Field::H:
      for (int i = 0; i < d.rows() / 2; ++i)
        for (int j = 0; j < d.cols() / 2; ++j) {
          cplx a = d(2 * i, 2 * j), b = d(2 * i, 2 * j + 1);
          cplx c = d(2 * i + 1, 2 * j), e = d(2 * i + 1, 2 * j + 1);
          if (m.kind == MatrixKind::hermitian_P) {
            // i times a quaternion: ((p, q), (conj q, -conj p))
            upd(std::abs(e + std::conj(a)));
            upd(std::abs(c - std::conj(b)));
          } else {
            upd(std::abs(e - std::conj(a)));
            upd(std::abs(c + std::conj(b)));
          }
        }
      break;
  }
  return def;
}

StructuredMatrix sample_gaussian_hermitian(const FieldContext& ctx, Rng& rng) {
  const int n = ctx.n;
  const double h = std::sqrt(0.5);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(ctx.ambient(), ctx.ambient());
  switch (ctx.field) {
    case Field::C:
      for (int i = 0; i < n; ++i) {
        m(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
          double re = rng.normal(), im = rng.normal();
          m(i, j) = cplx(h * re, h * im);
          m(j, i) = std::conj(m(i, j));
        }
      }
      break;
    case Field::R:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double x = rng.normal();
          m(i, j) = I * x;
          m(j, i) = -I * x;
        }
      break;
    case Field::H:
      for (int i = 0; i < n; ++i) {
        double p = rng.normal();
        double qr = rng.normal(), qi = rng.normal();
        cplx q(qr, qi);
        m(2 * i, 2 * i) = p;
        m(2 * i + 1, 2 * i + 1) = -p;
        m(2 * i, 2 * i + 1) = q;
        m(2 * i + 1, 2 * i) = std::conj(q);
        for (int j = i + 1; j < n; ++j) {
          double a1 = rng.normal(), a2 = rng.normal();
          double b1 = rng.normal(), b2 = rng.normal();
          cplx p2(h * a1, h * a2), q2(h * b1, h * b2);
          m(2 * i, 2 * j) = p2;
          m(2 * i, 2 * j + 1) = q2;
          m(2 * i + 1, 2 * j) = std::conj(q2);
          m(2 * i + 1, 2 * j + 1) = -std::conj(p2);
          m.block(2 * j, 2 * i, 2, 2) = m.block(2 * i, 2 * j, 2, 2).adjoint();
        }
      }
      break;
  }
  return make(ctx, MatrixKind::hermitian_P, n, std::move(m));
}

StructuredMatrix sample_gaussian_rectangular(const FieldContext& ctx, int k, Rng& rng) {
  if (k < 1) throw DomainError("rectangular width k must be >= 1");
  const int n = ctx.n;
  Eigen::MatrixXcd m;
  switch (ctx.field) {
    case Field::R:
      m = Eigen::MatrixXcd::Zero(n, k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = rng.normal();
      break;
    case Field::C: {
      const double s = std::sqrt(0.5);
      m = Eigen::MatrixXcd::Zero(n, k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) {
          double re = rng.normal(), im = rng.normal();
          m(i, j) = cplx(s * re, s * im);
        }
      break;
    }
    case Field::H:
      m = Eigen::MatrixXcd::Zero(2 * n, 2 * k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) {
          double a1 = rng.normal(), a2 = rng.normal();
          double b1 = rng.normal(), b2 = rng.normal();
          put_quaternion(m, i, j, cplx(0.5 * a1, 0.5 * a2), cplx(0.5 * b1, 0.5 * b2));
        }
      break;
  }
  return make(ctx, MatrixKind::rectangular_M, k, std::move(m));
}

StructuredMatrix sample_haar_unitary(const FieldContext& ctx, Rng& rng) {
  const int n = ctx.n;
  Eigen::MatrixXcd q;
  switch (ctx.field) {
    case Field::C: {
      Eigen::MatrixXcd g(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          double re = rng.normal(), im = rng.normal();
          g(i, j) = cplx(re, im);
        }
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
      q = qr.householderQ();
      Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < n; ++j) {
        double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
      }
      break;
    }
    case Field::R: {
      Eigen::MatrixXd g(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
      Eigen::MatrixXd qr_q = qr.householderQ();
      for (int j = 0; j < n; ++j)
        if (qr.matrixQR()(j, j) < 0) qr_q.col(j) *= -1.0;
      if (qr_q.determinant() < 0) qr_q.col(0) *= -1.0;
      q = qr_q.cast<cplx>();
      break;
    }
    case Field::H: {
      // quaternionic Ginibre, then Gram-Schmidt over 2-column blocks
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          double a1 = rng.normal(), a2 = rng.normal();
          double b1 = rng.normal(), b2 = rng.normal();
          put_quaternion(g, i, j, cplx(a1, a2), cplx(b1, b2));
        }
      q = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd v = g.block(0, 2 * j, 2 * n, 2);
        for (int pass = 0; pass < 2; ++pass)
          for (int i = 0; i < j; ++i) {
            auto qi = q.block(0, 2 * i, 2 * n, 2);
            Eigen::MatrixXcd coef = qi.adjoint() * v;
            v -= qi * coef;
          }
        double nrm = std::sqrt((v.adjoint() * v)(0, 0).real());
        q.block(0, 2 * j, 2 * n, 2) = v / nrm;
      }
      break;
    }
  }
  return make(ctx, MatrixKind::unitary_U, n, std::move(q));
}

StructuredMatrix omega(const RadialPoint& lambda) {
  const FieldContext& ctx = lambda.ctx;
  const int a = ctx.ambient();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a, a);
  const auto& x = lambda.coords;
  switch (ctx.field) {
    case Field::C:
      for (int i = 0; i < ctx.n; ++i) m(i, i) = x[i];
      break;
    case Field::R:
      for (int i = 0; i < ctx.n_tilde; ++i) {
        m(2 * i, 2 * i + 1) = I * x[i];
        m(2 * i + 1, 2 * i) = -I * x[i];
      }
      break;
    case Field::H:
      for (int i = 0; i < ctx.n; ++i) {
        m(2 * i, 2 * i) = x[i];
        m(2 * i + 1, 2 * i + 1) = -x[i];
      }
      break;
  }
  return make(ctx, MatrixKind::hermitian_P, ctx.n, std::move(m));
}

StructuredMatrix omega_ones(const FieldContext& ctx_k, int ones) {
  std::vector<double> x(ctx_k.n_tilde, 0.0);
  for (int i = 0; i < std::min(ones, ctx_k.n_tilde); ++i) x[i] = 1.0;
  return omega(RadialPoint(ctx_k, x));
}

RadialPoint radial_part(const StructuredMatrix& m) {
  const FieldContext& ctx = m.ctx;
  std::vector<double> ev = sorted_eigenvalues(m.data);
  const int len = static_cast<int>(ev.size());
  std::vector<double> lam(ctx.n_tilde);
  switch (ctx.field) {
    case Field::C:
      lam = ev;
      break;
    case Field::H:
    case Field::R:
      // eigenvalues come in +- pairs; average each pair
      for (int i = 0; i < ctx.n_tilde; ++i)
        lam[i] = std::max(0.0, 0.5 * (ev[i] - ev[len - 1 - i]));
      if (ctx.field == Field::R && ctx.epsilon == 0 && ctx.n_tilde > 0) {
        Eigen::MatrixXd x = (-I * m.data).real();
        x = 0.5 * (x - x.transpose()).eval();
        if (pfaffian(x) < 0) lam.back() = -lam.back();
      }
      break;
  }
  return RadialPoint(ctx, lam);
}

StructuredMatrix minor(const StructuredMatrix& m, int k) {
  if (k < 1 || k > m.ctx.n)
    throw DomainError("minor order " + std::to_string(k) + " outside 1.." +
                      std::to_string(m.ctx.n));
  FieldContext sub = FieldContext::make(m.ctx.field, k);
  int a = sub.ambient();
  return make(sub, m.kind, k, m.data.topLeftCorner(a, a));
}

GTPattern minor_process(const StructuredMatrix& m) {
  GTPattern p;
  p.ctx = m.ctx;
  for (int k = 1; k <= m.ctx.n; ++k) {
    if (m.ctx.field == Field::H) {
      std::vector<double> ev = sorted_eigenvalues(m.data.topLeftCorner(2 * k - 1, 2 * k - 1));
      std::vector<double> half(ev.begin(), ev.begin() + k);
      for (double& v : half) v = std::fabs(v);
      std::sort(half.begin(), half.end(), std::greater<double>());
      p.levels.push_back(half);
    }
    p.levels.push_back(radial_part(minor(m, k)).coords);
  }
  return p;
}

StructuredMatrix conjugate(const StructuredMatrix& u, const StructuredMatrix& m) {
  Eigen::MatrixXcd d = u.data * m.data * u.data.adjoint();
  d = 0.5 * (d + d.adjoint()).eval();
  return make(m.ctx, MatrixKind::hermitian_P, m.ctx.n, std::move(d));
}

StructuredMatrix sandwich(const StructuredMatrix& m, const StructuredMatrix& om) {
  Eigen::MatrixXcd d = m.data * om.data * m.data.adjoint();
  d = 0.5 * (d + d.adjoint()).eval();
  return make(m.ctx, MatrixKind::hermitian_P, m.ctx.n, std::move(d));
}

StructuredMatrix add(const StructuredMatrix& a, const StructuredMatrix& b) {
  return make(a.ctx, a.kind, a.cols, a.data + b.data);
}

double pfaffian(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2) return 0.0;
  double pf = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    double best = std::fabs(a(k + 1, k));
    for (int i = k + 2; i < n; ++i)
      if (std::fabs(a(i, k)) > best) {
        best = std::fabs(a(i, k));
        kp = i;
      }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      Eigen::VectorXd tau = a.row(k).segment(k + 2, n - k - 2).transpose() / a(k, k + 1);
      Eigen::VectorXd col = a.col(k + 1).segment(k + 2, n - k - 2);
      a.block(k + 2, k + 2, n - k - 2, n - k - 2) +=
          tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace orbit
