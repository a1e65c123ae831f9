// Copyright 2026 The Negentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::entropy::detail {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kBarrierGrowth = 10.0;
constexpr double kMaxBarrierWeight = 1e16;
constexpr double kArmijo = 0.25;

// Newton decrement below which a centering step is considered converged.
constexpr double kCenteringTol = 1e-12;
constexpr int kMaxCenteringSteps = 200;

// tr_A of an A-first (dA*dB) square matrix.
Matrix trace_out_a(const Matrix& m, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

// id_A (x) sigma.
Matrix lift(const Matrix& sigma, int dim_a) {
  const int db = static_cast<int>(sigma.rows());
  Matrix out = Matrix::Zero(dim_a * db, dim_a * db);
  for (int a = 0; a < dim_a; ++a) out.block(a * db, a * db, db, db) = sigma;
  return out;
}

// Solves H dx = -g subject to c . dx = 0 (c = nullptr for no constraint).
// Returns false if H is not numerically positive definite.
bool newton_direction(const MatrixXd& h, const VectorXd& g, const VectorXd* c, VectorXd& dx) {
  Eigen::LLT<MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    // Mild diagonal regularization keeps the iteration alive near the
    // boundary where the barrier Hessian is badly conditioned.
    MatrixXd reg = h;
    const double shift = 1e-12 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    reg.diagonal().array() += shift;
    llt.compute(reg);
    if (llt.info() != Eigen::Success) return false;
  }
  VectorXd hg = llt.solve(g);
  if (c == nullptr) {
    dx = -hg;
    return true;
  }
  VectorXd hc = llt.solve(*c);
  const double nu = -c->dot(hg) / c->dot(hc);
  dx = -(hg + nu * hc);
  return true;
}

// Log-det barrier derivatives of sigma(x) given S = sigma^{-1}:
// d/dx_k log det = tr(S G_k), d2 = -tr(S G_k S G_l).
void logdet_derivatives(const HermitianBasis& basis, const Matrix& s, VectorXd& grad,
                        MatrixXd& hess) {
  const int n = basis.size();
  grad.resize(n);
  hess.resize(n, n);
  for (int k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (const auto& e : basis[k]) acc += e.value * s(e.col, e.row);
    grad(k) = acc.real();
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      Complex acc = 0.0;
      for (const auto& e : basis[k]) {
        for (const auto& f : basis[l]) {
          acc += e.value * f.value * s(e.col, f.row) * s(f.col, e.row);
        }
      }
      hess(k, l) = -acc.real();
      hess(l, k) = hess(k, l);
    }
  }
}

double log_det_pd(const Eigen::LLT<Matrix>& llt) {
  double acc = 0.0;
  const Matrix& l = llt.matrixLLT();
  for (int i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

}  // namespace

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("Hermitian basis dimension must be positive");
  for (int p = 0; p < dim; ++p) elements_.push_back({{p, p, Complex(1.0, 0.0)}});
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      elements_.push_back({{p, q, Complex(kInvSqrt2, 0.0)}, {q, p, Complex(kInvSqrt2, 0.0)}});
      elements_.push_back({{p, q, Complex(0.0, kInvSqrt2)}, {q, p, Complex(0.0, -kInvSqrt2)}});
    }
  }
}

Matrix HermitianBasis::assemble(const VectorXd& x) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int k = 0; k < size(); ++k) {
    for (const auto& e : elements_[static_cast<size_t>(k)]) out(e.row, e.col) += x(k) * e.value;
  }
  return out;
}

VectorXd HermitianBasis::coordinates(const Matrix& hermitian) const {
  VectorXd x(size());
  for (int k = 0; k < size(); ++k) {
    Complex acc = 0.0;
    for (const auto& e : elements_[static_cast<size_t>(k)]) {
      acc += std::conj(e.value) * hermitian(e.row, e.col);
    }
    x(k) = acc.real();
  }
  return x;
}

VectorXd HermitianBasis::traces() const {
  VectorXd t = VectorXd::Zero(size());
  for (int k = 0; k < dim_; ++k) t(k) = 1.0;
  return t;
}

// ---------------------------------------------------------------------------
// Min-entropy: minimize t tr sigma - log det(id (x) sigma - rho).

MinEntropySolution solve_min_entropy(const Matrix& rho_ab, int dim_a, int dim_b,
                                     const SolverOptions& options) {
  const HermitianBasis basis(dim_b);
  const int n = basis.size();
  const int d = dim_a * dim_b;
  const VectorXd a = basis.traces();

  const double lmax = std::max(0.0, quantum::eigh(rho_ab).values.maxCoeff());
  VectorXd x = basis.coordinates(Matrix::Identity(dim_b, dim_b) * (lmax + 1.0));

  auto slack = [&](const VectorXd& v) { return Matrix(lift(basis.assemble(v), dim_a) - rho_ab); };
  auto barrier_value = [&](const VectorXd& v, double t, bool& feasible) {
    Eigen::LLT<Matrix> llt(slack(v));
    feasible = llt.info() == Eigen::Success;
    return feasible ? t * a.dot(v) - log_det_pd(llt) : 0.0;
  };

  MinEntropySolution out;
  double t = 1.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (;;) {
    Matrix y;
    for (int step = 0; step < kMaxCenteringSteps; ++step) {
      if (++out.iterations > options.max_iterations) break;
      Eigen::LLT<Matrix> llt(slack(x));
      y = llt.solve(Matrix::Identity(d, d));
      const Matrix yb = trace_out_a(y, dim_a, dim_b);

      VectorXd g(n);
      for (int k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (const auto& e : basis[k]) acc += e.value * yb(e.col, e.row);
        g(k) = t * a(k) - acc.real();
      }
      // tr(Y (id (x) G_k) Y (id (x) G_l)) contracted over the A indices.
      std::vector<Complex> tensor(static_cast<size_t>(dim_b) * dim_b * dim_b * dim_b, 0.0);
      auto at = [&](int jp, int i, int j, int ip) -> Complex& {
        return tensor[((static_cast<size_t>(jp) * dim_b + i) * dim_b + j) * dim_b + ip];
      };
      for (int aa = 0; aa < dim_a; ++aa) {
        for (int ab = 0; ab < dim_a; ++ab) {
          const auto y1 = y.block(ab * dim_b, aa * dim_b, dim_b, dim_b);
          const auto y2 = y.block(aa * dim_b, ab * dim_b, dim_b, dim_b);
          for (int jp = 0; jp < dim_b; ++jp) {
            for (int i = 0; i < dim_b; ++i) {
              const Complex u = y1(jp, i);
              for (int j = 0; j < dim_b; ++j) {
                for (int ip = 0; ip < dim_b; ++ip) at(jp, i, j, ip) += u * y2(j, ip);
              }
            }
          }
        }
      }
      MatrixXd h(n, n);
      for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
          Complex acc = 0.0;
          for (const auto& e : basis[k]) {
            for (const auto& f : basis[l]) acc += e.value * f.value * at(f.col, e.row, e.col, f.row);
          }
          h(k, l) = acc.real();
          h(l, k) = h(k, l);
        }
      }

      VectorXd dx;
      if (!newton_direction(h, g, nullptr, dx)) break;
      const double decrement = -g.dot(dx);
      if (decrement * 0.5 < kCenteringTol) break;

      bool feasible = false;
      const double f0 = barrier_value(x, t, feasible);
      double alpha = 1.0;
      for (; alpha > 1e-16; alpha *= 0.5) {
        const double f1 = barrier_value(x + alpha * dx, t, feasible);
        if (feasible && f1 <= f0 + kArmijo * alpha * g.dot(dx)) break;
      }
      if (alpha <= 1e-16) break;
      x += alpha * dx;
    }

    // Dual certificate from the central point: Y/t is dual feasible up to the
    // normalization tr_A Y = id, which is restored by a congruence.
    Eigen::LLT<Matrix> llt(slack(x));
    y = llt.solve(Matrix::Identity(d, d)) / t;
    y = 0.5 * (y + y.adjoint());
    const Matrix omega = trace_out_a(y, dim_a, dim_b);
    const auto eo = quantum::eigh(omega);
    RealVector inv_sqrt = eo.values.unaryExpr([](double v) { return 1.0 / std::sqrt(v); });
    const Matrix w = eo.vectors * inv_sqrt.asDiagonal() * eo.vectors.adjoint();
    const Matrix yc = lift(w, dim_a) * y * lift(w, dim_a);
    const double dual = (rho_ab * yc).trace().real();
    const Matrix sigma = basis.assemble(x);
    const double primal = sigma.trace().real();
    const double gap = (dual > 0.0) ? std::log2(primal / dual) : std::numeric_limits<double>::infinity();

    if (gap < best_gap) {
      best_gap = gap;
      out.sigma = sigma;
      out.primal = primal;
      out.dual = dual;
      out.gap_bits = std::max(0.0, gap);
    }
    if (gap <= options.target_gap || t >= kMaxBarrierWeight ||
        out.iterations > options.max_iterations) {
      break;
    }
    t *= kBarrierGrowth;
  }

  if (!(out.gap_bits <= options.max_gap)) {
    std::ostringstream os;
    os << "min-entropy solver stalled with certified gap " << out.gap_bits << " bits";
    throw SolverError(os.str(), out.gap_bits);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Max-entropy: maximize t F(sigma) + log det sigma over tr sigma = 1 with
// F(sigma) = tr sqrt(B^dag (id (x) sigma) B), rho = B B^dag.

MaxEntropySolution solve_max_entropy(const Matrix& rho_ab, int dim_a, int dim_b,
                                     const SolverOptions& options) {
  const HermitianBasis basis(dim_b);
  const int n = basis.size();
  const VectorXd a = basis.traces();

  const auto er = quantum::eigh(rho_ab);
  const double top = std::max(er.values.maxCoeff(), 0.0);
  std::vector<int> support;
  for (int i = 0; i < er.values.size(); ++i) {
    if (er.values(i) > 1e-14 * std::max(top, 1e-300)) support.push_back(i);
  }
  const int r = static_cast<int>(support.size());
  MaxEntropySolution out;
  if (r == 0 || top <= 0.0) {
    out.sigma = Matrix::Identity(dim_b, dim_b) / static_cast<double>(dim_b);
    return out;
  }
  Matrix b(rho_ab.rows(), r);
  for (int c = 0; c < r; ++c) {
    b.col(c) = er.vectors.col(support[static_cast<size_t>(c)]) *
               std::sqrt(er.values(support[static_cast<size_t>(c)]));
  }

  struct Eval {
    bool feasible = false;
    double objective = 0.0;  // F(sigma)
    double value = 0.0;      // barrier function (to be minimized)
    RealVector lambda;
    Matrix bt;               // B U
  };
  auto evaluate = [&](const VectorXd& v, double t) {
    Eval ev;
    const Matrix sigma = basis.assemble(v);
    Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success) return ev;
    const Matrix m = b.adjoint() * lift(sigma, dim_a) * b;
    const auto em = quantum::eigh(0.5 * (m + m.adjoint()));
    if (em.values.minCoeff() <= 0.0) return ev;
    ev.feasible = true;
    ev.lambda = em.values;
    ev.bt = b * em.vectors;
    ev.objective = em.values.array().sqrt().sum();
    ev.value = -t * ev.objective - log_det_pd(llt);
    return ev;
  };

  VectorXd x = basis.coordinates(Matrix::Identity(dim_b, dim_b) / static_cast<double>(dim_b));
  double t = 1.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (;;) {
    for (int step = 0; step < kMaxCenteringSteps; ++step) {
      if (++out.iterations > options.max_iterations) break;
      const Eval ev = evaluate(x, t);
      const RealVector sq = ev.lambda.array().sqrt();

      // W(i, j) = sum_a conj(Bt[(a,i), :])^T Bt[(a,j), :] assembled per basis
      // element: Mk = B~^dag (id (x) G_k) B~.
      std::vector<Matrix> mk(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) {
        Matrix acc = Matrix::Zero(r, r);
        for (const auto& e : basis[k]) {
          for (int aa = 0; aa < dim_a; ++aa) {
            acc += e.value * ev.bt.row(aa * dim_b + e.row).adjoint() * ev.bt.row(aa * dim_b + e.col);
          }
        }
        mk[static_cast<size_t>(k)] = std::move(acc);
      }
      MatrixXd gamma(r, r);
      for (int p = 0; p < r; ++p) {
        for (int q = 0; q < r; ++q) gamma(p, q) = -1.0 / (2.0 * sq(p) * sq(q) * (sq(p) + sq(q)));
      }
      VectorXd grad_f(n);
      MatrixXd hess_f(n, n);
      for (int k = 0; k < n; ++k) {
        const Matrix& m1 = mk[static_cast<size_t>(k)];
        double acc = 0.0;
        for (int p = 0; p < r; ++p) acc += 0.5 * m1(p, p).real() / sq(p);
        grad_f(k) = acc;
      }
      for (int k = 0; k < n; ++k) {
        const Matrix& m1 = mk[static_cast<size_t>(k)];
        for (int l = k; l < n; ++l) {
          const Matrix& m2 = mk[static_cast<size_t>(l)];
          double acc = 0.0;
          for (int p = 0; p < r; ++p) {
            for (int q = 0; q < r; ++q) acc += gamma(p, q) * (m1(p, q) * m2(q, p)).real();
          }
          hess_f(k, l) = acc;
          hess_f(l, k) = acc;
        }
      }
      const Matrix sigma = basis.assemble(x);
      const Matrix s_inv = Eigen::LLT<Matrix>(sigma).solve(Matrix::Identity(dim_b, dim_b));
      VectorXd grad_ld;
      MatrixXd hess_ld;
      logdet_derivatives(basis, s_inv, grad_ld, hess_ld);

      // Minimize phi = -t F - log det sigma.
      const VectorXd g = -t * grad_f - grad_ld;
      const MatrixXd h = -t * hess_f - hess_ld;
      VectorXd dx;
      if (!newton_direction(h, g, &a, dx)) break;
      const double decrement = -g.dot(dx);
      if (decrement * 0.5 < kCenteringTol) break;

      double alpha = 1.0;
      for (; alpha > 1e-16; alpha *= 0.5) {
        const Eval trial = evaluate(x + alpha * dx, t);
        if (trial.feasible && trial.value <= ev.value + kArmijo * alpha * g.dot(dx)) break;
      }
      if (alpha <= 1e-16) break;
      x += alpha * dx;
    }

    // Frank-Wolfe certificate: F is concave, so for any density sigma'
    // F(sigma') <= F(sigma) + tr(grad (sigma' - sigma)) <= F + lmax(grad) - tr(grad sigma).
    const Eval ev = evaluate(x, t);
    const RealVector inv_sq = ev.lambda.array().rsqrt();
    const Matrix grad_op =
        0.5 * trace_out_a(ev.bt * inv_sq.asDiagonal() * ev.bt.adjoint(), dim_a, dim_b);
    const Matrix sigma = basis.assemble(x);
    const double fw = quantum::eigh(0.5 * (grad_op + grad_op.adjoint())).values.maxCoeff() -
                      (grad_op * sigma).trace().real();
    const double upper = ev.objective + std::max(0.0, fw);
    // Report the objective at the normalized point; F scales as sqrt(tr sigma).
    const double trace = sigma.trace().real();
    const double feasible = ev.objective / std::sqrt(trace);
    const double gap = 2.0 * std::log2(upper / feasible);
    if (gap < best_gap) {
      best_gap = gap;
      out.sigma = sigma / trace;
      out.fidelity = feasible;
      out.upper = upper;
      out.gap_bits = gap;
    }
    if (gap <= options.target_gap || t >= kMaxBarrierWeight ||
        out.iterations > options.max_iterations) {
      break;
    }
    t *= kBarrierGrowth;
  }

  if (!(out.gap_bits <= options.max_gap)) {
    std::ostringstream os;
    os << "max-entropy solver stalled with certified gap " << out.gap_bits << " bits";
    throw SolverError(os.str(), out.gap_bits);
  }
  return out;
}

}  // namespace negentropy::entropy::detail
