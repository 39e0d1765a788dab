// Copyright 2026 The hdecert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hdecert/core.hpp"
#include "hdecert/spectra.hpp"

namespace hdecert {

/// Dense Hermitian operator on a bipartite space.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix entries) : m_(std::move(entries)) {
    detail::require(m_.rows() == m_.cols() && m_.rows() > 0, "HermitianOperator: matrix must be square");
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    detail::require(dev <= tol::kHermitian,
                    "HermitianOperator: matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
    m_ = (0.5 * (m_ + m_.adjoint())).eval();
  }

  static HermitianOperator identity(int dim) {
    return HermitianOperator(CMatrix::Identity(dim, dim));
  }
  static HermitianOperator projector(const CVector& v) {
    return HermitianOperator(v * v.adjoint() / v.squaredNorm());
  }

  [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
  [[nodiscard]] const CMatrix& matrix() const { return m_; }

  /// Eigenvalues in descending order.
  [[nodiscard]] RVector eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("HermitianOperator: eigensolver failed");
    return es.eigenvalues().reverse();
  }

  /// 0 <= op <= 1 up to tol::kEigen.
  [[nodiscard]] bool is_effect() const {
    const RVector ev = eigenvalues();
    return ev(ev.size() - 1) >= -tol::kEigen && ev(0) <= 1.0 + tol::kEigen;
  }

  [[nodiscard]] bool fixes(const CVector& psi, double eps = tol::kFixesTarget) const {
    return (m_ * psi - psi).norm() <= eps;
  }

  [[nodiscard]] bool is_projector(double eps = tol::kEigen) const {
    return (m_ * m_ - m_).cwiseAbs().maxCoeff() <= eps;
  }

  friend HermitianOperator operator+(const HermitianOperator& x, const HermitianOperator& y) {
    return HermitianOperator(x.m_ + y.m_);
  }
  friend HermitianOperator operator*(double w, const HermitianOperator& x) {
    return HermitianOperator(w * x.m_);
  }

 private:
  CMatrix m_;
};

struct SpectralGap {
  double beta = 0.0;
  double nu = 1.0;
};

/// One test of a strategy: performed with probability `weight`, passing
/// outcome `op`.
struct WeightedTest {
  double weight = 0.0;
  HermitianOperator op;
};

enum class StrategyId { Global, Opt, Mub, Sep, SepH, LcH, TwoDesign, Family, WangHayashi };

inline std::string to_string(StrategyId id) {
  switch (id) {
    case StrategyId::Global: return "global";
    case StrategyId::Opt: return "opt";
    case StrategyId::Mub: return "mub";
    case StrategyId::Sep: return "sep";
    case StrategyId::SepH: return "seph";
    case StrategyId::LcH: return "lch";
    case StrategyId::TwoDesign: return "two_design";
    case StrategyId::Family: return "family";
    case StrategyId::WangHayashi: return "wang_hayashi";
  }
  return "unknown";
}

/// Weighted list of tests for a target state, with the derived verification
/// operator. Every test satisfies 0 <= T <= 1 and T|Psi> = |Psi>; the weights
/// are a probability distribution.
class Strategy {
 public:
  Strategy(StrategyId id, std::vector<WeightedTest> tests, PureState target)
      : id_(id), tests_(std::move(tests)), target_(std::move(target)), op_(build()) {}

  [[nodiscard]] StrategyId id() const { return id_; }
  [[nodiscard]] const std::vector<WeightedTest>& tests() const { return tests_; }
  [[nodiscard]] const PureState& target() const { return target_; }
  [[nodiscard]] const HermitianOperator& op() const { return op_; }

  [[nodiscard]] bool is_projective() const {
    for (const auto& t : tests_)
      if (!t.op.is_projector()) return false;
    return true;
  }

 private:
  HermitianOperator build() const {
    detail::require(!tests_.empty(), "Strategy: no tests");
    const CVector psi = target_.vector();
    const int dim = static_cast<int>(psi.size());
    double total = 0.0;
    CMatrix acc = CMatrix::Zero(dim, dim);
    for (const auto& t : tests_) {
      detail::require(t.weight >= 0.0, "Strategy: negative weight");
      detail::require(t.op.dim() == dim, "Strategy: test dimension mismatch");
      detail::require(t.op.is_effect(), "Strategy: test operator outside [0, 1]");
      detail::require(t.op.fixes(psi, tol::kEigen), "Strategy: test does not pass the target");
      total += t.weight;
      acc += t.weight * t.op.matrix();
    }
    detail::require(std::abs(total - 1.0) <= 1e-12, "Strategy: weights must sum to 1");
    return HermitianOperator(acc);
  }

  StrategyId id_;
  std::vector<WeightedTest> tests_;
  PureState target_;
  HermitianOperator op_;
};

/// sum_j sqrt(s_j) |jj>, embedded in a d x d_b coefficient matrix.
inline PureState target_state(const SchmidtSpectrum& s, int d_b) {
  detail::require(d_b >= s.dim(), "target_state: d_b must be at least the spectrum length");
  CMatrix c = CMatrix::Zero(s.dim(), d_b);
  for (int j = 0; j < s.dim(); ++j) c(j, j) = std::sqrt(s[j]);
  return PureState(std::move(c));
}

inline PureState target_state(const SchmidtSpectrum& s) { return target_state(s, s.dim()); }

namespace detail {

inline CMatrix homogeneous(const CVector& psi, double beta) {
  const auto n = psi.size();
  const CMatrix proj = psi * psi.adjoint();
  return proj + beta * (CMatrix::Identity(n, n) - proj);
}

inline CVector product(const CVector& x, const CVector& y) {
  CVector v(x.size() * y.size());
  for (Eigen::Index j = 0; j < x.size(); ++j)
    for (Eigen::Index k = 0; k < y.size(); ++k) v(j * y.size() + k) = x(j) * y(k);
  return v;
}

inline CVector basis_vector(int d, int j) {
  CVector v = CVector::Zero(d);
  v(j) = 1.0;
  return v;
}

/// Fourier vector u_j(k) = omega^{jk} / sqrt(d).
inline CVector fourier(int d, int j) {
  CVector u(d);
  for (int k = 0; k < d; ++k)
    u(k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                      2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d);
  return u;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace detail

/// Separable operator |Psi><Psi| + sum_{j != k} sqrt(s_j s_k) |jk><jk|;
/// beta = sqrt(s_0 s_1).
inline HermitianOperator omega_sep(const SchmidtSpectrum& s) {
  const int d = s.dim();
  const CVector psi = target_state(s).vector();
  CMatrix m = psi * psi.adjoint();
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      if (j != k) m(j * d + k, j * d + k) += std::sqrt(s[j] * s[k]);
  return HermitianOperator(std::move(m));
}

/// Optimal separable homogeneous operator; beta = sqrt(s0 s1) / (1 + sqrt(s0 s1)).
inline HermitianOperator omega_sep_h(const SchmidtSpectrum& s, int d_b) {
  const double g = std::sqrt(s.s0() * s.s1());
  return HermitianOperator(detail::homogeneous(target_state(s, d_b).vector(), g / (1.0 + g)));
}
inline HermitianOperator omega_sep_h(const SchmidtSpectrum& s) { return omega_sep_h(s, s.dim()); }

/// Local homogeneous operator; beta = (s0 + s1) / (2 + s0 + s1).
inline HermitianOperator omega_lc_h(const SchmidtSpectrum& s, int d_b) {
  const double t = s.s0() + s.s1();
  return HermitianOperator(detail::homogeneous(target_state(s, d_b).vector(), t / (2.0 + t)));
}
inline HermitianOperator omega_lc_h(const SchmidtSpectrum& s) { return omega_lc_h(s, s.dim()); }

/// Optimal operator for the d x d maximally entangled state; beta = 1/(d+1).
inline HermitianOperator omega_opt(int d) {
  detail::require(d >= 2, "omega_opt: d must be at least 2");
  return HermitianOperator(
      detail::homogeneous(target_state(SchmidtSpectrum::uniform(d)).vector(), 1.0 / (d + 1)));
}

/// Two-test strategy: the computational test sum_j |jj><jj| and the
/// Fourier test sum_j |u_j v_j><u_j v_j| with v_j = M |u_j*>,
/// M = sqrt(d) diag(sqrt(s)). Each test has weight 1/2 and beta = 1/2.
inline Strategy omega_mub(const SchmidtSpectrum& s) {
  const int d = s.dim();
  detail::require(d >= 2, "omega_mub: d must be at least 2");
  const int n = d * d;
  CMatrix comp = CMatrix::Zero(n, n);
  CMatrix four = CMatrix::Zero(n, n);
  for (int j = 0; j < d; ++j) {
    comp(j * d + j, j * d + j) = 1.0;
    const CVector u = detail::fourier(d, j);
    CVector v(d);
    for (int k = 0; k < d; ++k) v(k) = std::sqrt(d * s[k]) * std::conj(u(k));
    const CVector w = detail::product(u, v);
    four += w * w.adjoint();
  }
  std::vector<WeightedTest> tests{{0.5, HermitianOperator(comp)}, {0.5, HermitianOperator(four)}};
  return Strategy(StrategyId::Mub, std::move(tests), target_state(s));
}

/// Orthonormal basis vectors (columns) of a complete set of d + 1 mutually
/// unbiased bases for prime d: the computational basis plus, for odd d, the
/// quadratic-phase bases (1/sqrt d) sum_k omega^{a k^2 + b k} |k>; for d = 2 the
/// X and Y eigenbases.
inline std::vector<CMatrix> mub_bases(int d) {
  detail::require(detail::is_prime(d), "mub_bases: d must be prime");
  std::vector<CMatrix> bases;
  bases.push_back(CMatrix::Identity(d, d));
  const double h = 1.0 / std::sqrt(2.0);
  if (d == 2) {
    CMatrix x(2, 2), y(2, 2);
    x << h, h, h, -h;
    y << h, h, Complex(0, h), Complex(0, -h);
    bases.push_back(x);
    bases.push_back(y);
    return bases;
  }
  for (int a = 0; a < d; ++a) {
    CMatrix m(d, d);
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) {
        const long ph = (static_cast<long>(a) * k * k + static_cast<long>(b) * k) % d;
        m(k, b) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                             2.0 * std::numbers::pi * static_cast<double>(ph) / d);
      }
    bases.push_back(m);
  }
  return bases;
}

/// Conjugate-basis tests Pi(B) = sum_psi |psi><psi| (x) |psi*><psi*| over a
/// complete MUB set, uniform weights; the operator equals omega_opt(d).
inline Strategy two_design_strategy(int d) {
  detail::require(detail::is_prime(d), "two_design_strategy: d must be prime");
  const auto bases = mub_bases(d);
  const int n = d * d;
  std::vector<WeightedTest> tests;
  for (const CMatrix& basis : bases) {
    CMatrix pi = CMatrix::Zero(n, n);
    for (int b = 0; b < d; ++b) {
      const CVector w = detail::product(basis.col(b), basis.col(b).conjugate());
      pi += w * w.adjoint();
    }
    tests.push_back({1.0 / (d + 1), HermitianOperator(pi)});
  }
  return Strategy(StrategyId::TwoDesign, std::move(tests), target_state(SchmidtSpectrum::uniform(d)));
}

/// beta is the second-largest eigenvalue, i.e. the largest eigenvalue of op on
/// the orthogonal complement of the target.
inline SpectralGap spectral_gap(const HermitianOperator& op, const PureState& target) {
  const CVector psi = target.vector();
  detail::require(psi.size() == op.dim(), "spectral_gap: dimension mismatch");
  if (!op.fixes(psi)) throw InvalidArgument("spectral_gap: operator does not fix the target state");
  if (op.dim() == 1) return {0.0, 1.0};
  const RVector ev = op.eigenvalues();
  const double beta = ev(1);
  return {beta, 1.0 - beta};
}

/// Transpose on the second factor: (jk),(lm) -> (jm),(lk).
inline HermitianOperator partial_transpose(const HermitianOperator& op, Dims dims) {
  detail::require(op.dim() == dims.total(), "partial_transpose: dimension mismatch");
  const int db = dims.b;
  CMatrix out(op.dim(), op.dim());
  for (int j = 0; j < dims.a; ++j)
    for (int k = 0; k < db; ++k)
      for (int l = 0; l < dims.a; ++l)
        for (int m = 0; m < db; ++m) out(j * db + m, l * db + k) = op.matrix()(j * db + k, l * db + m);
  return HermitianOperator(std::move(out));
}

inline bool is_ppt(const HermitianOperator& op, Dims dims) {
  const RVector ev = partial_transpose(op, dims).eigenvalues();
  return ev(ev.size() - 1) >= -tol::kEigen;
}

/// Omega and 1 - Omega both PPT; equivalent to separability for 2 x 2 and 2 x 3.
inline bool is_ppt_verification_operator(const HermitianOperator& op, Dims dims) {
  const HermitianOperator complement(CMatrix::Identity(op.dim(), op.dim()) - op.matrix());
  return is_ppt(op, dims) && is_ppt(complement, dims);
}

}  // namespace hdecert
