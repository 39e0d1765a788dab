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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hdecert/core.hpp"

namespace hdecert {

/// Nonincreasing probability vector: the Schmidt coefficients s_0 >= s_1 >= ...
/// of a bipartite pure state. Inputs are sorted on construction and
/// renormalized if their sum is within tol::kRenormalize of one.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
    detail::require(!values_.empty(), "SchmidtSpectrum: empty spectrum");
    double sum = 0.0;
    for (double& v : values_) {
      detail::require(std::isfinite(v), "SchmidtSpectrum: non-finite entry");
      detail::require(v >= -tol::kRenormalize, "SchmidtSpectrum: negative entry");
      v = std::max(v, 0.0);
      sum += v;
    }
    detail::require(std::abs(sum - 1.0) <= tol::kRenormalize,
                    "SchmidtSpectrum: entries must sum to 1 (got " + std::to_string(sum) + ")");
    for (double& v : values_) v /= sum;
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  /// Maximally entangled spectrum (1/d, ..., 1/d).
  static SchmidtSpectrum uniform(int d) {
    detail::require(d >= 1, "SchmidtSpectrum::uniform: d must be positive");
    return SchmidtSpectrum(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
  }

  [[nodiscard]] int dim() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
  /// s_j with the zero-padding convention: indices past the end read as 0.
  [[nodiscard]] double at_padded(int j) const { return j < dim() ? (*this)[j] : 0.0; }
  [[nodiscard]] double s0() const { return values_[0]; }
  [[nodiscard]] double s1() const { return at_padded(1); }

  /// Number of coefficients above `eps`.
  [[nodiscard]] int rank(double eps = 1e-12) const {
    return static_cast<int>(std::count_if(values_.begin(), values_.end(),
                                          [eps](double v) { return v > eps; }));
  }

  [[nodiscard]] SchmidtSpectrum padded(int d) const {
    detail::require(d >= dim(), "SchmidtSpectrum::padded: cannot shrink");
    std::vector<double> v = values_;
    v.resize(static_cast<std::size_t>(d), 0.0);
    return SchmidtSpectrum(std::move(v));
  }

  [[nodiscard]] bool is_uniform(double eps = tol::kClosedForm) const {
    return s0() - values_.back() <= eps;
  }

  friend bool operator==(const SchmidtSpectrum&, const SchmidtSpectrum&) = default;

 private:
  std::vector<double> values_;
};

/// Bipartite pure state stored as its coefficient matrix, |Psi> = sum c_jk |j>|k>.
/// The smaller party is always first: a d_A > d_B input is transposed.
class PureState {
 public:
  explicit PureState(CMatrix coeffs) : coeffs_(std::move(coeffs)) {
    detail::require(coeffs_.size() > 0, "PureState: empty coefficient matrix");
    if (coeffs_.rows() > coeffs_.cols()) coeffs_ = coeffs_.transpose().eval();
    const double norm = coeffs_.norm();
    detail::require(std::isfinite(norm) && std::abs(norm - 1.0) <= tol::kRenormalize,
                    "PureState: coefficients must have unit Frobenius norm");
    coeffs_ /= norm;
  }

  /// Build from a state vector on C^{d_a} (x) C^{d_b}, index j * d_b + k.
  static PureState from_vector(const CVector& v, Dims dims) {
    detail::require(v.size() == dims.total(), "PureState::from_vector: size mismatch");
    CMatrix c(dims.a, dims.b);
    for (int j = 0; j < dims.a; ++j)
      for (int k = 0; k < dims.b; ++k) c(j, k) = v(j * dims.b + k);
    return PureState(std::move(c));
  }

  [[nodiscard]] const CMatrix& coeffs() const { return coeffs_; }
  [[nodiscard]] int d_a() const { return static_cast<int>(coeffs_.rows()); }
  [[nodiscard]] int d_b() const { return static_cast<int>(coeffs_.cols()); }
  [[nodiscard]] Dims dims() const { return {d_a(), d_b()}; }

  [[nodiscard]] CVector vector() const {
    CVector v(coeffs_.size());
    for (int j = 0; j < d_a(); ++j)
      for (int k = 0; k < d_b(); ++k) v(j * d_b() + k) = coeffs_(j, k);
    return v;
  }

  [[nodiscard]] DensityMatrix density() const {
    const CVector v = vector();
    return v * v.adjoint();
  }

 private:
  CMatrix coeffs_;
};

/// Squared singular values of the coefficient matrix, via the reduced state
/// C C^dagger (d_A <= d_B, so this is the smaller Gram matrix).
inline SchmidtSpectrum schmidt_spectrum(const PureState& state) {
  const CMatrix rho = state.coeffs() * state.coeffs().adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("schmidt_spectrum: eigensolver failed");
  std::vector<double> v(static_cast<std::size_t>(rho.rows()));
  double sum = 0.0;
  for (Eigen::Index j = 0; j < rho.rows(); ++j) {
    v[static_cast<std::size_t>(j)] = std::max(es.eigenvalues()(j), 0.0);
    sum += v[static_cast<std::size_t>(j)];
  }
  if (!(sum > 0.0)) throw NumericalError("schmidt_spectrum: vanishing state");
  for (double& x : v) x /= sum;
  return SchmidtSpectrum(std::move(v));
}

namespace detail {

inline void check_rank_index(int r, int d) {
  require(r >= 1 && r <= d - 1,
          "r must lie in [1, d-1] (r=" + std::to_string(r) + ", d=" + std::to_string(d) + ")");
}

}  // namespace detail

/// Sum of the d - r smallest Schmidt coefficients.
inline double e_r(const SchmidtSpectrum& s, int r) {
  detail::check_rank_index(r, s.dim());
  double tail = 0.0;
  for (int j = s.dim() - 1; j >= r; --j) tail += s[j];
  return tail;
}

/// True iff x majorizes y (y is majorized by x): the descending prefix sums of
/// x dominate those of y.
inline bool majorizes(std::span<const double> x, std::span<const double> y) {
  detail::require(x.size() == y.size(), "majorizes: length mismatch");
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  detail::require(std::abs(sx - sy) <= tol::kClosedForm, "majorizes: totals differ");
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px < py - 1e-12) return false;
  }
  return true;
}

inline bool majorizes(const SchmidtSpectrum& x, const SchmidtSpectrum& y) {
  const int d = std::max(x.dim(), y.dim());
  return majorizes(x.padded(d).values(), y.padded(d).values());
}

/// Largest overlap |<Psi|Upsilon>| between states with the given spectra.
inline double max_overlap(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  const int d = std::min(a.dim(), b.dim());  // padded entries contribute zero
  double acc = 0.0;
  for (int j = 0; j < d; ++j) acc += std::sqrt(a[j] * b[j]);
  return std::min(acc, 1.0);
}

/// Fidelity between the target and the set of states with Schmidt number <= r.
inline double fidelity_rank(const SchmidtSpectrum& s, int r) { return 1.0 - e_r(s, r); }

/// Fidelity between the target and the set {E_r <= E}; nondecreasing and
/// concave in E, equal to one once E reaches E_r(target).
inline double fidelity_limited(const SchmidtSpectrum& s, int r, double E) {
  detail::require(E >= 0.0 && std::isfinite(E), "fidelity_limited: E must be nonnegative");
  const double target = e_r(s, r);
  if (E >= target) return 1.0;
  const double amp = std::sqrt(target * E) + std::sqrt((1.0 - target) * (1.0 - E));
  return amp * amp;
}

/// Lipschitz constant of E_r with respect to sqrt(2 - 2|<Psi|Upsilon>|).
inline double lipschitz_const(int r, int d) {
  detail::check_rank_index(r, d);
  if (2 * r <= d) return 1.0;
  return 2.0 * std::sqrt(static_cast<double>(r) * (d - r)) / d;
}

/// Optimal probability of converting `source` into `target` by LOCC:
/// min_r E_r(source) / E_r(target). Terms with E_r(target) = 0 are dropped
/// (ratio read as +infinity); if every term drops the result is 1.
inline double vidal_probability(const SchmidtSpectrum& source, const SchmidtSpectrum& target) {
  const int d = std::max(source.dim(), target.dim());
  const SchmidtSpectrum src = source.padded(d);
  const SchmidtSpectrum tgt = target.padded(d);
  double best = 1.0;
  for (int r = 1; r <= d - 1; ++r) {
    const double et = e_r(tgt, r);
    if (et <= 1e-15) continue;
    best = std::min(best, e_r(src, r) / et);
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace hdecert
