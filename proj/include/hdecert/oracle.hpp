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
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hdecert/core.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/parallel.hpp"
#include "hdecert/spectra.hpp"

// Seesaw maximization of tr(Omega sigma) over product, Schmidt-rank-r and
// e_r-limited pure states. Every value is a lower bound on the true maximum.
namespace hdecert {

struct OracleConfig {
  int restarts = 32;
  int grid_points = 64;  ///< per angle, two-qubit prescan only
  int max_iterations = 2000;
  double convergence_tol = 1e-13;
  std::uint64_t seed = 20240601;
  int threads = 1;

  void validate() const {
    detail::require(restarts >= 1, "OracleConfig: restarts must be >= 1");
    detail::require(grid_points >= 0, "OracleConfig: grid_points must be >= 0");
    detail::require(max_iterations >= 1, "OracleConfig: max_iterations must be >= 1");
    detail::require(convergence_tol > 0.0, "OracleConfig: convergence_tol must be > 0");
  }
};

struct OracleResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  PureState witness;
};

namespace detail {

inline void check_oracle_args(const HermitianOperator& op, Dims dims, const OracleConfig& config) {
  config.validate();
  require(dims.a >= 1 && dims.b >= 1, "oracle: dimensions must be positive");
  require(op.dim() == dims.total(), "oracle: operator dimension does not match dims");
}

inline CVector random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

inline std::pair<double, CVector> top_eigenpair(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("oracle: eigensolver failed");
  const Eigen::Index last = h.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

/// Seesaw steps must never lose objective value beyond rounding.
inline void check_ascent(double before, double after) {
  if (after < before - 1e-10 * (1.0 + std::abs(before)))
    throw NumericalError("oracle: objective decreased from " + std::to_string(before) + " to " +
                         std::to_string(after));
}

inline CMatrix reshape(const CVector& v, Dims dims) {
  CMatrix c(dims.a, dims.b);
  for (int j = 0; j < dims.a; ++j)
    for (int k = 0; k < dims.b; ++k) c(j, k) = v(j * dims.b + k);
  return c;
}

inline CVector flatten(const CMatrix& c) {
  CVector v(c.size());
  for (Eigen::Index j = 0; j < c.rows(); ++j)
    for (Eigen::Index k = 0; k < c.cols(); ++k) v(j * c.cols() + k) = c(j, k);
  return v;
}

/// Columns e_j (x) b_m for fixed B; maps vec(A) (index j * r + m) to sum_m a_m (x) b_m.
inline CMatrix embed_left(const CMatrix& b, int d_a) {
  const auto d_b = b.rows(), r = b.cols();
  CMatrix l = CMatrix::Zero(d_a * d_b, d_a * r);
  for (int j = 0; j < d_a; ++j)
    for (Eigen::Index m = 0; m < r; ++m) l.block(j * d_b, j * r + m, d_b, 1) = b.col(m);
  return l;
}

/// Columns a_m (x) e_k for fixed A; maps vec(B) (index k * r + m) to sum_m a_m (x) b_m.
inline CMatrix embed_right(const CMatrix& a, int d_b) {
  const auto d_a = a.rows(), r = a.cols();
  CMatrix l = CMatrix::Zero(d_a * d_b, d_b * r);
  for (Eigen::Index j = 0; j < d_a; ++j)
    for (int k = 0; k < d_b; ++k)
      for (Eigen::Index m = 0; m < r; ++m) l(j * d_b + k, k * r + m) = a(j, m);
  return l;
}

/// Factor-major reshape of an r-column factor from its flattened form.
inline CMatrix unflatten_factor(const CVector& v, int rows, int r) {
  CMatrix f(rows, r);
  for (int i = 0; i < rows; ++i)
    for (int m = 0; m < r; ++m) f(i, m) = v(i * r + m);
  return f;
}

/// Splits F = Q R with orthonormal Q and returns (Q, R).
inline std::pair<CMatrix, CMatrix> thin_qr(const CMatrix& f) {
  Eigen::HouseholderQR<CMatrix> qr(f);
  CMatrix q = qr.householderQ() * CMatrix::Identity(f.rows(), f.cols());
  CMatrix r = q.adjoint() * f;
  return {std::move(q), std::move(r)};
}

struct RunResult {
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  CMatrix coeffs;
};

/// Best of independent restarts; ties keep the lowest restart index.
template <class Run>
OracleResult best_of_restarts(const OracleConfig& config, Run&& run) {
  std::vector<RunResult> results(static_cast<std::size_t>(config.restarts));
  parallel_for(config.restarts, config.threads,
               [&](std::int64_t i) { results[static_cast<std::size_t>(i)] = run(static_cast<int>(i)); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[best].value) best = i;
  const CMatrix& c = results[best].coeffs;
  return {results[best].value, results[best].converged, results[best].iterations, PureState(c / c.norm())};
}

inline OracleResult top_eigenvector_result(const HermitianOperator& op, Dims dims) {
  auto [value, v] = top_eigenpair(op.matrix());
  return {value, true, 0, PureState(reshape(v, dims))};
}

/// Alternating maximization over a (x) b starting from Bob's vector y.
inline RunResult product_seesaw(const CMatrix& omega, Dims dims, CVector y, const OracleConfig& config) {
  RunResult out;
  CVector x;
  for (int it = 1; it <= config.max_iterations; ++it) {
    CMatrix ly = CMatrix::Zero(dims.total(), dims.a);
    for (int j = 0; j < dims.a; ++j) ly.block(j * dims.b, j, dims.b, 1) = y;
    double va = 0.0;
    std::tie(va, x) = top_eigenpair(ly.adjoint() * omega * ly);
    check_ascent(out.value, va);

    CMatrix lx = CMatrix::Zero(dims.total(), dims.b);
    for (int j = 0; j < dims.a; ++j)
      for (int k = 0; k < dims.b; ++k) lx(j * dims.b + k, k) = x(j);
    double vb = 0.0;
    std::tie(vb, y) = top_eigenpair(lx.adjoint() * omega * lx);
    check_ascent(va, vb);

    out.iterations = it;
    const double gain = vb - out.value;
    out.value = vb;
    if (gain < config.convergence_tol) {
      out.converged = true;
      break;
    }
  }
  out.coeffs = x * y.transpose();
  return out;
}

/// Best real product state (cos a, sin a) (x) (cos b, sin b) on a grid.
inline CVector two_qubit_prescan(const CMatrix& omega, int points) {
  double best = -std::numeric_limits<double>::infinity();
  CVector best_y(2);
  for (int i = 0; i < points; ++i) {
    const double a = std::numbers::pi * i / points;
    for (int j = 0; j < points; ++j) {
      const double b = std::numbers::pi * j / points;
      CVector v(4);
      v << std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), std::sin(a) * std::cos(b),
          std::sin(a) * std::sin(b);
      const double val = v.dot(omega * v).real();
      if (val > best) {
        best = val;
        best_y << std::cos(b), std::sin(b);
      }
    }
  }
  return best_y;
}

/// Rescales the Schmidt tail beyond r to mass E (and the head to 1 - E) when it exceeds E.
inline CMatrix project_limited(const CMatrix& c, int r, double E) {
  Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  const double total = s.squaredNorm();
  s /= std::sqrt(total);
  double tail = 0.0;
  for (Eigen::Index j = r; j < s.size(); ++j) tail += s(j) * s(j);
  if (tail > E) {
    const double head_scale = std::sqrt((1.0 - E) / (1.0 - tail));
    const double tail_scale = std::sqrt(E / tail);
    for (Eigen::Index j = 0; j < s.size(); ++j) s(j) *= j < r ? head_scale : tail_scale;
  }
  return svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace detail

/// max tr(Omega sigma) over product states.
inline OracleResult max_product(const HermitianOperator& op, Dims dims, const OracleConfig& config = {}) {
  detail::check_oracle_args(op, dims, config);
  const CMatrix& omega = op.matrix();
  const bool prescan = dims.a == 2 && dims.b == 2 && config.grid_points > 0;
  return detail::best_of_restarts(config, [&](int i) {
    auto rng = detail::stream_rng(config.seed + static_cast<std::uint64_t>(i), 0);
    CVector y = (prescan && i == 0) ? detail::two_qubit_prescan(omega, config.grid_points)
                                    : detail::random_unit(dims.b, rng);
    return detail::product_seesaw(omega, dims, std::move(y), config);
  });
}

/// max tr(Omega sigma) over pure states of Schmidt rank at most r.
inline OracleResult max_rank_r(const HermitianOperator& op, Dims dims, int r, const OracleConfig& config = {}) {
  detail::check_oracle_args(op, dims, config);
  detail::require(r >= 1, "max_rank_r: r must be >= 1");
  if (r >= std::min(dims.a, dims.b)) return detail::top_eigenvector_result(op, dims);
  const CMatrix& omega = op.matrix();
  return detail::best_of_restarts(config, [&](int i) {
    auto rng = detail::stream_rng(config.seed + static_cast<std::uint64_t>(i), 0);
    CMatrix b(dims.b, r);
    for (int m = 0; m < r; ++m) b.col(m) = detail::random_unit(dims.b, rng);
    b = detail::thin_qr(b).first;
    CMatrix a;
    detail::RunResult out;
    for (int it = 1; it <= config.max_iterations; ++it) {
      const CMatrix la = detail::embed_left(b, dims.a);
      auto [va, av] = detail::top_eigenpair(la.adjoint() * omega * la);
      detail::check_ascent(out.value, va);
      a = detail::unflatten_factor(av, dims.a, r);
      auto [qa, ra] = detail::thin_qr(a);
      a = qa;
      b = b * ra.transpose();

      const CMatrix lb = detail::embed_right(a, dims.b);
      auto [vb, bv] = detail::top_eigenpair(lb.adjoint() * omega * lb);
      detail::check_ascent(va, vb);
      b = detail::unflatten_factor(bv, dims.b, r);
      auto [qb, rb] = detail::thin_qr(b);
      b = qb;
      a = a * rb.transpose();

      out.iterations = it;
      const double gain = vb - out.value;
      out.value = vb;
      if (gain < config.convergence_tol) {
        out.converged = true;
        break;
      }
    }
    out.coeffs = a * b.transpose();
    return out;
  });
}

/// max tr(Omega sigma) over pure states with e_r <= E, by projected ascent.
/// Restart 0 starts from the projection of Omega's top eigenvector.
inline OracleResult max_limited(const HermitianOperator& op, Dims dims, int r, double E,
                                const OracleConfig& config = {}) {
  detail::check_oracle_args(op, dims, config);
  const int d = std::min(dims.a, dims.b);
  detail::check_rank_index(r, d);
  detail::require(std::isfinite(E) && E >= 0.0, "max_limited: E must be >= 0");
  const CMatrix& omega = op.matrix();
  {
    OracleResult top = detail::top_eigenvector_result(op, dims);
    if (e_r(schmidt_spectrum(top.witness), r) <= E) return top;
  }
  const auto value_of = [&](const CMatrix& c) {
    const CVector v = detail::flatten(c);
    return v.dot(omega * v).real();
  };
  return detail::best_of_restarts(config, [&](int i) {
    auto rng = detail::stream_rng(config.seed + static_cast<std::uint64_t>(i), 0);
    const CVector start = i == 0 ? detail::top_eigenpair(omega).second : detail::random_unit(dims.total(), rng);
    detail::RunResult out;
    out.coeffs = detail::project_limited(detail::reshape(start, dims), r, E);
    out.value = value_of(out.coeffs);
    double step = 1.0;
    for (int it = 1; it <= config.max_iterations; ++it) {
      out.iterations = it;
      const CVector v = detail::flatten(out.coeffs);
      CVector moved = v + step * (omega * v);
      moved /= moved.norm();
      const CMatrix candidate = detail::project_limited(detail::reshape(moved, dims), r, E);
      const double value = value_of(candidate);
      if (value > out.value) {
        detail::check_ascent(out.value, value);
        const double gain = value - out.value;
        out.coeffs = candidate;
        out.value = value;
        step = std::min(2.0 * step, 1e6);
        if (gain < config.convergence_tol) {
          out.converged = true;
          break;
        }
      } else {
        step *= 0.5;
        if (step < 1e-12) {
          out.converged = true;
          break;
        }
      }
    }
    return out;
  });
}

}  // namespace hdecert
