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

// Reference computations used by the tests. None of these call into the
// closed forms they are compared against.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracles {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Golden-section search for the maximum of a unimodal f on [a, b].
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                            double tol = 1e-12) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b,
                                            double tol = 1e-12) {
  auto [x, v] = golden_max([&](double t) { return -f(t); }, a, b, tol);
  return {x, -v};
}

/// Probability vector from i.i.d. exponentials (uniform on the simplex), sorted nonincreasing.
inline std::vector<double> random_simplex(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex;
  std::vector<double> v(static_cast<std::size_t>(d));
  double s = 0.0;
  for (double& x : v) s += (x = ex(rng));
  for (double& x : v) x /= s;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < d; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

inline CVector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Squared singular values, descending, via Jacobi SVD (independent of the library's Gram route).
inline std::vector<double> svd_spectrum(const CMatrix& c) {
  Eigen::JacobiSVD<CMatrix> svd(c);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    out.push_back(svd.singularValues()(i) * svd.singularValues()(i));
  return out;
}

inline double tail_sum(const std::vector<double>& s, int r) {
  double t = 0.0;
  for (std::size_t j = static_cast<std::size_t>(r); j < s.size(); ++j) t += s[j];
  return t;
}

/// max over product states (cos a, e^{i x} sin a) (x) (cos b, e^{i y} sin b) of <.|omega|.>,
/// on an n_a x n_a x n_x x n_x grid followed by a compass search.
inline double product_grid_max(const CMatrix& omega, int n_angle = 200, int n_phase = 16) {
  const auto local = [](double a, double x) {
    CVector v(2);
    v << std::cos(a), std::polar(std::sin(a), x);
    return v;
  };
  const auto value = [&](const std::array<double, 4>& p) {
    CVector u = Eigen::kroneckerProduct(local(p[0], p[2]), local(p[1], p[3]));
    return u.dot(omega * u).real();
  };
  struct Side {
    double a, x;
    CVector v;
  };
  std::vector<Side> sides;
  for (int i = 0; i < n_angle; ++i)
    for (int k = 0; k < n_phase; ++k) {
      const double a = std::numbers::pi / 2 * i / (n_angle - 1), x = 2 * std::numbers::pi * k / n_phase;
      sides.push_back({a, x, local(a, x)});
    }
  double best = -std::numeric_limits<double>::infinity();
  std::array<double, 4> arg{};
  for (const auto& s : sides) {
    // contract the first factor, leaving a 2x2 form on the second
    CMatrix m = CMatrix::Zero(2, 2);
    for (int j = 0; j < 2; ++j)
      for (int jp = 0; jp < 2; ++jp) m += std::conj(s.v(j)) * s.v(jp) * omega.block(2 * j, 2 * jp, 2, 2);
    for (const auto& t : sides) {
      const double v = t.v.dot(m * t.v).real();
      if (v > best) {
        best = v;
        arg = {s.a, t.a, s.x, t.x};
      }
    }
  }
  for (double step = 0.02; step > 1e-11; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < 4; ++i)
        for (double sgn : {1.0, -1.0}) {
          auto trial = arg;
          trial[static_cast<std::size_t>(i)] += sgn * step;
          const double v = value(trial);
          if (v > best) {
            best = v;
            arg = trial;
            moved = true;
          }
        }
    }
  }
  return best;
}

}  // namespace oracles
