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
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "hdecert/core.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/spectra.hpp"

// Two-qubit targets cos(theta)|00> + sin(theta)|11>, 0 < theta <= pi/4, and the
// one-parameter family Omega(theta, p) = p Omega_1 + (1 - p) Omega_0 that
// contains an optimal separable strategy.
namespace hdecert::twoqubit {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
/// Below this angle the target is numerically a product state.
inline constexpr double kMinTheta = 1e-6;

inline const double kArctanHalf = std::atan(0.5);

namespace detail {

inline void check_theta(double theta) {
  hdecert::detail::require(std::isfinite(theta) && theta >= kMinTheta && theta <= kQuarterPi + 1e-12,
                           "theta must lie in [1e-6, pi/4] (got " + std::to_string(theta) + ")");
}

inline void check_p(double p) {
  hdecert::detail::require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
}

inline bool at_quarter_pi(double theta) { return std::abs(theta - kQuarterPi) <= 1e-14; }

}  // namespace detail

inline double kappa(double theta) { return std::cos(theta) * std::sin(theta); }

/// Concurrence 2 sin(theta) cos(theta).
inline double concurrence(double theta) { return 2.0 * kappa(theta); }

inline PureState target(double theta) {
  detail::check_theta(theta);
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = std::cos(theta);
  c(1, 1) = std::sin(theta);
  return PureState(std::move(c));
}

inline SchmidtSpectrum spectrum(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return SchmidtSpectrum({c * c, s * s});
}

/// Coefficients of Omega = |Psi><Psi| + lambda2 |Psi_perp><Psi_perp| + lambda3 (|01><01| + |10><10|).
struct Lambdas {
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

inline Lambdas lambdas(double theta, double p) {
  detail::check_theta(theta);
  detail::check_p(p);
  const double k = kappa(theta);
  const double w1 = k / (1.0 + k);
  return {p * w1, p * w1 + (1.0 - p) * k};
}

inline HermitianOperator omega_from_lambdas(double theta, Lambdas lam) {
  const double c = std::cos(theta), s = std::sin(theta);
  CVector psi = CVector::Zero(4), perp = CVector::Zero(4);
  psi(0) = c;
  psi(3) = s;
  perp(0) = s;
  perp(3) = -c;
  CMatrix m = psi * psi.adjoint() + lam.lambda2 * perp * perp.adjoint();
  m(1, 1) += lam.lambda3;
  m(2, 2) += lam.lambda3;
  return HermitianOperator(std::move(m));
}

inline HermitianOperator omega_family(double theta, double p) {
  return omega_from_lambdas(theta, lambdas(theta, p));
}
inline HermitianOperator omega0(double theta) { return omega_family(theta, 0.0); }
inline HermitianOperator omega1(double theta) { return omega_family(theta, 1.0); }

/// Closed-form eigenvalues of the partial transpose of Omega(theta, p):
/// c^2 + l2 s^2, s^2 + l2 c^2, l3 + (1 - l2) k, l3 - (1 - l2) k.
inline std::array<double, 4> ppt_eigenvalues(double theta, double p) {
  const Lambdas lam = lambdas(theta, p);
  const double c = std::cos(theta), s = std::sin(theta), k = c * s;
  return {c * c + lam.lambda2 * s * s, s * s + lam.lambda2 * c * c, lam.lambda3 + (1.0 - lam.lambda2) * k,
          lam.lambda3 - (1.0 - lam.lambda2) * k};
}

inline double q_theta(double theta) {
  detail::check_theta(theta);
  const double k = kappa(theta);
  const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
  const double q = (1.0 + k) * (2.0 * k - c2) / (k * (2.0 * k + s2));
  return std::clamp(q, 0.0, 1.0);
}

inline double h_theta(double theta, double p) {
  const double k = kappa(theta);
  const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
  const double num = (1.0 + k) * (2.0 * k - c2) - p * k * (2.0 * k + s2);
  const double den = (1.0 + k) * (2.0 * k - s2) - p * k * (2.0 * k + c2);
  return num / den;
}

/// Maximizing angle of tr[Omega(theta, p) rho_a (x) rho_a].
inline double a_star(double theta, double p) {
  detail::check_theta(theta);
  detail::check_p(p);
  if (p >= q_theta(theta)) return 0.0;
  return std::atan(std::sqrt(std::clamp(h_theta(theta, p), 0.0, 1.0)));
}

/// tr[Omega(theta, p) rho_a (x) rho_a] with |psi_a> = cos a |0> + sin a |1>.
inline double symmetric_pass(double theta, double p, double a) {
  const double c = std::cos(theta), s = std::sin(theta), k = c * s;
  const double ca2 = std::cos(a) * std::cos(a), sa2 = std::sin(a) * std::sin(a);
  const double w = p * k / (1.0 + k);
  const double x = c * ca2 + s * sa2;
  const double y = s * ca2 - c * sa2;
  return x * x + 2.0 * k * ca2 * sa2 + w * (y * y - 2.0 * k * ca2 * sa2);
}

/// Separation probability P(theta, p) of Omega(theta, p) against separable states.
inline double p_closed(double theta, double p) {
  detail::check_theta(theta);
  detail::check_p(p);
  if (detail::at_quarter_pi(theta)) return (9.0 - p) / 12.0;
  const double k = kappa(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  if (p >= q_theta(theta)) return std::cos(theta) * std::cos(theta) + p * k * s2 / (1.0 + k);
  return symmetric_pass(theta, p, a_star(theta, p));
}

/// dP/dp; by the envelope theorem the derivative of the objective at a*(theta, p).
inline double p_closed_derivative(double theta, double p) {
  detail::check_theta(theta);
  detail::check_p(p);
  const double c = std::cos(theta), s = std::sin(theta), k = c * s;
  if (detail::at_quarter_pi(theta)) return p < 1.0 ? -1.0 / 12.0 : k * s * s / (1.0 + k);
  const double a = a_star(theta, p);
  const double ca2 = std::cos(a) * std::cos(a), sa2 = std::sin(a) * std::sin(a);
  const double y = s * ca2 - c * sa2;
  return k / (1.0 + k) * (y * y - 2.0 * k * ca2 * sa2);
}

/// 17 - 9 cos 4t - 25 sin 2t + 3 sin 6t; proportional to dP/dp at p = 0.
inline double theta_star_residual(double theta) {
  return 17.0 - 9.0 * std::cos(4.0 * theta) - 25.0 * std::sin(2.0 * theta) + 3.0 * std::sin(6.0 * theta);
}

/// Root of theta_star_residual in (arctan(1/2), pi/4), by bisection to a 1e-12 bracket.
inline double theta_star() {
  static const double root = [] {
    const auto width = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-12; };
    const auto [lo, hi] = boost::math::tools::bisect(theta_star_residual, kArctanHalf, kQuarterPi, width);
    return 0.5 * (lo + hi);
  }();
  return root;
}

/// Unique minimizer of P(theta, .) over [0, 1].
inline double p_star(double theta) {
  detail::check_theta(theta);
  if (detail::at_quarter_pi(theta)) return 1.0;
  if (theta <= theta_star()) return 0.0;
  const double q = q_theta(theta);
  const auto dP = [theta](double p) { return p_closed_derivative(theta, p); };
  const double f0 = dP(0.0), fq = dP(q);
  if (f0 < 0.0 && fq > 0.0) {
    std::uintmax_t iters = 200;
    const auto [lo, hi] =
        boost::math::tools::toms748_solve(dP, 0.0, q, f0, fq, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (lo + hi);
  }
  // Bracket lost next to a branch point: minimize P directly.
  const auto P = [theta](double p) { return p_closed(theta, p); };
  return boost::math::tools::brent_find_minima(P, 0.0, q, 50).first;
}

/// Optimal separable separation probability P_sep(Psi_theta).
inline double sep_prob_two_qubit(double theta) {
  detail::check_theta(theta);
  const double c2 = std::cos(theta) * std::cos(theta), k = kappa(theta);
  if (detail::at_quarter_pi(theta)) return 2.0 / 3.0;
  if (theta <= kArctanHalf) return c2;
  if (theta <= theta_star()) {
    const double branch = 3.0 * k * k / (4.0 * k - 1.0);
    const double glued = p_closed(theta, 0.0);
    if (std::abs(branch - glued) > 1e-9)
      throw NumericalError("sep_prob_two_qubit: branch formulas disagree at theta=" + std::to_string(theta));
    return branch;
  }
  return p_closed(theta, p_star(theta));
}

/// Smallest p for which Omega(theta, p) has the Wang-Hayashi LOCC realization.
inline double tilde_p(double theta) {
  detail::check_theta(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return std::clamp(1.0 - std::tan(theta) / (c * c + c * s), 0.0, 1.0);
}

inline double p2_star(double theta) { return std::max(tilde_p(theta), q_theta(theta)); }
inline double p3_star(double theta) { return std::max(tilde_p(theta), p_star(theta)); }

inline double theta2_star() { return std::atan((std::sqrt(5.0) - 1.0) / 2.0); }

/// Smallest theta with tilde_p(theta) <= p_star(theta): scan from theta* for the
/// first sign change of tilde_p - p_star, then bisect to 1e-12.
inline double theta3_star() {
  static const double root = [] {
    const auto gap = [](double t) { return tilde_p(t) - p_star(t); };
    const double step = 1e-3;
    double lo = theta_star();
    double hi = lo + step;
    while (gap(hi) > 0.0) {
      lo = hi;
      hi += step;
      if (hi >= kQuarterPi) throw NumericalError("theta3_star: no sign change below pi/4");
    }
    const auto width = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
    const auto [a, b] = boost::math::tools::bisect(gap, lo, hi, width);
    return 0.5 * (a + b);
  }();
  return root;
}

enum class Curve { PStar, P2Star, P3Star, Omega1, Omega0 };

inline std::optional<Curve> parse_curve(const std::string& name) {
  if (name == "pstar") return Curve::PStar;
  if (name == "p2star") return Curve::P2Star;
  if (name == "p3star") return Curve::P3Star;
  if (name == "omega1") return Curve::Omega1;
  if (name == "omega0") return Curve::Omega0;
  return std::nullopt;
}

inline double curve_p(double theta, Curve variant) {
  switch (variant) {
    case Curve::PStar: return p_star(theta);
    case Curve::P2Star: return p2_star(theta);
    case Curve::P3Star: return p3_star(theta);
    case Curve::Omega1: return 1.0;
    case Curve::Omega0: return 0.0;
  }
  return 1.0;
}

/// P(theta, p_variant(theta)).
inline double p_strategy_curve(double theta, Curve variant) { return p_closed(theta, curve_p(theta, variant)); }

/// All scalar functions of theta (and of p where relevant) in one place.
struct ThetaFunctions {
  double kappa = 0.0;
  double q = 0.0;
  std::optional<double> h;  ///< only defined on the branch p < q
  double a_star = 0.0;
  double p_star = 0.0;
  double tilde_p = 0.0;
};

inline ThetaFunctions theta_functions(double theta, double p) {
  ThetaFunctions f;
  f.kappa = kappa(theta);
  f.q = q_theta(theta);
  if (p < f.q) f.h = h_theta(theta, p);
  f.a_star = a_star(theta, p);
  f.p_star = p_star(theta);
  f.tilde_p = tilde_p(theta);
  return f;
}

/// One row of the theta sweep: thresholds and the separation probability of each curve.
struct SweepRow {
  double theta, q, p_star, tilde_p, p2_star, p3_star, P_sep, P_p2, P_p3, P_omega1, P_omega0;
};

inline SweepRow sweep_row(double theta) {
  SweepRow row{};
  row.theta = theta;
  row.q = q_theta(theta);
  row.p_star = p_star(theta);
  row.tilde_p = tilde_p(theta);
  row.p2_star = std::max(row.tilde_p, row.q);
  row.p3_star = std::max(row.tilde_p, row.p_star);
  row.P_sep = sep_prob_two_qubit(theta);
  row.P_p2 = p_closed(theta, row.p2_star);
  row.P_p3 = p_closed(theta, row.p3_star);
  row.P_omega1 = p_closed(theta, 1.0);
  row.P_omega0 = p_closed(theta, 0.0);
  return row;
}

/// Parameters (eta, p') for which the Wang-Hayashi strategy equals Omega(theta, p).
inline std::pair<double, double> wang_hayashi_parameters(double theta, double p) {
  detail::check_theta(theta);
  detail::check_p(p);
  hdecert::detail::require(p >= tilde_p(theta) - 1e-12, "wang_hayashi_parameters: p must be at least tilde_p(theta)");
  const double c = std::cos(theta), k = kappa(theta);
  const double eta = 1.0 - std::tan(theta);
  const double pp = k * ((c * c + k) / (1.0 + k) * p + std::tan(theta) - 1.0);
  return {std::max(eta, 0.0), std::max(pp, 0.0)};
}

/// Five-test LOCC strategy: T1, T2 for A->B and B->A with weight (1 - p')/4
/// each, and T3 = |00><00| + |11><11| with weight p'. The circular-basis tests
/// pair |phi~_+-> with the conjugate circular state so that every test passes
/// the target.
inline Strategy wang_hayashi(double theta, double eta, double p_prime) {
  detail::check_theta(theta);
  hdecert::detail::require(eta >= 0.0 && eta <= 1.0, "wang_hayashi: eta must lie in [0, 1]");
  hdecert::detail::require(p_prime >= 0.0 && p_prime <= 1.0, "wang_hayashi: p' must lie in [0, 1]");
  using hdecert::detail::product;
  const double c = std::cos(theta), s = std::sin(theta);
  const double n = std::sqrt(1.0 - eta * c * c);
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const auto ket = [](Complex x0, Complex x1) {
    CVector v(2);
    v << x0, x1;
    return v;
  };
  const CVector zero = ket(1, 0), one = ket(0, 1);
  const CVector plus = ket(h, h), minus = ket(h, -h), top = ket(h, i * h), bottom = ket(h, -i * h);
  const CVector psi_p = ket((1 - eta) * c / n, s / n), psi_m = ket((1 - eta) * c / n, -s / n);
  const CVector phi_p = ket((1 - eta) * c / n, i * s / n), phi_m = ket((1 - eta) * c / n, -i * s / n);
  const auto proj = [](const CVector& v) -> CMatrix { return v * v.adjoint(); };
  const CMatrix e00 = proj(product(zero, zero));

  const CMatrix t1_ab = eta * e00 + proj(product(psi_p, plus)) + proj(product(psi_m, minus));
  const CMatrix t2_ab = eta * e00 + proj(product(phi_p, bottom)) + proj(product(phi_m, top));
  const CMatrix t1_ba = eta * e00 + proj(product(plus, psi_p)) + proj(product(minus, psi_m));
  const CMatrix t2_ba = eta * e00 + proj(product(bottom, phi_p)) + proj(product(top, phi_m));
  const CMatrix t3 = e00 + proj(product(one, one));

  const double w = (1.0 - p_prime) / 4.0;
  std::vector<WeightedTest> tests{{w, HermitianOperator(t1_ab)},
                                  {w, HermitianOperator(t2_ab)},
                                  {w, HermitianOperator(t1_ba)},
                                  {w, HermitianOperator(t2_ba)},
                                  {p_prime, HermitianOperator(t3)}};
  return Strategy(StrategyId::WangHayashi, std::move(tests), target(theta));
}

}  // namespace hdecert::twoqubit
