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
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hdecert/core.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/rational.hpp"
#include "hdecert/spectra.hpp"

namespace hdecert {

/// Adversary set: S_r (states with Schmidt number <= r) or S_{E_r}(E).
struct AdversarySet {
  enum class Kind { SchmidtRank, LimitedEr };
  Kind kind = Kind::SchmidtRank;
  int r = 1;
  double E = 0.0;

  static AdversarySet rank(int r) { return {Kind::SchmidtRank, r, 0.0}; }
  static AdversarySet limited(int r, double E) { return {Kind::LimitedEr, r, E}; }
  /// E as seen by the closed forms (S_r = S_{E_r}(0)).
  [[nodiscard]] double effective_E() const { return kind == Kind::LimitedEr ? E : 0.0; }
};

inline std::string to_string(AdversarySet::Kind k) {
  return k == AdversarySet::Kind::SchmidtRank ? "schmidt_rank" : "limited_er";
}

/// Closed-form bounds on the separation probabilities of a general target.
struct SeparationBounds {
  double psep_lb = 0.0;  ///< lower bound on P_sep (the global strategy |Psi><Psi|)
  double psep_h = 0.0;   ///< exact optimal separable homogeneous value
  double plc_ub = 0.0;   ///< upper bound on P_LC (attained by omega_lc_h)
};

namespace detail {

inline void check_limited(const SchmidtSpectrum& s, int r, double E) {
  check_rank_index(r, s.dim());
  require(E >= 0.0 && std::isfinite(E), "E must be nonnegative");
  const double target = e_r(s, r);
  require(E < target, "E must lie strictly below E_r(target) = " + std::to_string(target) +
                          "; otherwise the target cannot be separated");
}

}  // namespace detail

/// P(Phi, S_r) = (r + 1) / (d + 1) for the d x d maximally entangled state.
inline double sep_prob_mes_rank(int d, int r) {
  detail::check_rank_index(r, d);
  return static_cast<double>(r + 1) / (d + 1);
}

/// The same value assembled exactly from P = nu F + beta with F = r/d,
/// beta = 1/(d+1), nu = d/(d+1).
inline Rational sep_prob_mes_rank_exact(int d, int r) {
  detail::check_rank_index(r, d);
  const Rational beta(1, d + 1);
  const Rational nu = Rational(1) - beta;
  const Rational fidelity(r, d);
  return nu * fidelity + beta;
}

inline double sep_prob_mes_limited(int d, int r, double E) {
  detail::check_rank_index(r, d);
  detail::require(E >= 0.0 && E < static_cast<double>(d - r) / d, "sep_prob_mes_limited: E must lie in [0, (d-r)/d)");
  const double amp = std::sqrt((d - r) * E) + std::sqrt(r * (1.0 - E));
  return (amp * amp + 1.0) / (d + 1);
}

/// Omega_MUB against S_{E_r}(E): (f_r(Psi, E) + 1) / 2.
inline double sep_prob_mub(const SchmidtSpectrum& s, int r, double E = 0.0) {
  detail::check_rank_index(r, s.dim());
  detail::require(E >= 0.0, "sep_prob_mub: E must be nonnegative");
  return 0.5 * (fidelity_limited(s, r, E) + 1.0);
}

inline SeparationBounds bounds_rank(const SchmidtSpectrum& s, int r) {
  const double er = e_r(s, r);
  const double g = std::sqrt(s.s0() * s.s1());
  const double t = s.s0() + s.s1();
  return {1.0 - er, 1.0 - er / (1.0 + g), 1.0 - 2.0 * er / (2.0 + t)};
}

inline SeparationBounds bounds_limited(const SchmidtSpectrum& s, int r, double E) {
  detail::check_limited(s, r, E);
  const double f = fidelity_limited(s, r, E);
  const double g = std::sqrt(s.s0() * s.s1());
  const double t = s.s0() + s.s1();
  return {f, (f + g) / (1.0 + g), (2.0 * f + t) / (2.0 + t)};
}

inline SeparationBounds bounds(const SchmidtSpectrum& s, const AdversarySet& adv) {
  return adv.kind == AdversarySet::Kind::SchmidtRank ? bounds_rank(s, adv.r) : bounds_limited(s, adv.r, adv.E);
}

/// Smallest N with P^N <= delta. P^N within a relative 1e-12 of delta counts
/// as reaching it, so exact boundaries (0.1^2 = 0.01) survive rounding.
inline int tests_required(double P, double delta) {
  detail::require(delta > 0.0 && delta < 1.0, "tests_required: delta must lie in (0, 1)");
  detail::require(P >= 0.0 && std::isfinite(P), "tests_required: P must be a probability");
  if (P >= 1.0 - 1e-12)
    throw Infeasible("tests_required: separation probability " + std::to_string(P) +
                     " is not below 1; shrink the adversary set");
  if (P <= delta) return 1;
  const auto reaches = [&](int n) { return std::pow(P, n) <= delta * (1.0 + 1e-12); };
  int n = std::max(1, static_cast<int>(std::ceil(std::log(delta) / std::log(P))));
  while (!reaches(n)) ++n;
  while (n > 1 && reaches(n - 1)) --n;
  return n;
}

/// Exact variant for rational P and delta: smallest N with P^N <= delta.
inline int tests_required(const Rational& P, const Rational& delta) {
  using boost::multiprecision::cpp_int;
  detail::require(Rational(0) < delta && delta < Rational(1), "tests_required: delta must lie in (0, 1)");
  detail::require(Rational(0) <= P, "tests_required: P must be nonnegative");
  if (!(P < Rational(1))) throw Infeasible("tests_required: separation probability is not below 1");
  // P^N <= delta  <=>  p^N * delta_den <= delta_num * q^N
  cpp_int pn = 1, qn = 1;
  for (int n = 1;; ++n) {
    pn *= P.num();
    qn *= P.den();
    if (pn * delta.den() <= cpp_int(delta.num()) * qn) return n;
  }
}

/// State in S_{E_r}(E) with the largest fidelity to sum_j sqrt(s_j)|jj>:
/// head and tail of the spectrum rescaled to masses 1 - E and E.
inline PureState adversarial_state(const SchmidtSpectrum& s, int r, double E) {
  detail::check_limited(s, r, E);
  const double er = e_r(s, r);
  const int d = s.dim();
  CMatrix c = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    c(j, j) = j < r ? std::sqrt((1.0 - E) * s[j] / (1.0 - er)) : std::sqrt(E * s[j] / er);
  return PureState(std::move(c));
}

/// tr(Omega sigma).
inline double pass_prob(const HermitianOperator& op, const DensityMatrix& sigma) {
  detail::require(sigma.rows() == op.dim() && sigma.cols() == op.dim(), "pass_prob: dimension mismatch");
  return (op.matrix() * sigma).trace().real();
}

inline double pass_prob(const HermitianOperator& op, const PureState& state) {
  const CVector v = state.vector();
  detail::require(v.size() == op.dim(), "pass_prob: dimension mismatch");
  return v.dot(op.matrix() * v).real();
}

/// Strategies for which a closed-form separation probability is available.
enum class PlanStrategy { Opt, Mub, SepH, LcH, Global };

inline std::string to_string(PlanStrategy s) {
  switch (s) {
    case PlanStrategy::Opt: return "opt";
    case PlanStrategy::Mub: return "mub";
    case PlanStrategy::SepH: return "seph";
    case PlanStrategy::LcH: return "lch";
    case PlanStrategy::Global: return "global";
  }
  return "unknown";
}

inline std::optional<PlanStrategy> parse_plan_strategy(const std::string& name) {
  if (name == "opt") return PlanStrategy::Opt;
  if (name == "mub") return PlanStrategy::Mub;
  if (name == "seph") return PlanStrategy::SepH;
  if (name == "lch") return PlanStrategy::LcH;
  if (name == "global") return PlanStrategy::Global;
  return std::nullopt;
}

struct CertificationPlan {
  SchmidtSpectrum spectrum;
  AdversarySet adversary;
  double delta = 0.01;
  PlanStrategy strategy = PlanStrategy::Opt;
  double separation_probability = 1.0;
  int tests_required = 1;
};

/// Separation probability of `strategy` for the target against `adv`.
/// Opt requires a maximally entangled target.
inline double separation_probability(const SchmidtSpectrum& s, const AdversarySet& adv, PlanStrategy strategy) {
  detail::check_rank_index(adv.r, s.dim());
  const double E = adv.effective_E();
  if (E >= e_r(s, adv.r))
    throw Infeasible("the adversary set contains the target's fidelity class (E >= E_r)");
  switch (strategy) {
    case PlanStrategy::Opt:
      detail::require(s.is_uniform(), "strategy 'opt' needs a maximally entangled target");
      return sep_prob_mes_limited(s.dim(), adv.r, E);
    case PlanStrategy::Mub: return sep_prob_mub(s, adv.r, E);
    case PlanStrategy::SepH: return bounds(s, adv).psep_h;
    case PlanStrategy::LcH: return bounds(s, adv).plc_ub;
    case PlanStrategy::Global: return bounds(s, adv).psep_lb;
  }
  throw InvalidArgument("unknown strategy");
}

inline CertificationPlan make_plan(const SchmidtSpectrum& s, const AdversarySet& adv, double delta,
                                   PlanStrategy strategy) {
  const double P = separation_probability(s, adv, strategy);
  return {s, adv, delta, strategy, P, tests_required(P, delta)};
}

}  // namespace hdecert
