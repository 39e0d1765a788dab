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
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hdecert/core.hpp"
#include "hdecert/montecarlo.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/oracle.hpp"
#include "hdecert/separation.hpp"
#include "hdecert/serialize.hpp"
#include "hdecert/spectra.hpp"
#include "hdecert/twoqubit.hpp"

// Oracle-versus-closed-form battery behind `hdecert verify`.
namespace hdecert {

enum class CheckLevel { Fast, Full };

struct SelfCheckOptions {
  CheckLevel level = CheckLevel::Fast;
  std::uint64_t seed = 20240601;
  int threads = 1;
  /// Negative control: perturbs the operator handed to the first oracle check.
  bool inject_fault = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double error = 0.0;  ///< worst observed deviation
  double tolerance = 0.0;
};

namespace detail {

inline CheckResult deviation_check(std::string name, double tolerance, const std::function<double()>& worst) {
  CheckResult c{std::move(name), false, 0.0, tolerance};
  try {
    c.error = worst();
    c.passed = std::isfinite(c.error) && c.error <= tolerance;
  } catch (const std::exception&) {
    c.error = INFINITY;
  }
  return c;
}

}  // namespace detail

inline std::vector<CheckResult> run_self_checks(const SelfCheckOptions& opt) {
  namespace tq = twoqubit;
  OracleConfig oc;
  oc.restarts = 8;
  oc.seed = opt.seed;
  oc.threads = opt.threads;
  std::vector<CheckResult> out;

  out.push_back(detail::deviation_check("oracle: rank-r max of omega_opt = (r+1)/(d+1), d <= 4", 1e-6, [&] {
    double worst = 0.0;
    for (int d = 2; d <= 4; ++d) {
      CMatrix m = omega_opt(d).matrix();
      if (opt.inject_fault) {
        m(0, d + 1) += 0.05;
        m(d + 1, 0) += 0.05;
      }
      const HermitianOperator op(m);
      for (int r = 1; r < d; ++r)
        worst = std::max(worst, std::abs(max_rank_r(op, {d, d}, r, oc).value - sep_prob_mes_rank(d, r)));
    }
    return worst;
  }));

  out.push_back(detail::deviation_check("oracle: omega_mub on uniform d=3, r=1", 1e-6, [&] {
    return std::abs(max_rank_r(omega_mub(SchmidtSpectrum::uniform(3)).op(), {3, 3}, 1, oc).value - 2.0 / 3.0);
  }));

  out.push_back(detail::deviation_check("oracle: e_r-limited max of omega_opt(4)", 1e-5, [&] {
    return std::abs(max_limited(omega_opt(4), {4, 4}, 1, 0.25, oc).value - sep_prob_mes_limited(4, 1, 0.25));
  }));

  out.push_back(detail::deviation_check("oracle: homogeneous operators saturate nu f + beta", 1e-6, [&] {
    const SchmidtSpectrum s({0.5, 0.3, 0.15, 0.05});
    const auto op = omega_sep_h(s);
    const auto gap = spectral_gap(op, target_state(s));
    double worst = 0.0;
    for (double E : {0.05, 0.15})
      worst = std::max(worst, std::abs(max_limited(op, {4, 4}, 1, E, oc).value -
                                       (gap.nu * fidelity_limited(s, 1, E) + gap.beta)));
    return worst;
  }));

  out.push_back(detail::deviation_check("two-qubit: product oracle vs P_sep", 1e-7, [&] {
    double worst = 0.0;
    for (double t : {0.3, 0.48, 0.52, 0.6, 0.7, 0.78})
      worst = std::max(worst, std::abs(max_product(tq::omega_family(t, tq::p_star(t)), {2, 2}, oc).value -
                                       tq::sep_prob_two_qubit(t)));
    return worst;
  }));

  out.push_back(detail::deviation_check("two-qubit: symmetric grid vs p_closed", 1e-8, [&] {
    double worst = 0.0;
    for (double t : {0.4, 0.55, 0.65, 0.75})
      for (double p : {0.0, 0.3, 0.7, 1.0}) {
        // coarse grid, then a bracketed golden-ratio refinement
        const auto f = [&](double a) { return -tq::symmetric_pass(t, p, a); };
        double best_a = 0.0;
        for (int i = 0; i <= 400; ++i) {
          const double a = std::numbers::pi / 2 * i / 400;
          if (f(a) < f(best_a)) best_a = a;
        }
        const double lo = std::max(0.0, best_a - std::numbers::pi / 800), hi = std::min(std::numbers::pi / 2, best_a + std::numbers::pi / 800);
        const double v = -boost::math::tools::brent_find_minima(f, lo, hi, 50).second;
        worst = std::max(worst, std::abs(v - tq::p_closed(t, p)));
      }
    return worst;
  }));

  out.push_back(detail::deviation_check("two-qubit: root residuals", 1e-8, [&] {
    double worst = std::abs(tq::theta_star_residual(tq::theta_star()));
    for (double t : {0.55, 0.65, 0.75}) worst = std::max(worst, std::abs(tq::p_closed_derivative(t, tq::p_star(t))));
    const double t3 = tq::theta3_star();
    return std::max(worst, std::abs(tq::tilde_p(t3) - tq::p_star(t3)));
  }));

  out.push_back(detail::deviation_check("two-qubit: Wang-Hayashi operator equals the family", 1e-10, [&] {
    double worst = 0.0;
    for (double t : {0.4, 0.6, 0.75})
      for (double p : {tq::tilde_p(t), 1.0}) {
        const auto [eta, pp] = tq::wang_hayashi_parameters(t, p);
        worst = std::max(worst, (tq::wang_hayashi(t, eta, pp).op().matrix() - tq::omega_family(t, p).matrix())
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    return worst;
  }));

  out.push_back(detail::deviation_check("2-design: d+1 bases average to omega_opt", 1e-9, [&] {
    double worst = 0.0;
    for (int d : {2, 3, 5})
      worst = std::max(worst, (two_design_strategy(d).op().matrix() - omega_opt(d).matrix()).cwiseAbs().maxCoeff());
    return worst;
  }));

  out.push_back(detail::deviation_check("bounds: sandwich on random spectra", 1e-10, [&] {
    auto rng = detail::stream_rng(opt.seed, 1);
    std::exponential_distribution<double> ex;
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const int d = 3 + i % 8;
      std::vector<double> v(static_cast<std::size_t>(d));
      double sum = 0.0;
      for (double& x : v) sum += (x = ex(rng));
      for (double& x : v) x /= sum;
      const SchmidtSpectrum s(v);
      const int r = 1 + i % (d - 1);
      const auto b = bounds_rank(s, r);
      worst = std::max({worst, b.psep_lb - b.psep_h, b.psep_h - b.plc_ub,
                        b.plc_ub - 2.0 * b.psep_lb / (1.0 + s.s0()), b.plc_ub - 3.0 * b.psep_h / (2.0 + s.s0())});
    }
    return worst;
  }));

  if (opt.level == CheckLevel::Full) {
    out.push_back(detail::deviation_check("montecarlo: ensemble means inside the MES bracket", 0.0, [&] {
      double worst = 0.0;
      for (int d : {10, 40}) {
        for (const auto& st : ensemble_stats(d, {1, 2, 5}, {10000, opt.seed, opt.threads, {}})) {
          for (double m : {st.mean_psep_lb, st.mean_psep_h, st.mean_plc_ub})
            worst = std::max({worst, st.p_mes() - m, m - st.bracket_hi()});
          worst = std::max(worst, std::abs(st.mean_plc_ub - st.mean_psep_h) - 0.01);
        }
      }
      return std::max(worst, 0.0);
    }));
    out.push_back(detail::deviation_check("montecarlo: MUB pass rate on the rank-1 adversary (sigmas)", 3.0, [&] {
      const auto s = SchmidtSpectrum::uniform(4);
      const auto trace = simulate_protocol(omega_mub(s), adversarial_state(s, 1, 0.0).density(), 100000, opt.seed);
      const double p = 5.0 / 8.0, n = 1e5;
      return std::abs(static_cast<double>(trace.passes()) / n - p) / std::sqrt(p * (1 - p) / n);
    }));
  }
  return out;
}

inline Json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"error", std::isfinite(c.error) ? Json(c.error) : Json(nullptr)},
          {"tolerance", c.tolerance}};
}

}  // namespace hdecert
