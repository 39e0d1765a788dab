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
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hdecert/core.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/parallel.hpp"
#include "hdecert/separation.hpp"
#include "hdecert/spectra.hpp"

namespace hdecert {

/// Entries i.i.d. standard complex Gaussian, then normalized.
inline PureState haar_state(int d_a, int d_b, std::mt19937_64& rng) {
  detail::require(d_a >= 1 && d_b >= 1, "haar_state: dimensions must be positive");
  std::normal_distribution<double> g;
  CMatrix c(d_a, d_b);
  for (int j = 0; j < d_a; ++j)
    for (int k = 0; k < d_b; ++k) c(j, k) = Complex(g(rng), g(rng));
  return PureState(c / c.norm());
}

/// U_r = 1 - E_r / (1 + s_0); dominates plc_ub and is 2-Lipschitz in the state.
inline double u_r(const SchmidtSpectrum& s, int r) { return 1.0 - e_r(s, r) / (1.0 + s.s0()); }

/// Upper bound 2 exp(-D eps^2 / (50 pi)) on the fraction of Haar states with
/// plc_ub >= 4(r+1)/(d+1) + eps, D = d_a d_b.
inline double tail_bound(int D, double eps) {
  return 2.0 * std::exp(-static_cast<double>(D) * eps * eps / (50.0 * std::numbers::pi));
}

/// Fixed-width histogram over [0, 1].
class Histogram {
 public:
  static constexpr int kBins = 60;

  void add(double x) {
    const int bin = std::clamp(static_cast<int>(std::floor(x * kBins)), 0, kBins - 1);
    ++counts_[static_cast<std::size_t>(bin)];
    ++total_;
  }

  [[nodiscard]] const std::vector<std::int64_t>& counts() const { return counts_; }
  [[nodiscard]] std::int64_t total() const { return total_; }
  [[nodiscard]] static double lower_edge(int bin) { return static_cast<double>(bin) / kBins; }
  [[nodiscard]] static double center(int bin) { return (bin + 0.5) / kBins; }
  /// Probability density, so that sum(density * width) = 1.
  [[nodiscard]] double density(int bin) const {
    return total_ == 0 ? 0.0 : static_cast<double>(counts_[static_cast<std::size_t>(bin)]) * kBins / total_;
  }

 private:
  std::vector<std::int64_t> counts_ = std::vector<std::int64_t>(kBins, 0);
  std::int64_t total_ = 0;
};

struct TailPoint {
  double epsilon = 0.0;
  double fraction = 0.0;
  double bound = 0.0;
};

struct EnsembleStats {
  int d_a = 0, d_b = 0, r = 1;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double mean_psep_lb = 0.0, mean_psep_h = 0.0, mean_plc_ub = 0.0, mean_u_r = 0.0, mean_s0 = 0.0;
  double sd_psep_lb = 0.0, sd_psep_h = 0.0, sd_plc_ub = 0.0;
  Histogram hist_lb, hist_h, hist_ub;
  /// Fraction of samples outside [(r+1)/(d+1), 4(r+1)/(d+1)].
  double outlier_lb = 0.0, outlier_h = 0.0, outlier_ub = 0.0;
  /// Samples where plc_ub > u_r (must stay 0).
  std::int64_t ur_violations = 0;
  std::vector<TailPoint> tail;

  [[nodiscard]] double p_mes() const { return sep_prob_mes_rank(d_a, r); }
  [[nodiscard]] double bracket_hi() const { return 4.0 * p_mes(); }
};

struct EnsembleOptions {
  std::int64_t samples = 10000;
  std::uint64_t seed = 20240601;
  int threads = 1;
  std::vector<double> epsilons;
};

/// Schmidt spectra of `samples` Haar states on C^d (x) C^d; sample i uses
/// its own generator stream, so the result is independent of `threads`.
inline std::vector<SchmidtSpectrum> haar_spectra(int d, std::int64_t samples, std::uint64_t seed, int threads) {
  detail::require(d >= 1, "haar_spectra: d must be positive");
  detail::require(samples >= 1, "haar_spectra: samples must be >= 1");
  std::vector<SchmidtSpectrum> out(static_cast<std::size_t>(samples), SchmidtSpectrum({1.0}));
  detail::parallel_for(samples, threads, [&](std::int64_t i) {
    auto rng = detail::stream_rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = schmidt_spectrum(haar_state(d, d, rng));
  });
  return out;
}

namespace detail {

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double stddev(const std::vector<double>& x, double m) {
  if (x.size() < 2) return 0.0;
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

inline EnsembleStats summarize(const std::vector<SchmidtSpectrum>& spectra, int d, int r, std::uint64_t seed,
                               const std::vector<double>& epsilons) {
  check_rank_index(r, d);
  const auto n = spectra.size();
  std::vector<double> lb(n), h(n), ub(n), ur(n), s0(n);
  EnsembleStats st;
  st.d_a = st.d_b = d;
  st.r = r;
  st.samples = static_cast<std::int64_t>(n);
  st.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    const SeparationBounds b = bounds_rank(spectra[i], r);
    lb[i] = b.psep_lb;
    h[i] = b.psep_h;
    ub[i] = b.plc_ub;
    ur[i] = u_r(spectra[i], r);
    s0[i] = spectra[i].s0();
    st.hist_lb.add(lb[i]);
    st.hist_h.add(h[i]);
    st.hist_ub.add(ub[i]);
    if (ub[i] > ur[i] + 1e-12) ++st.ur_violations;
  }
  st.mean_psep_lb = mean(lb);
  st.mean_psep_h = mean(h);
  st.mean_plc_ub = mean(ub);
  st.mean_u_r = mean(ur);
  st.mean_s0 = mean(s0);
  st.sd_psep_lb = stddev(lb, st.mean_psep_lb);
  st.sd_psep_h = stddev(h, st.mean_psep_h);
  st.sd_plc_ub = stddev(ub, st.mean_plc_ub);
  const double lo = st.p_mes(), hi = st.bracket_hi();
  const auto outside = [&](const std::vector<double>& x) {
    const auto c = std::count_if(x.begin(), x.end(), [&](double v) { return v < lo || v > hi; });
    return static_cast<double>(c) / static_cast<double>(n);
  };
  st.outlier_lb = outside(lb);
  st.outlier_h = outside(h);
  st.outlier_ub = outside(ub);
  for (double eps : epsilons) {
    const auto c = std::count_if(ub.begin(), ub.end(), [&](double v) { return v >= hi + eps; });
    st.tail.push_back({eps, static_cast<double>(c) / static_cast<double>(n), tail_bound(d * d, eps)});
  }
  return st;
}

}  // namespace detail

/// Statistics for several r from one shared set of Haar samples.
inline std::vector<EnsembleStats> ensemble_stats(int d, const std::vector<int>& rs, const EnsembleOptions& opt) {
  for (int r : rs) detail::check_rank_index(r, d);
  const auto spectra = haar_spectra(d, opt.samples, opt.seed, opt.threads);
  std::vector<EnsembleStats> out;
  out.reserve(rs.size());
  for (int r : rs) out.push_back(detail::summarize(spectra, d, r, opt.seed, opt.epsilons));
  return out;
}

inline EnsembleStats ensemble_stats(int d, int r, std::int64_t samples, std::uint64_t seed, int threads = 1) {
  return ensemble_stats(d, std::vector<int>{r}, {samples, seed, threads, {}}).front();
}

/// Empirical fraction of Haar samples with plc_ub >= 4(r+1)/(d+1) + eps, next to the tail bound.
inline std::vector<TailPoint> tail_check(int d, int r, const std::vector<double>& epsilons, std::int64_t samples,
                                         std::uint64_t seed, int threads = 1) {
  for (double eps : epsilons) detail::require(std::isfinite(eps) && eps >= 0.0, "tail_check: eps must be >= 0");
  return ensemble_stats(d, std::vector<int>{r}, {samples, seed, threads, epsilons}).front().tail;
}

struct ProtocolTrace {
  std::vector<std::uint8_t> outcomes;  ///< 1 = pass
  int n_tests = 0;
  StrategyId strategy_id = StrategyId::Global;
  std::string true_state;
  std::uint64_t seed = 0;

  [[nodiscard]] std::int64_t passes() const { return std::count(outcomes.begin(), outcomes.end(), std::uint8_t{1}); }
  [[nodiscard]] bool all_passed() const { return passes() == n_tests; }
};

namespace detail {

/// Pass probability of each test on sigma, clamped to [0, 1].
inline std::vector<double> test_pass_probs(const Strategy& strategy, const DensityMatrix& sigma) {
  require(sigma.rows() == strategy.op().dim() && sigma.cols() == sigma.rows(),
          "simulate_protocol: state dimension does not match the strategy");
  require(std::abs(sigma.trace().real() - 1.0) <= tol::kRenormalize, "simulate_protocol: state must have unit trace");
  std::vector<double> p;
  for (const auto& t : strategy.tests()) p.push_back(std::clamp(pass_prob(t.op, sigma), 0.0, 1.0));
  return p;
}

inline std::discrete_distribution<int> test_picker(const Strategy& strategy) {
  std::vector<double> w;
  for (const auto& t : strategy.tests()) w.push_back(t.weight);
  return {w.begin(), w.end()};
}

}  // namespace detail

/// Each round draws test l with probability p_l, then passes with probability tr(Pi_l sigma).
inline ProtocolTrace simulate_protocol(const Strategy& strategy, const DensityMatrix& sigma, int n, std::uint64_t seed,
                                       std::string descriptor = "") {
  detail::require(n >= 0, "simulate_protocol: n must be >= 0");
  const auto probs = detail::test_pass_probs(strategy, sigma);
  auto pick = detail::test_picker(strategy);
  auto rng = detail::stream_rng(seed, 0);
  std::uniform_real_distribution<double> u;
  ProtocolTrace trace{{}, n, strategy.id(), std::move(descriptor), seed};
  trace.outcomes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int l = pick(rng);
    trace.outcomes.push_back(u(rng) < probs[static_cast<std::size_t>(l)] ? 1 : 0);
  }
  return trace;
}

/// Fraction of `traces` independent runs of length n in which every test passes.
inline double all_pass_frequency(const Strategy& strategy, const DensityMatrix& sigma, int n, std::int64_t traces,
                                 std::uint64_t seed, int threads = 1) {
  detail::require(traces >= 1, "all_pass_frequency: traces must be >= 1");
  const auto probs = detail::test_pass_probs(strategy, sigma);
  std::vector<std::uint8_t> passed(static_cast<std::size_t>(traces), 0);
  detail::parallel_for(traces, threads, [&](std::int64_t t) {
    auto rng = detail::stream_rng(seed, static_cast<std::uint64_t>(t));
    auto pick = detail::test_picker(strategy);
    std::uniform_real_distribution<double> u;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = u(rng) < probs[static_cast<std::size_t>(pick(rng))];
    passed[static_cast<std::size_t>(t)] = ok ? 1 : 0;
  });
  return static_cast<double>(std::count(passed.begin(), passed.end(), std::uint8_t{1})) / static_cast<double>(traces);
}

}  // namespace hdecert
