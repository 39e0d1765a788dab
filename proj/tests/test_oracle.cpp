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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hdecert/operators.hpp"
#include "hdecert/oracle.hpp"
#include "hdecert/separation.hpp"
#include "hdecert/twoqubit.hpp"
#include "support/oracles.hpp"

using namespace hdecert;
using Catch::Approx;

namespace {

SchmidtSpectrum random_spectrum(int d, std::mt19937_64& rng) { return SchmidtSpectrum(oracles::random_simplex(d, rng)); }

int numerical_rank(const PureState& psi) {
  const auto s = schmidt_spectrum(psi);
  int k = 0;
  for (double x : s.values()) k += x > 1e-9 ? 1 : 0;
  return k;
}

OracleConfig quick() {
  OracleConfig cfg;
  cfg.restarts = 12;
  return cfg;
}

}  // namespace

TEST_CASE("oracle configuration is validated") {
  OracleConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(max_product(omega_opt(2), {2, 2}, cfg), InvalidArgument);
  CHECK_THROWS_AS(max_product(omega_opt(2), {2, 3}), InvalidArgument);
  CHECK_THROWS_AS(max_rank_r(omega_opt(3), {3, 3}, 0), InvalidArgument);
}

TEST_CASE("oracle recovers the maximally entangled values") {
  for (int d = 2; d <= 4; ++d)
    for (int r = 1; r < d; ++r) {
      const auto res = max_rank_r(omega_opt(d), {d, d}, r, quick());
      CHECK(res.value == Approx(sep_prob_mes_rank(d, r)).margin(1e-6));
      CHECK(res.converged);
      CHECK(numerical_rank(res.witness) <= r);
      CHECK(pass_prob(omega_opt(d), res.witness) == Approx(res.value).margin(1e-9));
    }
  CHECK(max_rank_r(omega_opt(4), {4, 4}, 2, quick()).value == Approx(0.6).margin(1e-6));
  // r at full rank is the top eigenvalue
  CHECK(max_rank_r(omega_opt(3), {3, 3}, 3).value == Approx(1.0).margin(1e-12));
}

TEST_CASE("oracle: MUB strategy for the qutrit MES") {
  const auto strat = omega_mub(SchmidtSpectrum::uniform(3));
  CHECK(max_product(strat.op(), {3, 3}, quick()).value == Approx(2.0 / 3).margin(1e-6));
}

TEST_CASE("oracle: limited set") {
  const auto res = max_limited(omega_opt(4), {4, 4}, 1, 0.25, quick());
  CHECK(res.value == Approx(0.8).margin(1e-6));
  CHECK(e_r(schmidt_spectrum(res.witness), 1) <= 0.25 + 1e-9);
  for (int d = 3; d <= 4; ++d)
    for (double E : {0.05, 0.2}) {
      const auto lim = max_limited(omega_opt(d), {d, d}, 1, E, quick());
      CHECK(lim.value == Approx(sep_prob_mes_limited(d, 1, E)).margin(1e-6));
    }
  // E above E_r(top eigenvector) returns that eigenvector
  CHECK(max_limited(HermitianOperator::projector(target_state(SchmidtSpectrum({0.9, 0.1})).vector()), {2, 2}, 1, 0.2)
            .value == Approx(1.0).margin(1e-12));
}

TEST_CASE("oracle agrees with the closed-form bounds on random targets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 3;
    const auto s = random_spectrum(d, rng);
    const auto b = bounds_rank(s, 1);
    const auto proj = HermitianOperator::projector(target_state(s).vector());
    CHECK(max_product(proj, {d, d}, quick()).value == Approx(b.psep_lb).margin(1e-6));
    CHECK(max_product(omega_sep_h(s), {d, d}, quick()).value == Approx(b.psep_h).margin(1e-6));
    CHECK(max_product(omega_lc_h(s), {d, d}, quick()).value == Approx(b.plc_ub).margin(1e-6));
    CHECK(b.psep_lb <= b.psep_h + 1e-15);
    CHECK(b.psep_h <= b.plc_ub + 1e-15);

    const double E = 0.5 * e_r(s, 1);
    const auto bl = bounds_limited(s, 1, E);
    CHECK(max_limited(omega_sep_h(s), {d, d}, 1, E, quick()).value == Approx(bl.psep_h).margin(1e-6));
    CHECK(max_limited(proj, {d, d}, 1, E, quick()).value == Approx(bl.psep_lb).margin(1e-6));
  }
}

TEST_CASE("product oracle on the two-qubit family") {
  for (double t : {0.3, 0.52, 0.6, 0.7})
    for (double p : {0.0, 0.5, 1.0}) {
      const auto res = max_product(twoqubit::omega_family(t, p), {2, 2});
      CHECK(res.value == Approx(twoqubit::p_closed(t, p)).margin(1e-6));
      CHECK(numerical_rank(res.witness) == 1);
    }
}

TEST_CASE("oracle values are monotone in r and E") {
  std::mt19937_64 rng(5);
  const auto s = random_spectrum(4, rng);
  const auto op = omega_sep_h(s);
  double prev = 0.0;
  for (int r = 1; r <= 4; ++r) {
    const double v = max_rank_r(op, {4, 4}, r, quick()).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
  prev = 0.0;
  const double er = e_r(s, 1);
  for (double frac : {0.0, 0.25, 0.5, 0.75}) {
    const double v = max_limited(op, {4, 4}, 1, frac * er, quick()).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("oracle results do not depend on the thread count") {
  OracleConfig a = quick(), b = quick();
  b.threads = 3;
  const auto op = omega_mub(SchmidtSpectrum({0.5, 0.3, 0.2})).op();
  const auto ra = max_rank_r(op, {3, 3}, 2, a), rb = max_rank_r(op, {3, 3}, 2, b);
  CHECK(ra.value == rb.value);
  CHECK(ra.iterations == rb.iterations);
  CHECK((ra.witness.coeffs() - rb.witness.coeffs()).norm() == 0.0);
}

TEST_CASE("rectangular dimensions") {
  // |Psi> in C^2 (x) C^3 with Schmidt rank 2
  const auto psi = target_state(SchmidtSpectrum({0.7, 0.3}), 3);
  const auto proj = HermitianOperator::projector(psi.vector());
  CHECK(max_product(proj, {2, 3}, quick()).value == Approx(0.7).margin(1e-6));
}
