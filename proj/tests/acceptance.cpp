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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "hdecert/hdecert.hpp"
#include "support/oracles.hpp"

using namespace hdecert;
namespace tq = hdecert::twoqubit;

namespace {

/// Collects failures for one criterion; the first few are echoed.
struct Report {
  int failures = 0;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 5) detail << "\n    " << what;
    ++failures;
  }
  void close(const std::string& what, double expected, double actual, double tolerance) {
    std::ostringstream s;
    s.precision(15);
    s << what << ": expected " << expected << ", got " << actual << " (tol " << tolerance << ")";
    check(std::abs(expected - actual) <= tolerance, s.str());
  }
};

int run(const char* name, const std::string& summary, const std::function<void(Report&)>& body) {
  Report rep;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(rep);
  } catch (const std::exception& e) {
    rep.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %s  [%.2f s] %s", name, rep.failures == 0 ? "PASS" : "FAIL", secs, summary.c_str());
  if (rep.failures) std::printf(" (%d failures)%s", rep.failures, rep.detail.str().c_str());
  std::printf("\n");
  std::fflush(stdout);
  return rep.failures == 0 ? 0 : 1;
}

// Exact check of P^N <= delta < P^(N-1) in rationals.
bool exact_boundary(const Rational& P, const Rational& delta, int N) {
  using boost::multiprecision::cpp_int;
  cpp_int pn = 1, qn = 1;
  for (int i = 0; i < N - 1; ++i) {
    pn *= P.num();
    qn *= P.den();
  }
  const bool above = pn * delta.den() > cpp_int(delta.num()) * qn;  // P^(N-1) > delta
  pn *= P.num();
  qn *= P.den();
  const bool below = pn * delta.den() <= cpp_int(delta.num()) * qn;  // P^N <= delta
  return below && (N == 1 || above);
}

/// Prime-d MUBs built directly: the computational basis and, for k in [0, d),
/// vectors with entries w^(k j^2 + m j) / sqrt(d); for d = 2 the X and Y eigenbases.
std::vector<CMatrix> reference_mubs(int d) {
  std::vector<CMatrix> bases{CMatrix::Identity(d, d)};
  const double tau = 2 * std::numbers::pi / d;
  for (int k = 0; k < d; ++k) {
    CMatrix b(d, d);
    for (int m = 0; m < d; ++m)
      for (int j = 0; j < d; ++j) {
        const double phase = d == 2 ? std::numbers::pi * (m * j) + std::numbers::pi / 2 * (k * j)
                                    : tau * static_cast<double>((static_cast<long>(k) * j * j + m * j) % d);
        b(j, m) = std::polar(1.0 / std::sqrt(d), phase);
      }
    bases.push_back(b);
  }
  return bases;
}

}  // namespace

int main() {
  int failed = 0;

  failed += run("AC1", "MES separation probability (r+1)/(d+1), exact for d<=100 and oracle for d<=4", [](Report& rep) {
    for (int d = 2; d <= 100; ++d)
      for (int r = 1; r < d; ++r) {
        // fidelity route: beta + (1 - beta) r/d with beta = 1/(d+1)
        const Rational beta(1, d + 1);
        const Rational ref = beta + (Rational(1) - beta) * Rational(r, d);
        rep.check(sep_prob_mes_rank_exact(d, r) == ref, "rational mismatch d=" + std::to_string(d));
        rep.check(ref == Rational(r + 1, d + 1), "reference mismatch");
        rep.close("double d=" + std::to_string(d), ref.to_double(), sep_prob_mes_rank(d, r), 1e-15);
      }
    OracleConfig cfg;
    cfg.restarts = 16;
    for (int d = 2; d <= 4; ++d)
      for (int r = 1; r <= std::min(3, d - 1); ++r)
        rep.close("oracle d=" + std::to_string(d) + " r=" + std::to_string(r), Rational(r + 1, d + 1).to_double(),
                  max_rank_r(omega_opt(d), {d, d}, r, cfg).value, 1e-6);
  });

  failed += run("AC2", "test-count staircases for opt and MUB, d in [2,100], r in {1,2,5}", [](Report& rep) {
    const Rational delta(1, 100);
    for (int r : {1, 2, 5})
      for (int which = 0; which < 2; ++which) {
        int prev = std::numeric_limits<int>::max();
        for (int d = r + 1; d <= 100; ++d) {
          const Rational P = which == 0 ? Rational(r + 1, d + 1) : Rational(r + d, 2 * d);
          const double Pd = which == 0 ? sep_prob_mes_rank(d, r) : sep_prob_mub(SchmidtSpectrum::uniform(d), r);
          const int n_exact = tests_required(P, delta);
          const int n_double = tests_required(Pd, 0.01);
          const std::string tag = (which == 0 ? "opt" : "mub") + std::string(" d=") + std::to_string(d) +
                                  " r=" + std::to_string(r);
          rep.check(n_exact == n_double, tag + ": double and exact routes differ");
          rep.check(exact_boundary(P, delta, n_exact), tag + ": boundary condition violated");
          const double ratio = std::log(0.01) / std::log(P.to_double());
          if (std::abs(ratio - std::round(ratio)) > 1e-9)
            rep.check(n_exact == static_cast<int>(std::ceil(ratio)), tag + ": differs from ceil(ln delta / ln P)");
          rep.check(n_exact <= prev, tag + ": staircase not monotone");
          prev = n_exact;
        }
      }
    rep.check(tests_required(sep_prob_mes_rank(9, 1), 0.01) == 3, "d=9 r=1 opt should need 3 tests");
    rep.check(tests_required(sep_prob_mub(SchmidtSpectrum::uniform(4), 1), 0.01) == 10,
              "d=4 r=1 MUB should need 10 tests");
  });

  failed += run("AC3", "qutrit pair: majorization does not order psep_h", [](Report& rep) {
    const SchmidtSpectrum x({0.6, 0.2, 0.2}), y({0.4, 0.4, 0.2});
    rep.close("psep_h(3/5,1/5,1/5)", (4 + std::sqrt(3.0)) / (5 + std::sqrt(3.0)), bounds_rank(x, 2).psep_h, 1e-12);
    rep.close("psep_h(2/5,2/5,1/5)", 6.0 / 7.0, bounds_rank(y, 2).psep_h, 1e-12);
    rep.check(majorizes(x, y), "x should majorize y");
    rep.check(!majorizes(y, x), "y should not majorize x");
    rep.check(bounds_rank(x, 2).psep_h < bounds_rank(y, 2).psep_h, "expected psep_h(x) < psep_h(y)");
  });

  failed += run("AC4", "bound sandwich on 10^4 random spectra per d in {3,5,10,50}", [](Report& rep) {
    std::mt19937_64 rng(404);
    for (int d : {3, 5, 10, 50})
      for (int i = 0; i < 10000; ++i) {
        const SchmidtSpectrum s(oracles::random_simplex(d, rng));
        const int r = 1 + i % (d - 1);
        const auto b = bounds_rank(s, r);
        const double s0 = s.s0(), tol = 1e-10;
        const std::string tag = "d=" + std::to_string(d) + " i=" + std::to_string(i);
        rep.check(b.psep_lb <= b.psep_h + tol, tag + ": psep_lb > psep_h");
        rep.check(b.psep_h <= b.plc_ub + tol, tag + ": psep_h > plc_ub");
        rep.check(b.plc_ub <= 2 * b.psep_lb / (1 + s0) + tol, tag + ": plc_ub > 2 psep_lb / (1 + s0)");
        rep.check(b.plc_ub <= 3 * b.psep_h / (2 + s0) + tol, tag + ": plc_ub > 3 psep_h / (2 + s0)");
      }
  });

  failed += run("AC5", "two-qubit thresholds and P_sep against a 200x200x16x16 grid on 20 angles", [](Report& rep) {
    rep.close("theta*", 0.51095, tq::theta_star(), 5e-6);
    rep.close("theta3*", 0.59079, tq::theta3_star(), 2e-4);
    rep.close("concurrence at theta3*", 0.92521, tq::concurrence(tq::theta3_star()), 3e-4);
    rep.check(tq::sep_prob_two_qubit(tq::kQuarterPi) == 2.0 / 3.0, "P_sep(pi/4) != 2/3");
    for (int i = 0; i < 20; ++i) {
      const double t = 0.02 + (tq::kQuarterPi - 0.02) * i / 19;
      const double psep = tq::sep_prob_two_qubit(t);
      const double ps = tq::p_star(t);
      const double grid = oracles::product_grid_max(tq::omega_family(t, ps).matrix(), 200, 16);
      rep.close("P_sep(" + std::to_string(t) + ")", grid, psep, 1e-6);
      // p* is the minimizer: neighbouring members of the family separate worse
      for (double dp : {-0.05, 0.05}) {
        const double p = std::clamp(ps + dp, 0.0, 1.0);
        if (p == ps) continue;
        const double other = oracles::product_grid_max(tq::omega_family(t, p).matrix(), 60, 8);
        rep.check(other >= psep - 1e-6, "p*(" + std::to_string(t) + ") is not the minimizer");
      }
    }
  });

  failed += run("AC6", "Wang-Hayashi equivalence on 50 random points and closed-form PPT spectra", [](Report& rep) {
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double t = 0.01 + (tq::kQuarterPi - 0.01) * u(rng);
      const double lo = tq::tilde_p(t);
      const double p = lo + (1 - lo) * u(rng);
      const auto [eta, pp] = tq::wang_hayashi_parameters(t, p);
      rep.close("eta", 1 - std::tan(t), eta, 1e-15);
      const CMatrix diff = tq::wang_hayashi(t, eta, pp).op().matrix() - tq::omega_family(t, p).matrix();
      rep.close("WH entrywise", 0.0, diff.cwiseAbs().maxCoeff(), 1e-10);

      auto closed = tq::ppt_eigenvalues(t, p);
      std::sort(closed.begin(), closed.end(), std::greater<>());
      const auto op = tq::omega_family(t, p);
      const Eigen::VectorXd ev = partial_transpose(op, {2, 2}).eigenvalues();
      const Eigen::VectorXd ev_c = partial_transpose(HermitianOperator(CMatrix::Identity(4, 4) - op.matrix()), {2, 2})
                                       .eigenvalues();
      for (int k = 0; k < 4; ++k) {
        const double lam = closed[static_cast<std::size_t>(k)];
        rep.close("PT eigenvalue", lam, ev(k), 1e-10);
        rep.close("PT eigenvalue of 1 - Omega", 1 - lam, ev_c(3 - k), 1e-10);
        rep.check(lam >= -1e-10 && 1 - lam >= -1e-10, "PT eigenvalue outside [0, 1]");
      }
      rep.check(is_ppt_verification_operator(op, {2, 2}), "family member not PPT");
    }
  });

  failed += run("AC7", "2-design identity for d in {2,3,5,7}", [](Report& rep) {
    for (int d : {2, 3, 5, 7}) {
      const int n = d * d;
      CMatrix acc = CMatrix::Zero(n, n);
      for (const CMatrix& b : reference_mubs(d)) {
        rep.close("unitary basis", 0.0, (b.adjoint() * b - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
        for (int m = 0; m < d; ++m) {
          const CVector w = Eigen::kroneckerProduct(CVector(b.col(m)), CVector(b.col(m).conjugate()));
          acc += w * w.adjoint() / static_cast<double>(d + 1);
        }
      }
      CVector phi = CVector::Zero(n);
      for (int j = 0; j < d; ++j) phi(j * d + j) = 1.0 / std::sqrt(d);
      const CMatrix proj = phi * phi.adjoint();
      const CMatrix opt = proj + (CMatrix::Identity(n, n) - proj) / static_cast<double>(d + 1);
      rep.close("reference sum vs Omega_opt d=" + std::to_string(d), 0.0, (acc - opt).cwiseAbs().maxCoeff(), 1e-9);
      rep.close("library Omega_opt d=" + std::to_string(d), 0.0,
                (omega_opt(d).matrix() - opt).cwiseAbs().maxCoeff(), 1e-9);
      rep.close("library 2-design d=" + std::to_string(d), 0.0,
                (two_design_strategy(d).op().matrix() - opt).cwiseAbs().maxCoeff(), 1e-9);
    }
  });

  failed += run("AC8", "Haar ensembles, 10^4 samples, d in {10,40,100}, r in {1,2,5}", [](Report& rep) {
    for (int d : {10, 40, 100}) {
      EnsembleOptions opt;
      opt.samples = 10000;
      opt.seed = 20240601;
      opt.threads = 0;
      for (const auto& st : ensemble_stats(d, {1, 2, 5}, opt)) {
        const double lo = st.p_mes(), hi = st.bracket_hi();
        const std::string tag = "d=" + std::to_string(d) + " r=" + std::to_string(st.r);
        for (double m : {st.mean_psep_lb, st.mean_psep_h, st.mean_plc_ub})
          rep.check(m >= lo && m <= hi, tag + ": mean " + std::to_string(m) + " outside bracket");
        rep.close(tag + " |mean_plc_ub - mean_psep_h|", 0.0, st.mean_plc_ub - st.mean_psep_h, 0.01);
        for (double o : {st.outlier_lb, st.outlier_h, st.outlier_ub})
          rep.check(o <= 0.001, tag + ": outlier mass " + std::to_string(o));
      }
    }
  });

  failed += run("AC9", "MUB protocol against the best product adversary, d=4", [](Report& rep) {
    const SchmidtSpectrum mes = SchmidtSpectrum::uniform(4);
    const auto strat = omega_mub(mes);
    const DensityMatrix sigma = adversarial_state(mes, 1, 0.0).density();
    const double p = 5.0 / 8.0;
    rep.close("adversary pass probability", p, pass_prob(strat.op(), sigma), 1e-12);
    const int rounds = 100000;
    const auto trace = simulate_protocol(strat, sigma, rounds, 20240601, "product adversary");
    const double rate = static_cast<double>(trace.passes()) / rounds;
    rep.close("pass rate", p, rate, 3 * std::sqrt(p * (1 - p) / rounds));
    const int N = tests_required(sep_prob_mub(mes, 1), 0.01);
    rep.check(N == 10, "N(0.01) should be 10");
    const double freq = all_pass_frequency(strat, sigma, N, 10000, 20240601, 0);
    rep.check(freq <= 0.015, "all-pass frequency " + std::to_string(freq) + " above 0.015");
  });

  failed += run("AC10", "spectra property suites, 10^3 instances each", [](Report& rep) {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double tol = 1e-12;
    // Schur-concavity: moving mass from a smaller to a larger entry cannot raise e_r
    for (int i = 0; i < 1000; ++i) {
      const int d = 2 + i % 12;
      std::vector<double> y = oracles::random_simplex(d, rng), x = y;
      for (int k = 0; k < 3; ++k) {
        const int a = static_cast<int>(u(rng) * d) % d, b = static_cast<int>(u(rng) * d) % d;
        if (a == b) continue;
        const int hi = x[a] >= x[b] ? a : b, lo = hi == a ? b : a;
        const double m = u(rng) * x[lo];
        x[hi] += m;
        x[lo] -= m;
      }
      const SchmidtSpectrum sx(x), sy(y);
      rep.check(majorizes(sx, sy), "constructed spectrum does not majorize");
      for (int r = 1; r < d; ++r) rep.check(e_r(sx, r) <= e_r(sy, r) + tol, "e_r not Schur-concave");
    }
    // Lipschitz: |E_r(psi) - E_r(phi)| <= l(r, d) sqrt(2 - 2|<psi|phi>|)
    for (int i = 0; i < 1000; ++i) {
      const int d = 2 + i % 7;
      const int r = 1 + i % (d - 1);
      const CVector v = oracles::random_vector(d * d, rng).normalized();
      const CVector w = (v + (0.02 + u(rng)) * oracles::random_vector(d * d, rng)).normalized();
      const auto sv = schmidt_spectrum(PureState::from_vector(v, {d, d}));
      const auto sw = schmidt_spectrum(PureState::from_vector(w, {d, d}));
      const double dist = std::sqrt(std::max(0.0, 2 - 2 * std::abs(v.dot(w))));
      rep.check(std::abs(e_r(sv, r) - e_r(sw, r)) <= lipschitz_const(r, d) * dist + 1e-10, "Lipschitz bound violated");
    }
    // fidelity_limited: nondecreasing and concave in E, 1 from E_r on
    for (int i = 0; i < 1000; ++i) {
      const int d = 2 + i % 9;
      const int r = 1 + i % (d - 1);
      const SchmidtSpectrum s(oracles::random_simplex(d, rng));
      const double er = e_r(s, r);
      const double a = u(rng) * er, b = u(rng) * er, lam = u(rng);
      const double fa = fidelity_limited(s, r, a), fb = fidelity_limited(s, r, b);
      rep.check(fidelity_limited(s, r, lam * a + (1 - lam) * b) >= lam * fa + (1 - lam) * fb - tol, "not concave");
      rep.check((a <= b) == (fa <= fb + tol) || std::abs(fa - fb) <= tol, "not monotone");
      rep.close("f at 0", 1 - er, fidelity_limited(s, r, 0.0), tol);
      rep.check(fidelity_limited(s, r, er) == 1.0, "f(E_r) != 1");
    }
  });

  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
