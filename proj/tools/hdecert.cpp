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

// Command-line front end: planning, bounds, two-qubit analysis, figure data,
// Monte Carlo, oracle cross-checks and the self-check battery.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hdecert/hdecert.hpp"

namespace {

using namespace hdecert;
namespace tq = hdecert::twoqubit;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitCheck = 3;
constexpr std::uint64_t kDefaultSeed = 20240601;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || text.empty()) throw InvalidArgument("not a number: '" + text + "'");
  return v;
}

/// Decimal ("0.25") or fraction ("1/4").
double parse_number(const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_double(text);
  const double den = parse_double(trim(text.substr(slash + 1)));
  if (den == 0.0) throw InvalidArgument("zero denominator in '" + text + "'");
  return parse_double(trim(text.substr(0, slash))) / den;
}

/// Exact value of a short decimal or fraction string, for the exact test-count route.
std::optional<Rational> parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  const auto as_int = [](const std::string& t) -> std::optional<std::int64_t> {
    std::int64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) return std::nullopt;
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto n = as_int(trim(text.substr(0, slash))), d = as_int(trim(text.substr(slash + 1)));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    const auto n = as_int(text);
    return n ? std::optional<Rational>(Rational(*n)) : std::nullopt;
  }
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 15) return std::nullopt;
  const auto n = as_int(text.substr(0, dot) + frac);
  if (!n) return std::nullopt;
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  return Rational(*n, den);
}

SchmidtSpectrum parse_spectrum(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(parse_number(tok));
  if (v.empty()) throw InvalidArgument("empty spectrum");
  double sum = 0.0;
  for (double x : v) sum += x;
  if (std::abs(sum - 1.0) > tol::kRenormalize)
    throw InvalidArgument("spectrum must sum to 1 (sum = " + format_double(sum) + ")");
  if (std::abs(sum - 1.0) > 1e-15) std::cerr << "warning: spectrum renormalized (sum = " << format_double(sum) << ")\n";
  return SchmidtSpectrum(std::move(v));
}

std::uint64_t env_seed() {
  const char* env = std::getenv("HDECERT_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const std::string s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InvalidArgument("HDECERT_SEED is not an integer");
  return v;
}

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::string command_line;
};

/// --mes d or --spectrum list.
struct TargetArgs {
  int mes = 0;
  std::string spectrum;

  void attach(CLI::App* cmd) {
    auto* m = cmd->add_option("--mes", mes, "maximally entangled target of local dimension d")->check(CLI::Range(2, 4096));
    auto* s = cmd->add_option("--spectrum", spectrum, "Schmidt spectrum, e.g. 0.4,0.4,0.2 or 2/5,2/5,1/5");
    m->excludes(s);
  }

  [[nodiscard]] bool given() const { return mes > 0 || !spectrum.empty(); }

  [[nodiscard]] SchmidtSpectrum resolve() const {
    if (mes > 0) return SchmidtSpectrum::uniform(mes);
    if (!spectrum.empty()) return parse_spectrum(spectrum);
    throw InvalidArgument("one of --mes or --spectrum is required");
  }
};

AdversarySet adversary(int r, const std::optional<double>& E) {
  return E ? AdversarySet::limited(r, *E) : AdversarySet::rank(r);
}

std::string describe(PlanStrategy s) {
  switch (s) {
    case PlanStrategy::Opt: return "optimal strategy for maximally entangled targets, realized by d+1 mutually unbiased bases";
    case PlanStrategy::Mub: return "two-test strategy built from a pair of mutually unbiased bases";
    case PlanStrategy::SepH: return "optimal separable homogeneous strategy";
    case PlanStrategy::LcH: return "upper bound for the optimal LOCC homogeneous strategy";
    case PlanStrategy::Global: return "global projector onto the target (lower bound for separable strategies)";
  }
  return "";
}

void write_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

// ---------------------------------------------------------------- plan, bounds

struct PlanArgs {
  TargetArgs target;
  int r = 1;
  std::optional<double> E;
  double delta = 0.01;
  std::string strategy = "seph";
};

int run_plan(const PlanArgs& a) {
  const auto strategy = parse_plan_strategy(a.strategy);
  if (!strategy) throw InvalidArgument("unknown strategy '" + a.strategy + "' (opt, mub, seph, lch, global)");
  const auto plan = make_plan(a.target.resolve(), adversary(a.r, a.E), a.delta, *strategy);
  Json j = to_json(plan);
  j["description"] = describe(*strategy);
  write_json(j);
  return kExitOk;
}

struct BoundsArgs {
  TargetArgs target;
  int r = 1;
  std::optional<double> E;
};

int run_bounds(const BoundsArgs& a) {
  const auto s = a.target.resolve();
  const auto adv = adversary(a.r, a.E);
  const auto b = bounds(s, adv);
  Json j{{"spectrum", to_json(s)},
         {"adversary", to_json(adv)},
         {"E_r", e_r(s, a.r)},
         {"psep_lb", b.psep_lb},
         {"psep_h", b.psep_h},
         {"plc_ub", b.plc_ub},
         {"p_mub", sep_prob_mub(s, a.r, adv.effective_E())}};
  if (s.is_uniform()) j["p_opt"] = sep_prob_mes_limited(s.dim(), a.r, adv.effective_E());
  write_json(j);
  return kExitOk;
}

// -------------------------------------------------------------------- twoqubit

struct TwoQubitArgs {
  std::optional<double> theta;
  std::optional<double> p;
  bool thresholds = false;
};

int run_twoqubit(const TwoQubitArgs& a) {
  if (a.thresholds || !a.theta) {
    if (!a.thresholds) throw InvalidArgument("--theta or --thresholds is required");
    const double t1 = tq::theta_star(), t2 = tq::theta2_star(), t3 = tq::theta3_star();
    write_json({{"theta_star", t1},
                {"theta2_star", t2},
                {"theta3_star", t3},
                {"concurrence_theta_star", tq::concurrence(t1)},
                {"concurrence_theta2_star", tq::concurrence(t2)},
                {"concurrence_theta3_star", tq::concurrence(t3)}});
    return kExitOk;
  }
  const double t = *a.theta;
  const auto row = tq::sweep_row(t);
  Json j{{"theta", t},           {"concurrence", tq::concurrence(t)}, {"kappa", tq::kappa(t)},
         {"q", row.q},           {"p_star", row.p_star},              {"tilde_p", row.tilde_p},
         {"p2_star", row.p2_star}, {"p3_star", row.p3_star},          {"P_sep", row.P_sep},
         {"P_p2", row.P_p2},     {"P_p3", row.P_p3},                  {"P_omega1", row.P_omega1},
         {"P_omega0", row.P_omega0}};
  if (a.p) {
    const double p = *a.p;
    const auto f = tq::theta_functions(t, p);
    Json at{{"p", p},
            {"a_star", f.a_star},
            {"P", tq::p_closed(t, p)},
            {"dP_dp", tq::p_closed_derivative(t, p)},
            {"ppt_eigenvalues", tq::ppt_eigenvalues(t, p)}};
    at["h"] = f.h ? Json(*f.h) : Json(nullptr);
    if (p >= row.tilde_p) {
      const auto [eta, pp] = tq::wang_hayashi_parameters(t, p);
      at["wang_hayashi"] = {{"eta", eta}, {"p_prime", pp}};
    }
    j["at_p"] = at;
  }
  write_json(j);
  return kExitOk;
}

// ------------------------------------------------------------------------- fig

struct FigArgs {
  std::string name;
  std::string out_dir = ".";
  std::string delta = "0.01";
  std::int64_t samples = 10000;
  int points = 0;
  std::vector<int> dims;
  int d_max = 100;
};

const std::vector<int> kFigRanks{1, 2, 5};

void fig1(const FigArgs& a, CsvWriter& csv, double delta) {
  const int d = a.dims.empty() ? 4 : a.dims.front();
  const int points = a.points > 0 ? a.points : 101;
  const auto s = SchmidtSpectrum::uniform(d);
  for (int r = 1; r < d; ++r) {
    const double er = static_cast<double>(d - r) / d;
    for (int k = 0; k < points; ++k) {
      const double E = er * k / points;
      const double p_opt = sep_prob_mes_limited(d, r, E), p_mub = sep_prob_mub(s, r, E);
      csv.row({std::int64_t{d}, std::int64_t{r}, E, std::string("opt"), p_opt, std::int64_t{tests_required(p_opt, delta)}});
      csv.row({std::int64_t{d}, std::int64_t{r}, E, std::string("mub"), p_mub, std::int64_t{tests_required(p_mub, delta)}});
    }
  }
}

void fig2(const FigArgs& a, CsvWriter& csv, double delta) {
  const auto exact_delta = parse_rational(a.delta);
  const auto count = [&](const Rational& P) {
    return exact_delta ? tests_required(P, *exact_delta) : tests_required(P.to_double(), delta);
  };
  for (int r : kFigRanks)
    for (int d = r + 1; d <= a.d_max; ++d) {
      if (d < 2) continue;
      const Rational p_opt(r + 1, d + 1), p_mub(r + d, 2 * d);
      csv.row({std::int64_t{d}, std::int64_t{r}, 0.0, std::string("opt"), p_opt.to_double(), std::int64_t{count(p_opt)}});
      csv.row({std::int64_t{d}, std::int64_t{r}, 0.0, std::string("mub"), p_mub.to_double(), std::int64_t{count(p_mub)}});
    }
}

std::vector<int> ranks_below(int d) {
  std::vector<int> rs;
  for (int r : kFigRanks)
    if (r < d) rs.push_back(r);
  return rs;
}

void fig3(const FigArgs& a, const Globals& g, CsvWriter& csv) {
  const std::vector<int> dims =
      a.dims.empty() ? std::vector<int>{2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 40, 50, 60, 70, 80, 90, 100} : a.dims;
  for (int d : dims)
    for (const auto& st : ensemble_stats(d, ranks_below(d), {a.samples, g.seed, g.threads, {}})) {
      const double p = st.p_mes();
      csv.row({std::int64_t{d}, std::int64_t{st.r}, p, st.mean_psep_lb, st.mean_psep_h, st.mean_plc_ub,
               st.mean_psep_lb / p, st.mean_psep_h / p, st.mean_plc_ub / p});
    }
}

void fig4(const FigArgs& a, const Globals& g, CsvWriter& csv) {
  const std::vector<int> dims = a.dims.empty() ? std::vector<int>{10, 100} : a.dims;
  for (int d : dims)
    for (const auto& st : ensemble_stats(d, ranks_below(d), {a.samples, g.seed, g.threads, {}}))
      for (int b = 0; b < Histogram::kBins; ++b)
        csv.row({std::int64_t{d}, std::int64_t{st.r}, Histogram::center(b), st.hist_lb.density(b), st.hist_h.density(b),
                 st.hist_ub.density(b)});
}

void fig5(const FigArgs& a, CsvWriter& csv) {
  const int points = a.points > 0 ? a.points : 200;
  for (int k = 1; k <= points; ++k) {
    const double theta = tq::kQuarterPi * k / points;
    const auto r = tq::sweep_row(theta);
    csv.row({r.theta, r.q, r.p_star, r.tilde_p, r.p2_star, r.p3_star, r.P_sep, r.P_p2, r.P_p3, r.P_omega1, r.P_omega0});
  }
}

int run_fig(const FigArgs& a, const Globals& g) {
  static const std::vector<std::string> long_cols{"d", "r", "E", "strategy", "P", "N"};
  const std::map<std::string, std::vector<std::string>> columns{
      {"fig1", long_cols},
      {"fig2", long_cols},
      {"fig3", {"d", "r", "P_mes", "mean_lb", "mean_h", "mean_ub", "ratio_lb", "ratio_h", "ratio_ub"}},
      {"fig4", {"d", "r", "bin_center", "density_lb", "density_h", "density_ub"}},
      {"fig5", {"theta", "q", "p_star", "tilde_p", "p2_star", "p3_star", "P_sep", "P_p2", "P_p3", "P_omega1", "P_omega0"}}};
  const auto it = columns.find(a.name);
  if (it == columns.end()) throw InvalidArgument("unknown figure '" + a.name + "' (fig1..fig5)");
  const double delta = parse_number(a.delta);
  detail::require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  detail::require(a.samples >= 1, "samples must be >= 1");
  const fs::path path = fs::path(a.out_dir) / (a.name + ".csv");
  auto out = open_output(path);
  CsvWriter csv(out, output_header(g.command_line, g.seed), it->second);
  if (a.name == "fig1") fig1(a, csv, delta);
  if (a.name == "fig2") fig2(a, csv, delta);
  if (a.name == "fig3") fig3(a, g, csv);
  if (a.name == "fig4") fig4(a, g, csv);
  if (a.name == "fig5") fig5(a, csv);
  out.close();
  if (!out) throw Error("failed writing " + path.string());
  std::cout << path.string() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ montecarlo

struct EnsembleArgs {
  int d = 10;
  std::vector<int> rs{1};
  std::int64_t samples = 10000;
  bool histograms = false;
};

int run_ensemble(const EnsembleArgs& a, const Globals& g) {
  Json arr = Json::array();
  for (const auto& st : ensemble_stats(a.d, a.rs, {a.samples, g.seed, g.threads, {}})) {
    Json j{{"d_a", st.d_a},
           {"d_b", st.d_b},
           {"r", st.r},
           {"samples", st.samples},
           {"seed", st.seed},
           {"bracket", {st.p_mes(), st.bracket_hi()}},
           {"mean_psep_lb", st.mean_psep_lb},
           {"mean_psep_h", st.mean_psep_h},
           {"mean_plc_ub", st.mean_plc_ub},
           {"mean_u_r", st.mean_u_r},
           {"mean_s0", st.mean_s0},
           {"outlier_fraction", {{"lb", st.outlier_lb}, {"h", st.outlier_h}, {"ub", st.outlier_ub}}},
           {"ur_violations", st.ur_violations}};
    if (a.histograms) j["histogram"] = {{"bins", Histogram::kBins}, {"lb", st.hist_lb.counts()},
                                        {"h", st.hist_h.counts()}, {"ub", st.hist_ub.counts()}};
    arr.push_back(j);
  }
  write_json(arr);
  return kExitOk;
}

struct TailArgs {
  int d = 10;
  int r = 1;
  std::vector<double> eps{0.0, 0.1, 0.3};
  std::int64_t samples = 10000;
};

int run_tail(const TailArgs& a, const Globals& g) {
  Json arr = Json::array();
  bool ok = true;
  for (const auto& t : tail_check(a.d, a.r, a.eps, a.samples, g.seed, g.threads)) {
    ok = ok && t.fraction <= t.bound;
    arr.push_back({{"epsilon", t.epsilon}, {"fraction", t.fraction}, {"bound", t.bound}, {"satisfied", t.fraction <= t.bound}});
  }
  write_json(arr);
  return ok ? kExitOk : kExitCheck;
}

struct SimulateArgs {
  TargetArgs target;
  int r = 1;
  std::optional<double> E;
  std::string strategy = "mub";
  std::optional<int> n;
  double delta = 0.01;
  std::int64_t traces = 0;
  std::string out = "sim.csv";
};

Strategy simulation_strategy(const std::string& name, const SchmidtSpectrum& s) {
  const auto target = target_state(s);
  const auto single = [&](StrategyId id, HermitianOperator op) {
    return Strategy(id, {{1.0, std::move(op)}}, target);
  };
  if (name == "mub") return omega_mub(s);
  if (name == "opt") {
    detail::require(s.is_uniform(), "strategy 'opt' needs a maximally entangled target");
    return detail::is_prime(s.dim()) ? two_design_strategy(s.dim()) : single(StrategyId::Opt, omega_opt(s.dim()));
  }
  if (name == "seph") return single(StrategyId::SepH, omega_sep_h(s));
  if (name == "lch") return single(StrategyId::LcH, omega_lc_h(s));
  if (name == "global") return single(StrategyId::Global, HermitianOperator::projector(target.vector()));
  throw InvalidArgument("unknown strategy '" + name + "' (opt, mub, seph, lch, global)");
}

int run_simulate(const SimulateArgs& a, const Globals& g) {
  const auto s = a.target.resolve();
  const auto adv = adversary(a.r, a.E);
  const auto plan_strategy = parse_plan_strategy(a.strategy);
  if (!plan_strategy) throw InvalidArgument("unknown strategy '" + a.strategy + "'");
  const auto strategy = simulation_strategy(a.strategy, s);
  const double P = separation_probability(s, adv, *plan_strategy);
  const int n = a.n ? *a.n : tests_required(P, a.delta);
  detail::require(n >= 1, "n must be >= 1");
  const auto sigma = adversarial_state(s, a.r, adv.effective_E()).density();
  const auto trace = simulate_protocol(strategy, sigma, n, g.seed, "adversarial_state(r=" + std::to_string(a.r) + ")");

  auto out = open_output(a.out);
  CsvWriter csv(out, output_header(g.command_line, g.seed), {"round", "outcome"});
  for (int i = 0; i < n; ++i)
    csv.row({std::int64_t{i + 1}, std::int64_t{trace.outcomes[static_cast<std::size_t>(i)]}});
  out.close();

  Json j{{"strategy", to_string(trace.strategy_id)},
         {"true_state", trace.true_state},
         {"n_tests", trace.n_tests},
         {"passes", trace.passes()},
         {"pass_rate", static_cast<double>(trace.passes()) / n},
         {"expected_pass_rate", pass_prob(strategy.op(), sigma)},
         {"separation_probability", P},
         {"seed", trace.seed},
         {"csv", a.out}};
  if (a.traces > 0)
    j["all_pass_frequency"] = all_pass_frequency(strategy, sigma, n, a.traces, g.seed + 1, g.threads);
  write_json(j);
  return kExitOk;
}

// ---------------------------------------------------------------------- oracle

struct OracleArgs {
  TargetArgs target;
  std::optional<double> theta;
  std::optional<double> p;
  std::string op = "seph";
  std::string op_file;
  std::vector<int> dims;
  std::string set = "rank";
  int r = 1;
  std::optional<double> E;
  int restarts = 32;
  int max_iterations = 2000;
  double tol = 1e-13;
};

HermitianOperator oracle_operator(const OracleArgs& a, Dims& dims) {
  if (!a.op_file.empty()) {
    std::ifstream in(a.op_file, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + a.op_file);
    auto op = fs::path(a.op_file).extension() == ".json" ? operator_from_json(Json::parse(in, nullptr, true))
                                                          : read_operator_binary(in);
    if (a.dims.size() == 2) {
      dims = {a.dims[0], a.dims[1]};
    } else {
      const int d = static_cast<int>(std::lround(std::sqrt(op.dim())));
      detail::require(d * d == op.dim(), "operator dimension is not a square; pass --dims a,b");
      dims = {d, d};
    }
    return op;
  }
  if (a.theta) {
    dims = {2, 2};
    if (a.op == "family") return tq::omega_family(*a.theta, a.p ? *a.p : tq::p_star(*a.theta));
    if (a.op == "wh") {
      const double p = a.p ? *a.p : 1.0;
      const auto [eta, pp] = tq::wang_hayashi_parameters(*a.theta, p);
      return tq::wang_hayashi(*a.theta, eta, pp).op();
    }
    throw InvalidArgument("with --theta the operator must be 'family' or 'wh'");
  }
  const auto s = a.target.resolve();
  dims = {s.dim(), s.dim()};
  if (a.op == "opt") {
    detail::require(s.is_uniform(), "operator 'opt' needs a maximally entangled target");
    return omega_opt(s.dim());
  }
  if (a.op == "mub") return omega_mub(s).op();
  if (a.op == "sep") return omega_sep(s);
  if (a.op == "seph") return omega_sep_h(s);
  if (a.op == "lch") return omega_lc_h(s);
  if (a.op == "global") return HermitianOperator::projector(target_state(s).vector());
  throw InvalidArgument("unknown operator '" + a.op + "' (opt, mub, sep, seph, lch, global, family, wh)");
}

int run_oracle(const OracleArgs& a, const Globals& g) {
  Dims dims;
  const auto op = oracle_operator(a, dims);
  OracleConfig cfg;
  cfg.restarts = a.restarts;
  cfg.max_iterations = a.max_iterations;
  cfg.convergence_tol = a.tol;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  OracleResult res = [&] {
    if (a.set == "product") return max_product(op, dims, cfg);
    if (a.set == "rank") return max_rank_r(op, dims, a.r, cfg);
    if (a.set == "limited") {
      if (!a.E) throw InvalidArgument("--set limited needs --E");
      return max_limited(op, dims, a.r, *a.E, cfg);
    }
    throw InvalidArgument("unknown set '" + a.set + "' (product, rank, limited)");
  }();
  Json j = to_json(res);
  j["set"] = a.set;
  j["dims"] = {dims.a, dims.b};
  write_json(j);
  return kExitOk;
}

// ---------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string level = "fast";
  bool inject_fault = false;
};

int run_verify(const VerifyArgs& a, const Globals& g) {
  SelfCheckOptions opt;
  if (a.level == "fast") {
    opt.level = CheckLevel::Fast;
  } else if (a.level == "full") {
    opt.level = CheckLevel::Full;
  } else {
    throw InvalidArgument("level must be fast or full");
  }
  opt.seed = g.seed;
  opt.threads = g.threads;
  opt.inject_fault = a.inject_fault;
  bool ok = true;
  Json checks = Json::array();
  for (const auto& c : run_self_checks(opt)) {
    ok = ok && c.passed;
    checks.push_back(to_json(c));
  }
  write_json({{"level", a.level}, {"seed", g.seed}, {"passed", ok}, {"checks", checks}});
  return ok ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(i ? argv[i] : "hdecert");

  CLI::App app{"Planning and validation of Schmidt-number certification protocols"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "random seed (default: $HDECERT_SEED or 20240601)");
  app.add_option("--threads", g.threads, "worker threads for Monte Carlo and oracle restarts (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "separation probability and number of tests");
  plan_cmd->fallthrough();
  plan.target.attach(plan_cmd);
  plan_cmd->add_option("--r", plan.r, "adversary Schmidt rank bound")->required();
  plan_cmd->add_option("--E", plan.E, "E_r budget of the adversary (omit for the Schmidt-rank set)");
  plan_cmd->add_option("--delta", plan.delta, "significance level")->check(CLI::Range(0.0, 1.0));
  plan_cmd->add_option("--strategy", plan.strategy, "opt, mub, seph, lch or global");

  BoundsArgs bnd;
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form separation probability bounds");
  bounds_cmd->fallthrough();
  bnd.target.attach(bounds_cmd);
  bounds_cmd->add_option("--r", bnd.r, "adversary Schmidt rank bound")->required();
  bounds_cmd->add_option("--E", bnd.E, "E_r budget of the adversary");

  TwoQubitArgs tqa;
  auto* tq_cmd = app.add_subcommand("twoqubit", "two-qubit strategy family and thresholds");
  tq_cmd->fallthrough();
  tq_cmd->add_option("--theta", tqa.theta, "target angle in (0, pi/4]");
  tq_cmd->add_option("--p", tqa.p, "family parameter in [0, 1]");
  tq_cmd->add_flag("--thresholds", tqa.thresholds, "print the threshold angles");

  FigArgs fig;
  auto* fig_cmd = app.add_subcommand("fig", "write figure data as CSV");
  fig_cmd->fallthrough();
  fig_cmd->add_option("name", fig.name, "fig1, fig2, fig3, fig4 or fig5")->required();
  fig_cmd->add_option("--out", fig.out_dir, "output directory");
  fig_cmd->add_option("--delta", fig.delta, "significance level (decimal or fraction)");
  fig_cmd->add_option("--samples", fig.samples, "Haar samples per dimension (fig3, fig4)");
  fig_cmd->add_option("--points", fig.points, "grid points (fig1: per E range, fig5: theta grid)");
  fig_cmd->add_option("--d", fig.dims, "dimension(s)")->delimiter(',');
  fig_cmd->add_option("--dmax", fig.d_max, "largest dimension (fig2)")->check(CLI::Range(2, 100000));

  auto* mc_cmd = app.add_subcommand("montecarlo", "Haar ensembles and protocol simulation");
  mc_cmd->fallthrough();
  mc_cmd->require_subcommand(1);
  EnsembleArgs ens;
  auto* ens_cmd = mc_cmd->add_subcommand("ensemble", "ensemble means and outlier mass");
  ens_cmd->fallthrough();
  ens_cmd->add_option("--d", ens.d, "local dimension")->check(CLI::Range(2, 4096));
  ens_cmd->add_option("--r", ens.rs, "rank bounds, comma separated")->delimiter(',');
  ens_cmd->add_option("--samples", ens.samples, "Haar samples");
  ens_cmd->add_flag("--histograms", ens.histograms);
  TailArgs tail;
  auto* tail_cmd = mc_cmd->add_subcommand("tail", "empirical tail fractions against the concentration bound");
  tail_cmd->fallthrough();
  tail_cmd->add_option("--d", tail.d, "local dimension")->check(CLI::Range(2, 4096));
  tail_cmd->add_option("--r", tail.r, "adversary Schmidt rank bound");
  tail_cmd->add_option("--eps", tail.eps, "offsets above the bracket, comma separated")->delimiter(',');
  tail_cmd->add_option("--samples", tail.samples, "Haar samples");
  SimulateArgs sim;
  auto* sim_cmd = mc_cmd->add_subcommand("simulate", "simulate the test protocol on the adversarial state");
  sim_cmd->fallthrough();
  sim.target.attach(sim_cmd);
  sim_cmd->add_option("--r", sim.r, "adversary Schmidt rank bound")->required();
  sim_cmd->add_option("--E", sim.E, "E_r budget of the adversary");
  sim_cmd->add_option("--strategy", sim.strategy, "opt, mub, seph, lch or global");
  sim_cmd->add_option("--n", sim.n, "number of tests (default: tests_required(P, delta))");
  sim_cmd->add_option("--delta", sim.delta, "significance level")->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--traces", sim.traces, "also estimate the all-pass frequency over this many traces");
  sim_cmd->add_option("--out", sim.out, "CSV path for the trace");

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "seesaw maximization of tr(Omega sigma)");
  oracle_cmd->fallthrough();
  orc.target.attach(oracle_cmd);
  oracle_cmd->add_option("--theta", orc.theta, "two-qubit target angle");
  oracle_cmd->add_option("--p", orc.p, "family parameter (with --theta)");
  oracle_cmd->add_option("--operator", orc.op, "opt, mub, sep, seph, lch, global, family or wh");
  oracle_cmd->add_option("--op-file", orc.op_file, "operator as JSON (.json) or raw float64 pairs");
  oracle_cmd->add_option("--dims", orc.dims, "local dimensions a,b for --op-file")->delimiter(',');
  oracle_cmd->add_option("--set", orc.set, "product, rank or limited");
  oracle_cmd->add_option("--r", orc.r, "Schmidt rank bound (rank, limited)");
  oracle_cmd->add_option("--E", orc.E, "E_r budget (limited)");
  oracle_cmd->add_option("--restarts", orc.restarts, "random restarts")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-iterations", orc.max_iterations, "iterations per restart")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--tol", orc.tol, "stop when one sweep gains less than this")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "oracle-versus-closed-form self checks");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--level", ver.level, "fast or full");
  verify_cmd->add_flag("--inject-fault", ver.inject_fault, "negative control: corrupt one operator")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    g.seed = seed ? *seed : env_seed();
    if (*plan_cmd) return run_plan(plan);
    if (*bounds_cmd) return run_bounds(bnd);
    if (*tq_cmd) return run_twoqubit(tqa);
    if (*fig_cmd) return run_fig(fig, g);
    if (*ens_cmd) return run_ensemble(ens, g);
    if (*tail_cmd) return run_tail(tail, g);
    if (*sim_cmd) return run_simulate(sim, g);
    if (*oracle_cmd) return run_oracle(orc, g);
    if (*verify_cmd) return run_verify(ver, g);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitCheck;
  }
  return kExitUsage;
}
