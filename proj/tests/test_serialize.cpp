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

#include <random>
#include <sstream>

#include "hdecert/serialize.hpp"
#include "hdecert/twoqubit.hpp"
#include "support/oracles.hpp"

using namespace hdecert;

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0 / 3.0) == "0.6666666666666666");
  CHECK(format_double(1.0) == "1");
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("spectrum and state JSON") {
  const SchmidtSpectrum s({0.5, 0.3, 0.2});
  const auto back = spectrum_from_json(Json::parse(to_json(s).dump()));
  for (int j = 0; j < 3; ++j) CHECK(back[j] == s[j]);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse("[0.5, -0.5, 1.0]")), InvalidArgument);
  CHECK_THROWS_AS(spectrum_from_json(Json::parse("{\"a\": 1}")), InvalidArgument);

  std::mt19937_64 rng(1);
  const CVector v = oracles::random_vector(6, rng).normalized();
  const auto psi = PureState::from_vector(v, {2, 3});
  const auto j = to_json(psi);
  CHECK(j.at("d_a") == 2);
  CHECK(j.at("d_b") == 3);
  const auto psi2 = state_from_json(Json::parse(j.dump()));
  CHECK((psi2.coeffs() - psi.coeffs()).norm() == 0.0);
}

TEST_CASE("operator JSON and binary formats") {
  const auto op = twoqubit::omega_family(0.6, 0.3);
  const auto j = operator_from_json(Json::parse(to_json(op).dump()));
  CHECK((j.matrix() - op.matrix()).norm() == 0.0);

  std::stringstream buf;
  write_operator_binary(buf, op);
  CHECK(buf.str().size() == 16 * 16);
  const auto b = read_operator_binary(buf);
  CHECK((b.matrix() - op.matrix()).norm() == 0.0);
  // first value is Re Omega(0, 0), little endian
  const double first = op.matrix()(0, 0).real();
  const auto bits = std::bit_cast<std::uint64_t>(first);
  CHECK(static_cast<unsigned char>(buf.str()[0]) == (bits & 0xffu));

  std::stringstream bad(std::string(24, '\0'));
  CHECK_THROWS_AS(read_operator_binary(bad), InvalidArgument);
  std::stringstream partial(std::string(20, '\0'));
  CHECK_THROWS_AS(read_operator_binary(partial), InvalidArgument);
}

TEST_CASE("strategy JSON") {
  const auto wh = twoqubit::wang_hayashi(0.6, 1 - std::tan(0.6), 0.2);
  const auto back = strategy_from_json(Json::parse(to_json(wh).dump()));
  CHECK(back.id() == StrategyId::WangHayashi);
  CHECK(back.tests().size() == wh.tests().size());
  CHECK((back.op().matrix() - wh.op().matrix()).norm() < 1e-15);
  auto broken = to_json(wh);
  broken["id"] = "nonsense";
  CHECK_THROWS_AS(strategy_from_json(broken), InvalidArgument);
  CHECK(parse_strategy_id("two_design") == StrategyId::TwoDesign);
}

TEST_CASE("plan JSON") {
  const auto plan = make_plan(SchmidtSpectrum({0.5, 0.3, 0.2}), AdversarySet::limited(1, 0.1), 0.01, PlanStrategy::Mub);
  const auto j = Json::parse(to_json(plan).dump());
  CHECK(j.at("adversary").at("kind") == "limited_er");
  CHECK(j.at("strategy") == "mub");
  const auto back = plan_from_json(j);
  CHECK(back.separation_probability == plan.separation_probability);
  CHECK(back.tests_required == plan.tests_required);
  CHECK(back.adversary.E == 0.1);
  CHECK(adversary_from_json(to_json(AdversarySet::rank(2))).kind == AdversarySet::Kind::SchmidtRank);
}

TEST_CASE("CSV writer and header") {
  std::ostringstream out;
  CsvWriter csv(out, output_header("hdecert fig fig1", 7), {"d", "P", "name"});
  csv.row({std::int64_t{3}, 0.5, std::string("opt")});
  CHECK(out.str() == std::string("# hdecert ") + kVersion + " | cmd: hdecert fig fig1 | seed: 7\nd,P,name\n3,0.5,opt\n");
  CHECK_THROWS_AS(csv.row({0.1}), InvalidArgument);
}
