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

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hdecert/core.hpp"
#include "hdecert/operators.hpp"
#include "hdecert/oracle.hpp"
#include "hdecert/separation.hpp"
#include "hdecert/spectra.hpp"

// JSON schemas, the raw binary operator format and the CSV writer.
namespace hdecert {

using Json = nlohmann::json;

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

inline std::optional<StrategyId> parse_strategy_id(const std::string& name) {
  for (auto id : {StrategyId::Global, StrategyId::Opt, StrategyId::Mub, StrategyId::Sep, StrategyId::SepH,
                  StrategyId::LcH, StrategyId::TwoDesign, StrategyId::Family, StrategyId::WangHayashi})
    if (to_string(id) == name) return id;
  return std::nullopt;
}

namespace detail {

inline Json matrix_part(const CMatrix& m, bool imag) {
  Json arr = Json::array();
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) arr.push_back(imag ? m(j, k).imag() : m(j, k).real());
  return arr;
}

inline CMatrix matrix_from_parts(const Json& re, const Json& im, int rows, int cols) {
  require(re.is_array() && im.is_array(), "json: re/im must be arrays");
  require(re.size() == static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) && im.size() == re.size(),
          "json: re/im size does not match the dimensions");
  CMatrix m(rows, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) {
      const auto i = static_cast<std::size_t>(j) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(k);
      m(j, k) = Complex(re[i].get<double>(), im[i].get<double>());
    }
  return m;
}

template <class F>
auto parse_json(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const SchmidtSpectrum& s) { return Json(std::vector<double>(s.values().begin(), s.values().end())); }

inline SchmidtSpectrum spectrum_from_json(const Json& j) {
  return detail::parse_json("spectrum", [&] { return SchmidtSpectrum(j.get<std::vector<double>>()); });
}

inline Json to_json(const PureState& s) {
  return {{"d_a", s.d_a()}, {"d_b", s.d_b()}, {"re", detail::matrix_part(s.coeffs(), false)},
          {"im", detail::matrix_part(s.coeffs(), true)}};
}

inline PureState state_from_json(const Json& j) {
  return detail::parse_json("state", [&] {
    const int a = j.at("d_a").get<int>(), b = j.at("d_b").get<int>();
    detail::require(a >= 1 && b >= 1, "state: dimensions must be positive");
    return PureState(detail::matrix_from_parts(j.at("re"), j.at("im"), a, b));
  });
}

inline Json to_json(const HermitianOperator& op) {
  return {{"dim", op.dim()}, {"re", detail::matrix_part(op.matrix(), false)},
          {"im", detail::matrix_part(op.matrix(), true)}};
}

inline HermitianOperator operator_from_json(const Json& j) {
  return detail::parse_json("operator", [&] {
    const int dim = j.at("dim").get<int>();
    detail::require(dim >= 1, "operator: dim must be positive");
    return HermitianOperator(detail::matrix_from_parts(j.at("re"), j.at("im"), dim, dim));
  });
}

/// Raw format: little-endian float64 (re, im) pairs, row-major; the
/// dimension is the square root of the entry count.
inline void write_operator_binary(std::ostream& out, const HermitianOperator& op) {
  const auto put = [&](double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    std::array<char, 8> bytes{};
    for (auto& c : bytes) {
      c = static_cast<char>(bits & 0xffu);
      bits >>= 8;
    }
    out.write(bytes.data(), bytes.size());
  };
  for (int j = 0; j < op.dim(); ++j)
    for (int k = 0; k < op.dim(); ++k) {
      put(op.matrix()(j, k).real());
      put(op.matrix()(j, k).imag());
    }
  if (!out) throw Error("write_operator_binary: stream failure");
}

inline HermitianOperator read_operator_binary(std::istream& in) {
  std::vector<double> values;
  std::array<char, 8> bytes{};
  while (in.read(bytes.data(), bytes.size())) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(bytes[static_cast<std::size_t>(i)]);
    values.push_back(std::bit_cast<double>(bits));
  }
  detail::require(in.gcount() == 0, "read_operator_binary: trailing partial value");
  detail::require(values.size() % 2 == 0 && !values.empty(), "read_operator_binary: odd or empty payload");
  const auto entries = values.size() / 2;
  const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries))));
  detail::require(dim * dim == entries, "read_operator_binary: entry count is not a square");
  CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < entries; ++i)
    m(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) = Complex(values[2 * i], values[2 * i + 1]);
  return HermitianOperator(std::move(m));
}

inline Json to_json(const Strategy& s) {
  Json tests = Json::array();
  for (const auto& t : s.tests()) tests.push_back({{"weight", t.weight}, {"operator", to_json(t.op)}});
  return {{"id", to_string(s.id())}, {"target", to_json(s.target())}, {"tests", tests}};
}

inline Strategy strategy_from_json(const Json& j) {
  return detail::parse_json("strategy", [&] {
    const auto id = parse_strategy_id(j.at("id").get<std::string>());
    detail::require(id.has_value(), "strategy: unknown id");
    std::vector<WeightedTest> tests;
    for (const auto& t : j.at("tests")) tests.push_back({t.at("weight").get<double>(), operator_from_json(t.at("operator"))});
    return Strategy(*id, std::move(tests), state_from_json(j.at("target")));
  });
}

inline Json to_json(const AdversarySet& a) {
  return {{"kind", to_string(a.kind)}, {"r", a.r}, {"E", a.E}};
}

inline AdversarySet adversary_from_json(const Json& j) {
  return detail::parse_json("adversary", [&] {
    const auto kind = j.at("kind").get<std::string>();
    const int r = j.at("r").get<int>();
    if (kind == to_string(AdversarySet::Kind::SchmidtRank)) return AdversarySet::rank(r);
    detail::require(kind == to_string(AdversarySet::Kind::LimitedEr), "adversary: unknown kind");
    return AdversarySet::limited(r, j.at("E").get<double>());
  });
}

inline Json to_json(const CertificationPlan& p) {
  return {{"spectrum", to_json(p.spectrum)},
          {"adversary", to_json(p.adversary)},
          {"delta", p.delta},
          {"strategy", to_string(p.strategy)},
          {"separation_probability", p.separation_probability},
          {"tests_required", p.tests_required}};
}

inline CertificationPlan plan_from_json(const Json& j) {
  return detail::parse_json("plan", [&] {
    const auto strategy = parse_plan_strategy(j.at("strategy").get<std::string>());
    detail::require(strategy.has_value(), "plan: unknown strategy");
    return CertificationPlan{spectrum_from_json(j.at("spectrum")),
                             adversary_from_json(j.at("adversary")),
                             j.at("delta").get<double>(),
                             *strategy,
                             j.at("separation_probability").get<double>(),
                             j.at("tests_required").get<int>()};
  });
}

inline Json to_json(const OracleResult& r) {
  return {{"value", r.value},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"witness_spectrum", to_json(schmidt_spectrum(r.witness))}};
}

/// "# hdecert <version> | cmd: <command line> | seed: <seed>"
inline std::string output_header(std::string_view command_line, std::uint64_t seed) {
  return std::string("# hdecert ") + kVersion + " | cmd: " + std::string(command_line) + " | seed: " +
         std::to_string(seed);
}

/// CSV with a provenance comment line, a column header and shortest
/// round-trip numbers.
class CsvWriter {
 public:
  using Cell = std::variant<double, std::int64_t, std::string>;

  CsvWriter(std::ostream& out, std::string_view header, const std::vector<std::string>& columns)
      : out_(out), width_(columns.size()) {
    out_ << header << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  void row(const std::vector<Cell>& cells) {
    detail::require(cells.size() == width_, "CsvWriter: row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out_ << format_double(v);
            else
              out_ << v;
          },
          cells[i]);
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace hdecert
