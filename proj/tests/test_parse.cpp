// Copyright 2026 The Valmod Authors
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

#include "valmod/parse.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <string>

#include "support/schema_check.hpp"
#include "support/testgen.hpp"
#include "valmod/serialize.hpp"

using namespace valmod;
using Catch::Matchers::ContainsSubstring;

namespace {

const GroundConfig kF2 = GroundConfig::make(2, 1);
const GroundConfig kF3 = GroundConfig::make(3, 1);
const GroundConfig kF4 = GroundConfig::make(2, 2);

const std::string kSchemaDir = VALMOD_SCHEMA_DIR;

HahnSeries umono(const GroundConfig& cfg, const Rat& g) {
  return HahnSeries::monomial(cfg, FieldElem::one(cfg), g);
}

}  // namespace

TEST_CASE("documented text forms parse to the printed values") {
  HahnSeries s = parse_series_text(kF2, "1*u^(1/2) + 1*u^(3/4)");
  CHECK(hs_to_string(s) == "u^(1/2) + u^(3/4)");
  CHECK(s.valuation() == ChainValue::finite(Rat(1, 2)));
  CHECK(s.is_exact());

  CHECK(parse_series_text(kF2, "0").is_zero());
  CHECK(parse_series_text(kF2, "u").terms.size() == 1);
  CHECK(hs_to_string(parse_series_text(kF4, "(w+1)*u^2 + u")) == "u + (w+1)*u^2");
  CHECK(hs_to_string(parse_series_text(kF3, "2*u^2")) == "2*u^2");
  CHECK(hs_to_string(parse_series_text(kF2, "u^(-2) + 1")) == "u^(-2) + 1");

  OrePoly tu = OrePoly::from_coeffs(kF2, {umono(kF2, Rat(1)), HahnSeries::one(kF2)});
  OrePoly sq = ore_mul(tu, tu);
  CHECK(ore_equal(parse_ore_text(kF2, "t^2 + t*(u + u^2) + u^2"), sq));
  CHECK(ore_equal(parse_ore_text(kF2, "t + u"), tu));
  CHECK(parse_ore_text(kF2, "t").degree() == 1);
  CHECK(parse_ore_text(kF2, "0").is_zero());
  CHECK(ore_to_string(parse_ore_text(kF2, "1 + u")) == "(1 + u)");
  CHECK(ore_to_string(parse_ore_text(kF2, "t*u")) == "t*u");
  CHECK(ore_to_string(parse_ore_text(kF2, "u^2 + t*u + t^2")) == "t^2 + t*u + u^2");

  TropPoly trop = parse_trop_text("{(2,0),(1,1),(0,3)}");
  CHECK(trop.lines == TropPoly::of({{2, Rat(0)}, {1, Rat(1)}, {0, Rat(3)}}).lines);
  CHECK(trop_to_string(trop) == "{(2,0),(1,1),(0,3)}");
  CHECK(parse_trop_text("{(1,-1/2)}").lines.at(1) == Rat(-1, 2));
  CHECK(parse_trop_text("{}").lines.empty());

  CHECK(parse_chain_value("inf") == ChainValue::infinity());
  CHECK(parse_chain_value("3/4") == ChainValue::finite(Rat(3, 4)));
  CHECK(parse_chain_value("-2") == ChainValue::finite(Rat(-2)));
  CHECK(parse_rational("-7/3") == Rat(-7, 3));
}

TEST_CASE("series text round-trips through the canonical printer") {
  std::mt19937_64 rng(101);
  for (const GroundConfig& cfg : {kF2, kF3, kF4}) {
    for (int i = 0; i < 200; ++i) {
      HahnSeries x = testgen::random_series(rng, cfg, 4);
      HahnSeries back = parse_series_text(cfg, hs_to_string(x));
      CAPTURE(hs_to_string(x));
      REQUIRE(hs_equal(back, x));
    }
  }
  // Tower coefficients print in their own residue basis; parsing recovers the
  // same element as long as the leading coordinate block is in use.
  for (int i = 0; i < 100; ++i) {
    HahnSeries x = testgen::random_series(rng, kF2, 3, 2);
    bool minimal = true;
    for (const auto& [g, c] : x.terms) {
      bool top = false;
      for (int k = c.e * (c.m - 1); k < c.field_degree(); ++k) top = top || c.c[k] != 0;
      minimal = minimal && (top || c.m == 1);
    }
    if (!minimal) continue;
    HahnSeries back = parse_series_text(kF2, hs_to_string(x));
    CAPTURE(hs_to_string(x));
    REQUIRE(hs_equal(back, x));
  }
}

TEST_CASE("twisted polynomial text round-trips through the canonical printer") {
  std::mt19937_64 rng(202);
  for (const GroundConfig& cfg : {kF2, kF3, kF4}) {
    for (int i = 0; i < 200; ++i) {
      OrePoly r = testgen::random_ore(rng, cfg, 4, 3);
      OrePoly back = parse_ore_text(cfg, ore_to_string(r));
      CAPTURE(ore_to_string(r));
      REQUIRE(ore_equal(back, r));
    }
  }
  for (int i = 0; i < 200; ++i) {
    TropPoly r = testgen::random_trop(rng, 5);
    CHECK(parse_trop_text(trop_to_string(r)).lines == r.lines);
  }
}

TEST_CASE("parse errors carry character offsets") {
  auto rejects = [](auto fn, const std::string& text) {
    CAPTURE(text);
    CHECK_THROWS_AS(fn(text), std::invalid_argument);
    CHECK_THROWS_WITH(fn(text), ContainsSubstring("offset"));
  };
  auto series = [](const std::string& t) { return parse_series_text(kF2, t); };
  auto ore = [](const std::string& t) { return parse_ore_text(kF2, t); };

  rejects(series, "");
  rejects(series, "u^");
  rejects(series, "x");
  rejects(series, "1*");
  rejects(series, "(w");
  rejects(series, "u^(1/)");
  rejects(series, "u + ");
  rejects(series, "u u");
  rejects(ore, "t^");
  rejects(ore, "t*");
  rejects(ore, "s + 1");
  rejects(ore, "t^2 t");
  rejects(parse_trop_text, "{(1,2)");
  rejects(parse_trop_text, "{(1,2),(1,3)}");
  rejects(parse_trop_text, "{(-1,0)}");
  rejects(parse_trop_text, "(1,2)");
  rejects(parse_chain_value, "");
  rejects(parse_chain_value, "3/");
  rejects(parse_chain_value, "infx");
  rejects(parse_chain_value, "1/0");

  try {
    parse_series_text(kF2, "u + x");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK_THAT(e.what(), ContainsSubstring("offset 4"));
  }
}

TEST_CASE("series JSON round-trips and validates against the schema") {
  std::mt19937_64 rng(303);
  for (const GroundConfig& cfg : {kF2, kF3, kF4}) {
    for (int i = 0; i < 100; ++i) {
      HahnSeries x = testgen::random_series(rng, cfg, 4, 1 + static_cast<int>(rng() % 2));
      if (rng() % 2) x = hs_truncate(x, Rat(3));
      Json j = series_to_json(x);
      REQUIRE(valmod_tests::validate_against(kSchemaDir, "series.schema.json", j).empty());
      HahnSeries back = series_from_json(cfg, j);
      REQUIRE(hs_equal(back, x));
    }
  }
  Json zero = series_to_json(HahnSeries::zero(kF2));
  CHECK(zero.at("terms").empty());
  CHECK(zero.at("prec").is_null());
}

TEST_CASE("report serializers validate against the shipped schemas") {
  OrePoly tu = OrePoly::from_coeffs(kF2, {umono(kF2, Rat(1)), HahnSeries::one(kF2)});
  OrePoly sq = ore_mul(tu, tu);
  TropPoly trop = tropicalize(sq);

  CHECK(valmod_tests::validate_against(kSchemaDir, "trop.schema.json",
                                       trop_to_json(trop)).empty());
  CHECK(valmod_tests::validate_against(kSchemaDir, "envelope.schema.json",
                                       envelope_to_json(envelope(trop, 2))).empty());
  CHECK(valmod_tests::validate_against(kSchemaDir, "jumps.schema.json",
                                       jumps_to_json(potential_jumps(trop, 2))).empty());
  CHECK(valmod_tests::validate_against(kSchemaDir, "value.schema.json",
                                       Json{{"value", chain_eval(ChainValue::finite(Rat(1)),
                                                                 trop, 2).to_string()}})
            .empty());

  auto [y, trace] = solve_regular(tu, umono(kF2, Rat(1)), Rat(3, 2), 16);
  Json sj = solve_to_json(y, trace);
  CHECK(valmod_tests::validate_against(kSchemaDir, "solve.schema.json", sj).empty());
  CHECK(sj.at("status") == "precision_reached");

  OrePoly t1 = parse_ore_text(kF2, "t + 1");
  Json kj = kernel_to_json(kernel_basis(t1, Rat(2), 16));
  CHECK(valmod_tests::validate_against(kSchemaDir, "kernel.schema.json", kj).empty());
  CHECK(kj.at("total_count") == "2");

  HahnSeries x = hs_add(HahnSeries::one(kF2), umono(kF2, Rat(1)));
  Json dj = decomposition_to_json(regular_decomposition(x, t1, Rat(2)));
  CHECK(valmod_tests::validate_against(kSchemaDir, "decompose.schema.json", dj).empty());

  Json rj = regularity_to_json(regularity(umono(kF2, Rat(1)), t1));
  CHECK(valmod_tests::validate_against(kSchemaDir, "regular.schema.json", rj).empty());
  CHECK(rj.at("regular") == true);
}

TEST_CASE("formula JSON captures the syntax tree and validates") {
  const char* texts[] = {
      "E x. x.{(1,0)} < 0 & x.{(0,1)} > 0",
      "A x. x.{(1,0)} > x.{(0,0)}",
      "x.{(2,0),(1,1),(0,3)}.{(1,0)}^-1 <= inf",
      "!(a < b) | a != 3/2",
      "true & (E y. y = inf)",
  };
  for (const char* text : texts) {
    FormulaPtr f = parse_formula(text);
    Json j = {{"text", formula_to_string(f)}, {"ast", formula_to_json(f)}};
    CAPTURE(text);
    std::string err =
        valmod_tests::validate_against(kSchemaDir, "logic_formula.schema.json", j);
    CHECK(err.empty());
    // The rendered text reparses to the same tree.
    CHECK(formula_equal(parse_formula(formula_to_string(f)), f));
  }
  Json d = {{"result", true}};
  CHECK(valmod_tests::validate_against(kSchemaDir, "logic_decide.schema.json", d).empty());
}
