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

#include "valmod/chain.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "valmod/chain_axioms.hpp"
#include "support/testgen.hpp"

using namespace valmod;

namespace {

const TropPoly kExample = TropPoly::of({{2, Rat(0)}, {1, Rat(1)}, {0, Rat(3)}});

ChainValue cv(const Rat& r) { return ChainValue::finite(r); }

}  // namespace

TEST_CASE("chain evaluation takes the minimum line") {
  CHECK(chain_eval(cv(Rat(0)), kExample, 2) == cv(Rat(0)));
  CHECK(chain_eval(cv(Rat(1, 2)), kExample, 2) == cv(Rat(2)));
  CHECK(chain_eval(ChainValue::infinity(), kExample, 2) == ChainValue::infinity());
}

TEST_CASE("envelope of the three-line example") {
  EnvelopeProfile env = envelope(kExample, 2);
  REQUIRE(env.pieces.size() == 3);
  CHECK(env.pieces[0].degree == 2);
  CHECK_FALSE(env.pieces[0].lo.has_value());
  CHECK(*env.pieces[0].hi == Rat(1, 2));
  CHECK(env.pieces[1].degree == 1);
  CHECK(*env.pieces[1].lo == Rat(1, 2));
  CHECK(*env.pieces[1].hi == Rat(2));
  CHECK(env.pieces[2].degree == 0);
  CHECK(*env.pieces[2].lo == Rat(2));
  CHECK_FALSE(env.pieces[2].hi.has_value());
}

TEST_CASE("monomial envelope is a single unbounded cell") {
  TropPoly mono = TropPoly::of({{1, Rat(2)}});
  EnvelopeProfile env = envelope(mono, 2);
  REQUIRE(env.pieces.size() == 1);
  CHECK_FALSE(env.pieces[0].lo.has_value());
  CHECK_FALSE(env.pieces[0].hi.has_value());
  CHECK(potential_jumps(mono, 2).jumps.empty());
}

TEST_CASE("two-line envelope breaks where the lines cross") {
  TropPoly r = TropPoly::of({{1, Rat(0)}, {0, Rat(5)}});
  EnvelopeProfile env = envelope(r, 2);
  REQUIRE(env.pieces.size() == 2);
  CHECK(env.pieces[0].degree == 1);
  CHECK(*env.pieces[0].hi == Rat(5));
  CHECK(env.pieces[1].degree == 0);
  CHECK(*env.pieces[1].lo == Rat(5));
}

TEST_CASE("dominated line never appears; concurrent lines give a singleton cell") {
  // All three lines meet at 0; the middle one achieves the min only there.
  TropPoly r = TropPoly::of({{2, Rat(5)}, {1, Rat(5)}, {0, Rat(5)}});
  EnvelopeProfile env = envelope(r, 2);
  REQUIRE(env.pieces.size() == 3);
  CHECK(env.pieces[1].degree == 1);
  CHECK(*env.pieces[1].lo == Rat(0));
  CHECK(*env.pieces[1].hi == Rat(0));
  JumpSet js = potential_jumps(r, 2);
  REQUIRE(js.jumps.size() == 1);
  CHECK(js.jumps[0].gamma == Rat(0));
  CHECK(js.jumps[0].deg_hi == 2);
  CHECK(js.jumps[0].deg_lo == 0);
}

TEST_CASE("potential jumps of the examples") {
  JumpSet js = potential_jumps(kExample, 2);
  REQUIRE(js.jumps.size() == 2);
  CHECK(js.jumps[0].gamma == Rat(1, 2));
  CHECK(js.jumps[1].gamma == Rat(2));

  TropPoly t1 = TropPoly::of({{1, Rat(0)}, {0, Rat(0)}});
  JumpSet js2 = potential_jumps(t1, 2);
  REQUIRE(js2.jumps.size() == 1);
  CHECK(js2.jumps[0].gamma == Rat(0));
}

TEST_CASE("chain inverse") {
  TropPoly r = TropPoly::of({{1, Rat(0)}, {0, Rat(1)}});
  CHECK(chain_inverse(cv(Rat(1)), r, 2) == cv(Rat(1, 2)));
  CHECK(chain_inverse(ChainValue::infinity(), r, 2) == ChainValue::infinity());

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    TropPoly rr = testgen::random_trop(rng);
    Rat g(static_cast<std::int64_t>(rng() % 33) - 16, 1 + static_cast<std::int64_t>(rng() % 5));
    ChainValue image = chain_eval(cv(g), rr, 2);
    CHECK(chain_inverse(image, rr, 2) == cv(g));
  }
}

TEST_CASE("jump count is bounded by the number of monomials") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    TropPoly r = testgen::random_trop(rng, 4);
    JumpSet js = potential_jumps(r, 2);
    CHECK(js.jumps.size() <= r.lines.size() - 1);
    EnvelopeProfile env = envelope(r, 2);
    // Pieces are ordered by strictly decreasing degree and tile the line.
    for (std::size_t k = 1; k < env.pieces.size(); ++k) {
      CHECK(env.pieces[k].degree < env.pieces[k - 1].degree);
      REQUIRE(env.pieces[k].lo.has_value());
      REQUIRE(env.pieces[k - 1].hi.has_value());
      CHECK(*env.pieces[k].lo == *env.pieces[k - 1].hi);
    }
  }
}

TEST_CASE("valuation ring membership") {
  GroundConfig f2 = GroundConfig::make(2, 1);
  HahnSeries one_u =
      hs_add(HahnSeries::one(f2), HahnSeries::monomial(f2, FieldElem::one(f2), Rat(1)));
  CHECK(valuation_ring_member(one_u));
  CHECK_FALSE(valuation_ring_member(HahnSeries::monomial(f2, FieldElem::one(f2), Rat(-1))));
  CHECK(valuation_ring_member(HahnSeries::monomial(f2, FieldElem::one(f2), Rat(1, 3))));
  CHECK_THROWS_AS(valuation_ring_member(HahnSeries::zero(f2)), std::domain_error);
}

TEST_CASE("axiom harness passes on monomials and random pairs") {
  GroundConfig f2 = GroundConfig::make(2, 1);
  TropPoly m1 = TropPoly::of({{1, Rat(0)}});
  TropPoly m2 = TropPoly::of({{2, Rat(-1)}});
  ChainAxiomReport rep = check_chain_axioms(f2, m1, m2, 50);
  INFO(rep.first_violation);
  CHECK(rep.ok);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    TropPoly r = testgen::random_trop(rng);
    TropPoly s = testgen::random_trop(rng);
    ChainAxiomReport rr = check_chain_axioms(f2, r, s, 100, rng());
    INFO(rr.first_violation);
    CHECK(rr.ok);
  }
}

TEST_CASE("jumps are dense under monomial transport") {
  // Seed jumps, then close under gamma -> (q^i gamma + c) / q^j up to depth
  // 3; between any two seed jumps some transported jump appears.
  const std::int64_t q = 2;
  JumpSet seed = potential_jumps(kExample, q);
  REQUIRE(seed.jumps.size() >= 2);
  std::set<Rat> closure;
  for (const auto& j : seed.jumps) closure.insert(j.gamma);
  for (int depth = 0; depth < 3; ++depth) {
    std::set<Rat> next = closure;
    for (const Rat& g : closure) {
      for (int i = 0; i <= 2; ++i) {
        for (int jj = 0; jj <= 2; ++jj) {
          for (int c = 0; c <= 1; ++c) {
            next.insert((rat_pow(Rat(q), i) * g + c) / rat_pow(Rat(q), jj));
          }
        }
      }
    }
    closure = std::move(next);
  }
  for (std::size_t k = 1; k < seed.jumps.size(); ++k) {
    Rat lo = seed.jumps[k - 1].gamma, hi = seed.jumps[k].gamma;
    bool found = std::any_of(closure.begin(), closure.end(),
                             [&](const Rat& s) { return lo < s && s < hi; });
    CHECK(found);
  }
}

TEST_CASE("tropical polynomial printing") {
  CHECK(trop_to_string(kExample) == "{(2,0),(1,1),(0,3)}");
  CHECK(trop_to_string(TropPoly::of({{1, Rat(-1, 2)}})) == "{(1,-1/2)}");
}
