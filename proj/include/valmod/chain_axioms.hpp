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

#ifndef VALMOD_CHAIN_AXIOMS_HPP_
#define VALMOD_CHAIN_AXIOMS_HPP_

#include <random>
#include <string>

#include "valmod/chain.hpp"
#include "valmod/ore_poly.hpp"

namespace valmod {

// Monomial-coefficient lift t^i u^(c_i); tropicalizes back to the input.
inline OrePoly lift_trop(const GroundConfig& cfg, const TropPoly& r) {
  OrePoly out = OrePoly::zero(cfg);
  for (const auto& [i, c] : r.lines)
    out = ore_add(out, OrePoly::monomial(cfg, i, HahnSeries::monomial(cfg, FieldElem::one(cfg), c)));
  return out;
}

struct ChainAxiomReport {
  bool ok = true;
  long long checks = 0;
  std::string first_violation;

  void fail(const std::string& msg) {
    if (ok) {
      ok = false;
      first_violation = msg;
    }
  }
};

// Exercises the chain axioms on random sample points: strict monotonicity,
// composition through an actual ring product, the min-inequality for sums
// (with honest cancellation), breakpoint separation, inverse round-trips
// and the fullness of the t-action.
inline ChainAxiomReport check_chain_axioms(const GroundConfig& cfg, const TropPoly& r,
                                           const TropPoly& s, int samples,
                                           std::uint64_t seed = 0x5eed) {
  check_nonempty(r);
  check_nonempty(s);
  ChainAxiomReport rep;
  std::mt19937_64 rng(seed);
  auto rand_rat = [&rng]() {
    std::int64_t num = static_cast<std::int64_t>(rng() % 41) - 20;
    std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 8);
    return Rat(num, den);
  };
  const std::int64_t q = cfg.q;
  OrePoly lr = lift_trop(cfg, r), ls = lift_trop(cfg, s);
  TropPoly rs = tropicalize(ore_mul(lr, ls));
  OrePoly sum = ore_add(lr, ls);

  for (int it = 0; it < samples && rep.ok; ++it) {
    Rat g1 = rand_rat(), g2 = rand_rat();
    ChainValue a = ChainValue::finite(g1), b = ChainValue::finite(g2);

    // Strict monotonicity.
    if (g1 != g2) {
      ChainValue lo = g1 < g2 ? a : b, hi = g1 < g2 ? b : a;
      if (!(chain_eval(lo, r, q) < chain_eval(hi, r, q)))
        rep.fail("monotonicity failed for r at gamma=" + rat_to_string(lo.v) + " vs " +
                 rat_to_string(hi.v));
      ++rep.checks;
    }

    // Composition (gamma . r) . s = gamma . (rs).
    ChainValue lhs = chain_eval(chain_eval(a, r, q), s, q);
    ChainValue rhs = chain_eval(a, rs, q);
    if (!(lhs == rhs))
      rep.fail("composition failed at gamma=" + rat_to_string(g1) + ": got " + lhs.to_string() +
               " vs " + rhs.to_string());
    ++rep.checks;

    // gamma . (r + s) >= min(gamma . r, gamma . s), with equality unless the
    // sum cancels monomials.
    ChainValue mn = ext_min(chain_eval(a, r, q), chain_eval(a, s, q));
    ChainValue sv = sum.is_zero() ? ChainValue::infinity() : chain_eval(a, tropicalize(sum), q);
    if (sv < mn)
      rep.fail("min-inequality failed at gamma=" + rat_to_string(g1));
    ++rep.checks;

    // Inverse round-trip.
    ChainValue back = chain_inverse(chain_eval(a, r, q), r, q);
    if (!(back == a))
      rep.fail("inverse round-trip failed at gamma=" + rat_to_string(g1));
    ++rep.checks;

    // Fullness of the t-action: gamma = delta / q solves gamma . t = delta.
    Rat delta = rand_rat();
    TropPoly tpoly = TropPoly::of({{1, Rat(0)}});
    if (!(chain_eval(ChainValue::finite(delta / q), tpoly, q) == ChainValue::finite(delta)))
      rep.fail("fullness probe failed at delta=" + rat_to_string(delta));
    ++rep.checks;
  }

  // Breakpoint separation: left of a jump, the steeper achieving line is
  // strictly below the flatter one.
  for (const TropPoly* poly : {&r, &s}) {
    for (const Jump& j : potential_jumps(*poly, q).jumps) {
      for (int step = 1; step <= 3 && rep.ok; ++step) {
        Rat d = j.gamma - Rat(step, 2);
        Rat hi_line = rat_pow(Rat(q), j.deg_hi) * d + poly->lines.at(j.deg_hi);
        Rat lo_line = rat_pow(Rat(q), j.deg_lo) * d + poly->lines.at(j.deg_lo);
        if (!(hi_line < lo_line))
          rep.fail("breakpoint separation failed left of gamma=" + rat_to_string(j.gamma));
        ++rep.checks;
      }
    }
  }
  return rep;
}

}  // namespace valmod

#endif  // VALMOD_CHAIN_AXIOMS_HPP_
