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

#ifndef VALMOD_TESTS_SUPPORT_TESTGEN_HPP_
#define VALMOD_TESTS_SUPPORT_TESTGEN_HPP_

#include <random>
#include <vector>

#include "valmod/chain.hpp"
#include "valmod/hahn_series.hpp"
#include "valmod/ore_poly.hpp"

namespace valmod::testgen {

// Exponent grid used across the random suites: halves between -2 and 3.
inline Rat random_exponent(std::mt19937_64& rng) {
  return Rat(static_cast<std::int64_t>(rng() % 11) - 4, 2);
}

inline FieldElem random_field_elem(std::mt19937_64& rng, const GroundConfig& cfg, int m) {
  std::vector<std::int64_t> c(cfg.e * m);
  for (auto& v : c) v = static_cast<std::int64_t>(rng() % cfg.p);
  return FieldElem::from_coords(cfg, m, std::move(c));
}

inline FieldElem random_nonzero_field_elem(std::mt19937_64& rng, const GroundConfig& cfg, int m) {
  for (;;) {
    FieldElem c = random_field_elem(rng, cfg, m);
    if (!c.is_zero()) return c;
  }
}

// Exact series with 1..max_terms monomials on the half-integer grid.
inline HahnSeries random_series(std::mt19937_64& rng, const GroundConfig& cfg, int max_terms = 3,
                                int tower = 1) {
  HahnSeries s = HahnSeries::zero(cfg);
  int n = 1 + static_cast<int>(rng() % max_terms);
  for (int i = 0; i < n; ++i) {
    s = hs_add(s, HahnSeries::monomial(cfg, random_nonzero_field_elem(rng, cfg, tower),
                                       random_exponent(rng)));
  }
  return s;
}

inline HahnSeries random_nonzero_series(std::mt19937_64& rng, const GroundConfig& cfg,
                                        int max_terms = 3, int tower = 1) {
  for (;;) {
    HahnSeries s = random_series(rng, cfg, max_terms, tower);
    if (!s.is_zero()) return s;
  }
}

// Degree <= max_deg with a nonzero top coefficient; interior gaps allowed.
inline OrePoly random_ore(std::mt19937_64& rng, const GroundConfig& cfg, int max_deg = 3,
                          int max_terms = 2) {
  int deg = static_cast<int>(rng() % (max_deg + 1));
  std::vector<HahnSeries> cs(deg + 1, HahnSeries::zero(cfg));
  for (int i = 0; i < deg; ++i) {
    if (rng() % 3 == 0) continue;
    cs[i] = random_series(rng, cfg, max_terms);
  }
  cs[deg] = random_nonzero_series(rng, cfg, max_terms);
  return OrePoly::from_coeffs(cfg, std::move(cs));
}

inline TropPoly random_trop(std::mt19937_64& rng, int max_deg = 3) {
  TropPoly r;
  int n = 1 + static_cast<int>(rng() % (max_deg + 1));
  for (int i = 0; i < n; ++i) {
    int deg = static_cast<int>(rng() % (max_deg + 1));
    Rat c(static_cast<std::int64_t>(rng() % 17) - 8, 1 + static_cast<std::int64_t>(rng() % 3));
    r.lines.insert_or_assign(deg, c);
  }
  return r;
}

}  // namespace valmod::testgen

#endif  // VALMOD_TESTS_SUPPORT_TESTGEN_HPP_
