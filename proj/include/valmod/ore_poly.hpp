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

#ifndef VALMOD_ORE_POLY_HPP_
#define VALMOD_ORE_POLY_HPP_

#include <string>
#include <utility>
#include <vector>

#include "valmod/chain.hpp"
#include "valmod/hahn_series.hpp"

namespace valmod {

// Twisted polynomial sum t^i a_i over the series field, with the
// commutation rule a*t = t*a^phi.  The zero polynomial has no coefficients;
// otherwise the top coefficient is nonzero.
struct OrePoly {
  GroundConfig cfg;
  std::vector<HahnSeries> coeffs;  // coeffs[i] multiplies t^i

  static OrePoly zero(const GroundConfig& cfg) { return OrePoly{cfg, {}}; }

  static OrePoly from_coeffs(const GroundConfig& cfg, std::vector<HahnSeries> cs) {
    OrePoly r{cfg, std::move(cs)};
    r.normalize();
    return r;
  }

  static OrePoly monomial(const GroundConfig& cfg, int i, HahnSeries a) {
    if (i < 0) throw std::domain_error("OrePoly: negative degree");
    std::vector<HahnSeries> cs(i + 1, HahnSeries::zero(cfg));
    cs[i] = std::move(a);
    OrePoly r{cfg, std::move(cs)};
    r.normalize();
    return r;
  }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  const HahnSeries& coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size()))
      throw std::out_of_range("OrePoly::coeff");
    return coeffs[i];
  }

  void normalize() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }

  bool is_exact() const {
    for (const auto& a : coeffs)
      if (!a.is_exact()) return false;
    return true;
  }
};

inline OrePoly ore_add(const OrePoly& r, const OrePoly& s) {
  OrePoly out = r;
  if (out.coeffs.size() < s.coeffs.size()) out.coeffs.resize(s.coeffs.size(), HahnSeries::zero(r.cfg));
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) out.coeffs[i] = hs_add(out.coeffs[i], s.coeffs[i]);
  out.normalize();
  return out;
}

inline OrePoly ore_neg(const OrePoly& r) {
  OrePoly out = r;
  for (auto& a : out.coeffs) a = hs_neg(a);
  return out;
}

inline OrePoly ore_sub(const OrePoly& r, const OrePoly& s) { return ore_add(r, ore_neg(s)); }

// (t^i a)(t^j b) = t^(i+j) phi^j(a) b.
inline OrePoly ore_mul(const OrePoly& r, const OrePoly& s) {
  if (r.is_zero() || s.is_zero()) return OrePoly::zero(r.cfg);
  std::vector<HahnSeries> out(r.coeffs.size() + s.coeffs.size() - 1, HahnSeries::zero(r.cfg));
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (r.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < s.coeffs.size(); ++j) {
      if (s.coeffs[j].is_zero()) continue;
      HahnSeries term = hs_mul(hs_frobenius_iter(r.coeffs[i], static_cast<int>(j)), s.coeffs[j]);
      out[i + j] = hs_add(out[i + j], term);
    }
  }
  return OrePoly::from_coeffs(r.cfg, std::move(out));
}

// x.r = sum phi^i(x) a_i: the polynomial acting as an additive map.
inline HahnSeries ore_eval(const HahnSeries& x, const OrePoly& r) {
  HahnSeries out = HahnSeries::zero(x.cfg);
  HahnSeries fx = x;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (i > 0) fx = hs_frobenius(fx);
    if (r.coeffs[i].is_zero()) continue;
    out = hs_add(out, hs_mul(fx, r.coeffs[i]));
  }
  return out;
}

namespace ore_detail {

// Exact quotient x / y of series, failing when the quotient would need
// infinite support.  Step count is capped to keep failure deterministic.
inline HahnSeries hs_div_exact(const HahnSeries& x, const HahnSeries& y, int max_steps = 1024) {
  if (y.is_zero()) throw std::domain_error("hs_div_exact: division by zero");
  if (!x.is_exact() || !y.is_exact())
    throw std::domain_error("hs_div_exact: operands must be exact");
  HahnSeries rem = x;
  HahnSeries quot = HahnSeries::zero(x.cfg);
  for (int step = 0; !rem.is_zero(); ++step) {
    if (step >= max_steps) throw std::domain_error("hs_div_exact: quotient is not finite-support");
    Rat g = rem.terms.begin()->first - y.terms.begin()->first;
    FieldElem c = ff_mul(rem.leading_coeff(), ff_inv(y.leading_coeff()));
    HahnSeries term = HahnSeries::monomial(x.cfg, c, g);
    quot = hs_add(quot, term);
    rem = hs_sub(rem, hs_mul(term, y));
  }
  return quot;
}

}  // namespace ore_detail

// Right division r = quot * d + rem with deg rem < deg d; exact, and only
// defined when the intermediate coefficient quotients have finite support
// (always the case when d's leading coefficient is a monomial).
inline std::pair<OrePoly, OrePoly> ore_rdiv(const OrePoly& r, const OrePoly& d) {
  if (d.is_zero()) throw std::domain_error("ore_rdiv: division by the zero polynomial");
  OrePoly quot = OrePoly::zero(r.cfg);
  OrePoly rem = r;
  const int m = d.degree();
  while (!rem.is_zero() && rem.degree() >= m) {
    int shift = rem.degree() - m;
    HahnSeries ratio = ore_detail::hs_div_exact(rem.coeffs.back(), d.coeffs.back());
    HahnSeries c = hs_frobenius_iter(ratio, -m);
    OrePoly term = OrePoly::monomial(r.cfg, shift, c);
    quot = ore_add(quot, term);
    OrePoly deduct = ore_mul(term, d);
    int before = rem.degree();
    rem = ore_sub(rem, deduct);
    if (!rem.is_zero() && rem.degree() >= before)
      throw std::logic_error("ore_rdiv: degree did not drop");
  }
  return {quot, rem};
}

// Maximal k with r = t^k s; the t^k factor is on the left, so the
// coefficients shift without twisting.
inline std::pair<int, OrePoly> separable_split(const OrePoly& r) {
  if (r.is_zero()) throw std::domain_error("separable_split: zero polynomial");
  int k = 0;
  while (r.coeffs[k].is_zero()) ++k;
  OrePoly s{r.cfg, std::vector<HahnSeries>(r.coeffs.begin() + k, r.coeffs.end())};
  return {k, std::move(s)};
}

inline TropPoly tropicalize(const OrePoly& r) {
  if (r.is_zero()) throw std::domain_error("tropicalize: zero polynomial");
  TropPoly out;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (r.coeffs[i].is_zero()) continue;
    out.lines.emplace(static_cast<int>(i), r.coeffs[i].valuation().v);
  }
  return out;
}

// Sum of the monomials of r achieving the tropical minimum at g.
inline OrePoly subpoly_at(const OrePoly& r, const ChainValue& g) {
  if (r.is_zero()) throw std::domain_error("subpoly_at: zero polynomial");
  if (g.is_inf) throw std::domain_error("subpoly_at: infinite chain point");
  std::vector<int> degs = achieving_degrees(g.v, tropicalize(r), r.cfg.q);
  std::vector<HahnSeries> cs(r.coeffs.size(), HahnSeries::zero(r.cfg));
  for (int i : degs) cs[i] = r.coeffs[i];
  return OrePoly::from_coeffs(r.cfg, std::move(cs));
}

inline bool ore_equal(const OrePoly& r, const OrePoly& s) {
  if (r.coeffs.size() != s.coeffs.size()) return false;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i)
    if (!hs_equal(r.coeffs[i], s.coeffs[i])) return false;
  return true;
}

inline std::string ore_to_string(const OrePoly& r) {
  if (r.is_zero()) return "0";
  std::string out;
  for (int i = r.degree(); i >= 0; --i) {
    const HahnSeries& a = r.coeffs[i];
    if (a.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = hs_to_string(a);
    bool multi = a.terms.size() > 1;
    if (i == 0) {
      out += multi ? "(" + cs + ")" : cs;
      continue;
    }
    std::string tp = (i == 1) ? "t" : "t^" + std::to_string(i);
    if (cs == "1") {
      out += tp;
    } else if (multi) {
      out += tp + "*(" + cs + ")";
    } else {
      out += tp + "*" + cs;
    }
  }
  return out;
}

}  // namespace valmod

#endif  // VALMOD_ORE_POLY_HPP_
