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

#ifndef VALMOD_HAHN_SERIES_HPP_
#define VALMOD_HAHN_SERIES_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "valmod/finite_field.hpp"
#include "valmod/rational.hpp"

namespace valmod {

// Finite-support series sum c_g * u^g with rational exponents and tower
// field coefficients.  An optional precision bound pi means the series is
// only known below pi: every stored exponent is < pi, and operations
// propagate how far the result can be trusted.  pi absent means exact.
struct HahnSeries {
  GroundConfig cfg;
  std::map<Rat, FieldElem> terms;  // exponent -> nonzero coefficient
  std::optional<Rat> prec;         // absent = exact

  static HahnSeries zero(const GroundConfig& cfg) { return HahnSeries{cfg, {}, std::nullopt}; }

  static HahnSeries monomial(const GroundConfig& cfg, const FieldElem& c, const Rat& g) {
    HahnSeries s = zero(cfg);
    if (!c.is_zero()) s.terms.emplace(g, c);
    return s;
  }

  static HahnSeries one(const GroundConfig& cfg) {
    return monomial(cfg, FieldElem::one(cfg), Rat(0));
  }

  bool is_zero() const { return terms.empty(); }
  bool is_exact() const { return !prec.has_value(); }

  // v(0) = inf.
  ExtRat valuation() const {
    if (terms.empty()) return ExtRat::infinity();
    return ExtRat::finite(terms.begin()->first);
  }

  const FieldElem& leading_coeff() const {
    if (terms.empty()) throw std::domain_error("leading_coeff: zero series");
    return terms.begin()->second;
  }

  // Drop zero coefficients and everything at or beyond the precision bound.
  void normalize() {
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->second.is_zero() || (prec && it->first >= *prec))
        it = terms.erase(it);
      else
        ++it;
    }
  }

  // Least common tower degree of the coefficients (1 for the zero series).
  int tower_degree() const {
    int m = 1;
    for (const auto& [g, c] : terms) m = static_cast<int>(std::lcm(m, ff_minimal_degree(c)));
    return m;
  }
};

inline HahnSeries hs_add(const HahnSeries& x, const HahnSeries& y) {
  HahnSeries r = x;
  if (y.prec) r.prec = r.prec ? std::min(*r.prec, *y.prec) : *y.prec;
  for (const auto& [g, c] : y.terms) {
    auto it = r.terms.find(g);
    if (it == r.terms.end())
      r.terms.emplace(g, c);
    else
      it->second = ff_add(it->second, c);
  }
  r.normalize();
  return r;
}

inline HahnSeries hs_neg(const HahnSeries& x) {
  HahnSeries r = x;
  for (auto& [g, c] : r.terms) c = ff_neg(c);
  return r;
}

inline HahnSeries hs_sub(const HahnSeries& x, const HahnSeries& y) { return hs_add(x, hs_neg(y)); }

namespace hs_detail {

// Valuation bound used for precision reach: for an empty series the best
// known bound is its own precision.
inline ExtRat reach(const HahnSeries& s) {
  ExtRat v = s.valuation();
  if (s.terms.empty() && s.prec) v = ExtRat::finite(*s.prec);
  return v;
}

}  // namespace hs_detail

inline HahnSeries hs_mul(const HahnSeries& x, const HahnSeries& y) {
  HahnSeries r = HahnSeries::zero(x.cfg);
  ExtRat px = x.prec ? ExtRat::finite(*x.prec) + hs_detail::reach(y) : ExtRat::infinity();
  ExtRat py = y.prec ? ExtRat::finite(*y.prec) + hs_detail::reach(x) : ExtRat::infinity();
  ExtRat p = ext_min(px, py);
  if (!p.is_inf) r.prec = p.v;
  for (const auto& [gx, cx] : x.terms) {
    for (const auto& [gy, cy] : y.terms) {
      Rat g = gx + gy;
      FieldElem c = ff_mul(cx, cy);
      auto it = r.terms.find(g);
      if (it == r.terms.end())
        r.terms.emplace(g, std::move(c));
      else
        it->second = ff_add(it->second, c);
    }
  }
  r.normalize();
  return r;
}

inline HahnSeries hs_scale(const FieldElem& c, const HahnSeries& x) {
  HahnSeries r = x;
  for (auto& [g, v] : r.terms) v = ff_mul(c, v);
  r.normalize();
  return r;
}

// phi: sum c u^g -> sum c^q u^(q g).  Scales valuations and precision by q.
inline HahnSeries hs_frobenius(const HahnSeries& x) {
  HahnSeries r = HahnSeries::zero(x.cfg);
  Rat q(x.cfg.q);
  if (x.prec) r.prec = *x.prec * q;
  for (const auto& [g, c] : x.terms) r.terms.emplace(g * q, ff_frobenius(c));
  return r;
}

inline HahnSeries hs_inv_frobenius(const HahnSeries& x) {
  HahnSeries r = HahnSeries::zero(x.cfg);
  Rat q(x.cfg.q);
  if (x.prec) r.prec = *x.prec / q;
  for (const auto& [g, c] : x.terms) r.terms.emplace(g / q, ff_inv_frobenius(c));
  return r;
}

// phi^k for k possibly negative.
inline HahnSeries hs_frobenius_iter(const HahnSeries& x, int k) {
  HahnSeries r = x;
  for (int i = 0; i < k; ++i) r = hs_frobenius(r);
  for (int i = 0; i > k; --i) r = hs_inv_frobenius(r);
  return r;
}

inline HahnSeries hs_truncate(const HahnSeries& x, const Rat& pi) {
  HahnSeries r = x;
  r.prec = r.prec ? std::min(*r.prec, pi) : pi;
  r.normalize();
  return r;
}

inline bool hs_equal(const HahnSeries& x, const HahnSeries& y) {
  if (x.prec != y.prec) return false;
  if (x.terms.size() != y.terms.size()) return false;
  auto ix = x.terms.begin();
  auto iy = y.terms.begin();
  for (; ix != x.terms.end(); ++ix, ++iy) {
    if (ix->first != iy->first) return false;
    if (!ff_equal(ix->second, iy->second)) return false;
  }
  return true;
}

// Multiplicative inverse of a nonzero series, exact when the support is a
// single monomial, otherwise a geometric expansion truncated at to_prec
// (relative to the inverse's own valuation).
inline HahnSeries hs_inverse(const HahnSeries& x, const std::optional<Rat>& to_prec = std::nullopt) {
  if (x.is_zero()) throw std::domain_error("hs_inverse: zero series");
  Rat g0 = x.terms.begin()->first;
  FieldElem c0 = x.terms.begin()->second;
  HahnSeries lead_inv = HahnSeries::monomial(x.cfg, ff_inv(c0), -g0);
  if (x.terms.size() == 1) {
    if (x.prec) lead_inv.prec = *x.prec - 2 * g0;
    return lead_inv;
  }
  if (!to_prec) throw std::domain_error("hs_inverse: non-monomial inverse needs a precision bound");
  // x = lead * (1 - h) with v(h) > 0; invert by summing h^k below the bound.
  HahnSeries ratio = hs_mul(lead_inv, x);  // 1 - h
  HahnSeries h = hs_sub(HahnSeries::one(x.cfg), ratio);
  HahnSeries acc = HahnSeries::one(x.cfg);
  HahnSeries pow = HahnSeries::one(x.cfg);
  Rat step = h.valuation().v;  // > 0
  Rat needed = *to_prec + g0;  // bound for (1-h)^{-1} before shifting by -g0
  for (Rat reach(0); reach < needed; reach += step) {
    pow = hs_mul(pow, h);
    acc = hs_add(acc, pow);
    if (pow.is_zero() && pow.is_exact()) break;
  }
  HahnSeries r = hs_mul(lead_inv, acc);
  return hs_truncate(r, *to_prec);
}

inline std::string hs_to_string(const HahnSeries& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : x.terms) {
    if (!out.empty()) out += " + ";
    std::string cs = ff_to_string(c);
    bool needs_paren = cs.find('+') != std::string::npos;
    if (g == 0) {
      out += needs_paren ? "(" + cs + ")" : cs;
      continue;
    }
    std::string mono;
    if (g == 1) {
      mono = "u";
    } else if (denominator(g) == 1 && g > 0) {
      mono = "u^" + rat_to_string(g);
    } else {
      mono = "u^(" + rat_to_string(g) + ")";
    }
    if (cs == "1") {
      out += mono;
    } else if (needs_paren) {
      out += "(" + cs + ")*" + mono;
    } else {
      out += cs + "*" + mono;
    }
  }
  return out;
}

}  // namespace valmod

#endif  // VALMOD_HAHN_SERIES_HPP_
