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

#ifndef VALMOD_PARSE_HPP_
#define VALMOD_PARSE_HPP_

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "valmod/chain.hpp"
#include "valmod/finite_field.hpp"
#include "valmod/hahn_series.hpp"
#include "valmod/ore_poly.hpp"
#include "valmod/rational.hpp"

namespace valmod {

namespace parse_detail {

// Character cursor with 0-based offsets surfaced in error messages.
struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos) +
                                ": " + what);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool done() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // Unsigned decimal integer.
  Int natural() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected a number");
    return Int(s.substr(start, pos - start));
  }

  // Signed rational "a" or "a/b"; the sign must directly precede the digits.
  Rat rational() {
    skip_ws();
    bool neg = accept('-');
    Int num = natural();
    if (neg) num = -num;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      Int den = natural();
      if (den == 0) fail("zero denominator");
      return Rat(num, den);
    }
    return Rat(num);
  }
};

// Exponent of a power: a bare natural or a parenthesized rational.
inline Rat power_exponent(Cursor& c) {
  if (c.accept('(')) {
    Rat g = c.rational();
    c.expect(')');
    return g;
  }
  if (c.peek() == '-') return Rat(-c.natural());
  return Rat(c.natural());
}

// Power of the residue generator: "w" or "w^3".  Returns the exponent.
inline std::size_t w_power(Cursor& c) {
  c.expect('w');
  std::size_t k = 1;
  if (c.accept('^')) {
    Int n = c.natural();
    if (n > 64) c.fail("residue exponent too large");
    k = static_cast<std::size_t>(n);
  }
  return k;
}

inline void add_coord(std::vector<std::int64_t>& coords, std::size_t k, std::int64_t v) {
  coords.resize(std::max(coords.size(), k + 1), 0);
  coords[k] += v;
}

// One residue-coordinate monomial "3", "w", "w^2", or "3*w^2".
inline void residue_monomial(Cursor& c, std::int64_t p, std::vector<std::int64_t>& coords) {
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    std::int64_t scalar = static_cast<std::int64_t>(c.natural() % Int(p));
    if (!c.accept('*')) {
      add_coord(coords, 0, scalar);
      return;
    }
    add_coord(coords, w_power(c), scalar);
    return;
  }
  add_coord(coords, w_power(c), 1);
}

// Packs raw coordinates into a tower element of minimal degree.
inline FieldElem pack_coords(const GroundConfig& cfg, std::vector<std::int64_t> coords) {
  std::size_t width = coords.size();
  while (width > 1 && coords[width - 1] % cfg.p == 0) --width;
  coords.resize(width);
  int m = 1;
  while (static_cast<std::size_t>(cfg.e) * m < width) ++m;
  coords.resize(static_cast<std::size_t>(cfg.e) * m, 0);
  return FieldElem::from_coords(cfg, m, std::move(coords));
}

// Trailing "u" / "u^g" factor; exponent 0 when absent.
inline Rat u_factor(Cursor& c) {
  if (!c.accept('u')) c.fail("expected 'u'");
  if (c.accept('^')) return power_exponent(c);
  return Rat(1);
}

// One series term: "u^g", "c", "c*u^g", "(c1+c2)", or "(c1+c2)*u^g" with
// residue coordinates c in F_p[w], e.g. "1*u^(1/2)", "(w+1)*u^2", "2*w^2*u".
inline std::pair<Rat, FieldElem> series_term(Cursor& c, const GroundConfig& cfg) {
  char head = c.peek();
  if (head == 'u') return {u_factor(c), FieldElem::one(cfg)};
  std::vector<std::int64_t> coords;
  if (head == '(') {
    c.expect('(');
    residue_monomial(c, cfg.p, coords);
    while (c.accept('+')) residue_monomial(c, cfg.p, coords);
    c.expect(')');
  } else if (head == 'w') {
    add_coord(coords, w_power(c), 1);
  } else if (std::isdigit(static_cast<unsigned char>(head))) {
    std::int64_t scalar = static_cast<std::int64_t>(c.natural() % Int(cfg.p));
    if (!c.accept('*')) return {Rat(0), pack_coords(cfg, {scalar})};
    if (c.peek() == 'w') {
      add_coord(coords, w_power(c), scalar);
    } else {
      return {u_factor(c), pack_coords(cfg, {scalar})};
    }
  } else {
    c.fail("expected a series term");
  }
  FieldElem coeff = pack_coords(cfg, std::move(coords));
  if (c.accept('*')) return {u_factor(c), coeff};
  return {Rat(0), coeff};
}

inline void add_term(HahnSeries& s, const Rat& g, const FieldElem& coeff) {
  s = hs_add(s, HahnSeries::monomial(s.cfg, coeff, g));
}

// Parses a series up to the current nesting level: stops before ')'.
// "0" needs no special case: it is a zero residue scalar.
inline HahnSeries series(Cursor& c, const GroundConfig& cfg) {
  HahnSeries s = HahnSeries::zero(cfg);
  auto [g, coeff] = series_term(c, cfg);
  add_term(s, g, coeff);
  while (c.accept('+')) {
    auto [g2, coeff2] = series_term(c, cfg);
    add_term(s, g2, coeff2);
  }
  return s;
}

}  // namespace parse_detail

// "inf" or a rational "a/b".
inline ChainValue parse_chain_value(const std::string& text) {
  parse_detail::Cursor c{text};
  c.skip_ws();
  ChainValue v = ChainValue::infinity();
  if (text.compare(c.pos, 3, "inf") == 0) {
    c.pos += 3;
  } else {
    v = ChainValue::finite(c.rational());
  }
  if (!c.done()) c.fail("trailing input");
  return v;
}

inline Rat parse_rational(const std::string& text) {
  parse_detail::Cursor c{text};
  Rat r = c.rational();
  if (!c.done()) c.fail("trailing input");
  return r;
}

// Series text: sum of "c*u^(a/b)" terms with residue coordinates in F_p[w],
// e.g. "1*u^(1/2) + 1*u^(3/4)", "(w+1)*u^2 + u", or "0".
inline HahnSeries parse_series_text(const GroundConfig& cfg, const std::string& text) {
  parse_detail::Cursor c{text};
  HahnSeries s = parse_detail::series(c, cfg);
  if (!c.done()) c.fail("trailing input");
  s.normalize();
  return s;
}

namespace parse_detail {

// Coefficient of one twisted-polynomial term: either a parenthesized series
// or a single series term.  "(w+1)*u^2" is a single term whose residue
// coefficient happens to be parenthesized; the '*' after ')' disambiguates.
inline HahnSeries ore_coefficient(Cursor& c, const GroundConfig& cfg) {
  if (c.peek() == '(') {
    std::size_t save = c.pos;
    c.expect('(');
    HahnSeries s = series(c, cfg);
    c.expect(')');
    if (c.peek() != '*') return s;
    c.pos = save;
  }
  auto [g, fe] = series_term(c, cfg);
  return HahnSeries::monomial(cfg, fe, g);
}

}  // namespace parse_detail

// Twisted polynomial text: sum of "t^k*(series)" terms with descending or
// mixed degrees, e.g. "t^2 + t*(u + u^2) + u^2".  Coefficients of repeated
// degrees accumulate.
inline OrePoly parse_ore_text(const GroundConfig& cfg, const std::string& text) {
  parse_detail::Cursor c{text};
  std::vector<HahnSeries> coeffs;
  auto at = [&](std::size_t k) -> HahnSeries& {
    if (coeffs.size() <= k) coeffs.resize(k + 1, HahnSeries::zero(cfg));
    return coeffs[k];
  };
  auto term = [&]() {
    if (c.peek() == 't') {
      ++c.pos;
      std::size_t k = 1;
      if (c.accept('^')) {
        Int n = c.natural();
        if (n > 1024) c.fail("degree too large");
        k = static_cast<std::size_t>(n);
      }
      HahnSeries coeff = HahnSeries::one(cfg);
      if (c.accept('*')) coeff = parse_detail::ore_coefficient(c, cfg);
      at(k) = hs_add(at(k), coeff);
      return;
    }
    at(0) = hs_add(at(0), parse_detail::ore_coefficient(c, cfg));
  };
  term();
  while (c.accept('+')) term();
  if (!c.done()) c.fail("trailing input");
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.empty()) return OrePoly::zero(cfg);
  return OrePoly::from_coeffs(cfg, std::move(coeffs));
}

// Tropical data text: "{(2,0),(1,1),(0,3)}" with rational values "a/b".
inline TropPoly parse_trop_text(const std::string& text) {
  parse_detail::Cursor c{text};
  c.expect('{');
  TropPoly r;
  if (!c.accept('}')) {
    do {
      c.expect('(');
      c.skip_ws();
      bool neg = c.accept('-');
      Int deg = c.natural();
      if (neg) c.fail("degrees are nonnegative");
      if (deg > 1024) c.fail("degree too large");
      c.expect(',');
      Rat val = c.rational();
      c.expect(')');
      auto [it, inserted] = r.lines.emplace(static_cast<int>(deg), val);
      (void)it;
      if (!inserted) c.fail("duplicate degree");
    } while (c.accept(','));
    c.expect('}');
  }
  if (!c.done()) c.fail("trailing input");
  return r;
}

}  // namespace valmod

#endif  // VALMOD_PARSE_HPP_
