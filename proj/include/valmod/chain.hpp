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

#ifndef VALMOD_CHAIN_HPP_
#define VALMOD_CHAIN_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valmod/hahn_series.hpp"
#include "valmod/rational.hpp"

namespace valmod {

// Point of the concrete chain Q with top element inf.  The monomial t acts
// by multiplication with q, so 0 is the unique fixed point of the action.
using ChainValue = ExtRat;

// min_i (q^i * g + c_i): the action of a twisted polynomial on the chain,
// keyed by monomial degree.
struct TropPoly {
  std::map<int, Rat> lines;  // degree -> value c_i

  bool empty() const { return lines.empty(); }
  int degree() const { return lines.empty() ? -1 : lines.rbegin()->first; }

  static TropPoly of(std::initializer_list<std::pair<int, Rat>> init) {
    TropPoly r;
    for (const auto& [i, c] : init) {
      if (i < 0) throw std::domain_error("TropPoly: negative degree");
      if (!r.lines.emplace(i, c).second) throw std::domain_error("TropPoly: duplicate degree");
    }
    return r;
  }
};

inline void check_nonempty(const TropPoly& r) {
  if (r.empty()) throw std::domain_error("tropical polynomial must be nonempty");
}

inline ChainValue chain_eval(const ChainValue& g, const TropPoly& r, std::int64_t q) {
  check_nonempty(r);
  if (g.is_inf) return ChainValue::infinity();
  std::optional<Rat> best;
  for (const auto& [i, c] : r.lines) {
    Rat v = rat_pow(Rat(q), i) * g.v + c;
    if (!best || v < *best) best = v;
  }
  return ChainValue::finite(*best);
}

// The unique g with chain_eval(g, r) = d; the action is a strictly
// increasing bijection of Q, and inverting the min of lines is the max of
// the per-line inverses.
inline ChainValue chain_inverse(const ChainValue& d, const TropPoly& r, std::int64_t q) {
  check_nonempty(r);
  if (d.is_inf) return ChainValue::infinity();
  std::optional<Rat> best;
  for (const auto& [i, c] : r.lines) {
    Rat g = (d.v - c) / rat_pow(Rat(q), i);
    if (!best || g > *best) best = g;
  }
  return ChainValue::finite(*best);
}

// One cell of the lower envelope: the set of chain points where the given
// degree achieves the minimum.  Unbounded ends are open; finite shared
// endpoints are closed on both neighbors, so a cell may be a single point.
struct EnvelopePiece {
  int degree;
  std::optional<Rat> lo;  // absent = -inf
  std::optional<Rat> hi;  // absent = +inf
};

// Cells ordered from the initial segment (highest degree) to the final one
// (lowest degree); they cover Q and meet in single points.
struct EnvelopeProfile {
  std::vector<EnvelopePiece> pieces;
};

inline EnvelopeProfile envelope(const TropPoly& r, std::int64_t q) {
  check_nonempty(r);
  struct Entry {
    int degree;
    Rat c;
    std::optional<Rat> start;
  };
  std::vector<Entry> stack;
  // Steepest line first: it is lowest near -inf.
  for (auto it = r.lines.rbegin(); it != r.lines.rend(); ++it) {
    Entry cur{it->first, it->second, std::nullopt};
    while (!stack.empty()) {
      const Entry& top = stack.back();
      // Crossing of the two lines; slopes differ because degrees do.
      Rat x = (cur.c - top.c) / (rat_pow(Rat(q), top.degree) - rat_pow(Rat(q), cur.degree));
      if (top.start && x < *top.start) {
        stack.pop_back();  // the top line is nowhere minimal
        continue;
      }
      cur.start = x;
      break;
    }
    stack.push_back(std::move(cur));
  }
  EnvelopeProfile out;
  for (std::size_t k = 0; k < stack.size(); ++k) {
    EnvelopePiece piece{stack[k].degree, stack[k].start, std::nullopt};
    if (k + 1 < stack.size()) piece.hi = *stack[k + 1].start;
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

// A breakpoint of the envelope with the extreme degrees achieving the
// minimum there.
struct Jump {
  Rat gamma;
  int deg_hi;
  int deg_lo;
};

struct JumpSet {
  std::vector<Jump> jumps;  // ascending gamma

  bool contains(const Rat& g) const {
    for (const auto& j : jumps)
      if (j.gamma == g) return true;
    return false;
  }
};

inline JumpSet potential_jumps(const TropPoly& r, std::int64_t q) {
  EnvelopeProfile env = envelope(r, q);
  JumpSet out;
  std::optional<Rat> last;
  for (const auto& piece : env.pieces) {
    if (!piece.lo || (last && *piece.lo == *last)) continue;
    last = *piece.lo;
    Rat g = *piece.lo;
    Rat best = chain_eval(ChainValue::finite(g), r, q).v;
    int hi = -1, lo = -1;
    for (const auto& [i, c] : r.lines) {
      if (rat_pow(Rat(q), i) * g + c == best) {
        if (lo < 0) lo = i;
        hi = i;
      }
    }
    out.jumps.push_back(Jump{std::move(g), hi, lo});
  }
  return out;
}

// Achieving degrees of the min at a finite chain point.
inline std::vector<int> achieving_degrees(const Rat& g, const TropPoly& r, std::int64_t q) {
  check_nonempty(r);
  Rat best = chain_eval(ChainValue::finite(g), r, q).v;
  std::vector<int> out;
  for (const auto& [i, c] : r.lines)
    if (rat_pow(Rat(q), i) * g + c == best) out.push_back(i);
  return out;
}

// Membership in the valuation ring {v >= 0} of the coefficient field.
inline bool valuation_ring_member(const HahnSeries& a) {
  if (a.is_zero()) throw std::domain_error("valuation_ring_member: zero input");
  return a.valuation() >= ExtRat::finite(Rat(0));
}

inline std::string trop_to_string(const TropPoly& r) {
  std::string out = "{";
  bool first = true;
  for (auto it = r.lines.rbegin(); it != r.lines.rend(); ++it) {
    if (!first) out += ",";
    first = false;
    out += "(" + std::to_string(it->first) + "," + rat_to_string(it->second) + ")";
  }
  return out + "}";
}

inline std::string envelope_to_string(const EnvelopeProfile& env) {
  std::string out;
  for (const auto& piece : env.pieces) {
    out += "U_" + std::to_string(piece.degree) + ": ";
    out += piece.lo ? "[" + rat_to_string(*piece.lo) : "(-inf";
    out += ", ";
    out += piece.hi ? rat_to_string(*piece.hi) + "]" : "inf)";
    out += "\n";
  }
  return out;
}

inline std::string jumps_to_string(const JumpSet& js) {
  std::string out;
  for (const auto& j : js.jumps) {
    if (!out.empty()) out += ", ";
    out += rat_to_string(j.gamma);
  }
  return out;
}

}  // namespace valmod

#endif  // VALMOD_CHAIN_HPP_
