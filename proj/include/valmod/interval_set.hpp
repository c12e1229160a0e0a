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

#ifndef VALMOD_INTERVAL_SET_HPP_
#define VALMOD_INTERVAL_SET_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "valmod/rational.hpp"

namespace valmod {

// One nonempty interval of rationals; absent endpoints are unbounded.
// Closed flags are meaningful only next to a finite endpoint.
struct Interval {
  std::optional<Rat> lo, hi;
  bool lo_closed = false, hi_closed = false;

  bool contains(const Rat& v) const {
    if (lo && (v < *lo || (v == *lo && !lo_closed))) return false;
    if (hi && (v > *hi || (v == *hi && !hi_closed))) return false;
    return true;
  }
};

namespace iv_detail {

// Orders intervals by lower endpoint, closed ends first at ties.
inline bool starts_before(const Interval& a, const Interval& b) {
  if (!a.lo) return b.lo.has_value();
  if (!b.lo) return false;
  if (*a.lo != *b.lo) return *a.lo < *b.lo;
  return a.lo_closed && !b.lo_closed;
}

// True if b starts strictly past the end of a (a genuine gap remains).
inline bool gap_between(const Interval& a, const Interval& b) {
  if (!a.hi || !b.lo) return false;
  if (*a.hi < *b.lo) return true;
  if (*a.hi > *b.lo) return false;
  return !a.hi_closed && !b.lo_closed;
}

// True if b's upper end reaches past a's.
inline bool ends_after(const Interval& a, const Interval& b) {
  if (!b.hi) return a.hi.has_value();
  if (!a.hi) return false;
  if (*b.hi != *a.hi) return *b.hi > *a.hi;
  return b.hi_closed && !a.hi_closed;
}

}  // namespace iv_detail

// A canonical finite union of disjoint, non-adjacent intervals over the
// rationals, plus a flag for membership of the top element.
struct IntervalSet {
  std::vector<Interval> parts;
  bool has_inf = false;

  static IntervalSet empty() { return {}; }

  static IntervalSet rationals() {
    IntervalSet s;
    s.parts.push_back(Interval{});
    return s;
  }

  static IntervalSet everything() {
    IntervalSet s = rationals();
    s.has_inf = true;
    return s;
  }

  static IntervalSet inf_point() {
    IntervalSet s;
    s.has_inf = true;
    return s;
  }

  static IntervalSet point(const Rat& v) {
    IntervalSet s;
    s.parts.push_back(Interval{v, v, true, true});
    return s;
  }

  static IntervalSet below(const Rat& v, bool closed) {
    IntervalSet s;
    s.parts.push_back(Interval{std::nullopt, v, false, closed});
    return s;
  }

  static IntervalSet above(const Rat& v, bool closed) {
    IntervalSet s;
    s.parts.push_back(Interval{v, std::nullopt, closed, false});
    return s;
  }

  // Empty result when the endpoints do not bound a nonempty interval.
  static IntervalSet between(const Rat& lo, bool lo_closed, const Rat& hi, bool hi_closed) {
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed))) return {};
    IntervalSet s;
    s.parts.push_back(Interval{lo, hi, lo_closed, hi_closed});
    return s;
  }

  bool is_empty() const { return parts.empty() && !has_inf; }

  bool is_everything() const {
    return has_inf && parts.size() == 1 && !parts[0].lo && !parts[0].hi;
  }

  bool contains(const ExtRat& v) const {
    if (v.is_inf) return has_inf;
    for (const Interval& p : parts)
      if (p.contains(v.v)) return true;
    return false;
  }

  void canonicalize() {
    std::sort(parts.begin(), parts.end(), iv_detail::starts_before);
    std::vector<Interval> merged;
    for (const Interval& p : parts) {
      if (!merged.empty() && !iv_detail::gap_between(merged.back(), p)) {
        if (iv_detail::ends_after(merged.back(), p)) {
          merged.back().hi = p.hi;
          merged.back().hi_closed = p.hi_closed;
        }
      } else {
        merged.push_back(p);
      }
    }
    parts = std::move(merged);
  }
};

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  out.parts = a.parts;
  out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
  out.has_inf = a.has_inf || b.has_inf;
  out.canonicalize();
  return out;
}

inline IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  for (const Interval& x : a.parts) {
    for (const Interval& y : b.parts) {
      Interval r;
      r.lo = x.lo;
      r.lo_closed = x.lo_closed;
      if (y.lo && (!r.lo || *y.lo > *r.lo || (*y.lo == *r.lo && !y.lo_closed))) {
        r.lo = y.lo;
        r.lo_closed = x.lo && *x.lo == *y.lo ? (x.lo_closed && y.lo_closed) : y.lo_closed;
      }
      r.hi = x.hi;
      r.hi_closed = x.hi_closed;
      if (y.hi && (!r.hi || *y.hi < *r.hi || (*y.hi == *r.hi && !y.hi_closed))) {
        r.hi = y.hi;
        r.hi_closed = x.hi && *x.hi == *y.hi ? (x.hi_closed && y.hi_closed) : y.hi_closed;
      }
      if (r.lo && r.hi && (*r.lo > *r.hi || (*r.lo == *r.hi && !(r.lo_closed && r.hi_closed))))
        continue;
      out.parts.push_back(r);
    }
  }
  out.has_inf = a.has_inf && b.has_inf;
  out.canonicalize();
  return out;
}

// Complement relative to the full chain (rationals plus the top element).
inline IntervalSet set_complement(const IntervalSet& a) {
  IntervalSet out;
  out.has_inf = !a.has_inf;
  std::optional<Rat> cursor;  // lower end of the next gap
  bool cursor_closed = false;
  for (const Interval& p : a.parts) {
    if (p.lo) {
      Interval gap;
      gap.lo = cursor;
      gap.lo_closed = cursor_closed;
      gap.hi = p.lo;
      gap.hi_closed = !p.lo_closed;
      if (!gap.lo || *gap.lo < *gap.hi || (*gap.lo == *gap.hi && gap.lo_closed && gap.hi_closed))
        out.parts.push_back(gap);
    }
    if (!p.hi) {
      cursor = std::nullopt;
      // Unbounded part: nothing follows it.
      out.canonicalize();
      return out;
    }
    cursor = p.hi;
    cursor_closed = !p.hi_closed;
  }
  out.parts.push_back(Interval{cursor, std::nullopt, cursor_closed, false});
  out.canonicalize();
  return out;
}

inline std::string interval_to_string(const Interval& p) {
  std::string s = p.lo_closed && p.lo ? "[" : "(";
  s += p.lo ? rat_to_string(*p.lo) : "-inf";
  s += ", ";
  s += p.hi ? rat_to_string(*p.hi) : "inf";
  s += p.hi_closed && p.hi ? "]" : ")";
  return s;
}

inline std::string interval_set_to_string(const IntervalSet& s) {
  if (s.is_empty()) return "empty";
  std::string out;
  for (const Interval& p : s.parts) {
    if (!out.empty()) out += " u ";
    out += interval_to_string(p);
  }
  if (s.has_inf) {
    if (!out.empty()) out += " u ";
    out += "{inf}";
  }
  return out;
}

}  // namespace valmod

#endif  // VALMOD_INTERVAL_SET_HPP_
