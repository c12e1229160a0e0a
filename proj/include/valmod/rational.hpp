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

#ifndef VALMOD_RATIONAL_HPP_
#define VALMOD_RATIONAL_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace valmod {

// Exact rational scalar used for exponents, valuations and chain points.
// Denominators are unbounded; all comparisons and arithmetic are exact.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// A point of Q extended by a top element.  Used for valuations, chain
// points and precision bounds; inf compares above every rational.
struct ExtRat {
  bool is_inf = false;
  Rat v{};

  static ExtRat infinity() { return ExtRat{true, Rat()}; }
  static ExtRat finite(Rat r) { return ExtRat{false, std::move(r)}; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.is_inf || b.is_inf) return a.is_inf == b.is_inf;
    return a.v == b.v;
  }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.is_inf) return false;
    if (b.is_inf) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

  // inf absorbs addition; inf * positive rational stays inf.
  friend ExtRat operator+(const ExtRat& a, const Rat& r) {
    return a.is_inf ? a : finite(a.v + r);
  }
  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.is_inf || b.is_inf) return infinity();
    return finite(a.v + b.v);
  }

  std::string to_string() const { return is_inf ? "inf" : rat_to_string(v); }
};

inline ExtRat ext_min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
inline ExtRat ext_max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

// q^k for integer k (k may be negative; q must be nonzero then).
inline Rat rat_pow(const Rat& q, long long k) {
  if (k == 0) return Rat(1);
  if (q == 0) {
    if (k < 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    return Rat(0);
  }
  Rat base = k < 0 ? Rat(denominator(q), numerator(q)) : q;
  unsigned long long n = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ull
                               : static_cast<unsigned long long>(k);
  Rat acc(1);
  while (n > 0) {
    if (n & 1ull) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace valmod

#endif  // VALMOD_RATIONAL_HPP_
