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

#ifndef VALMOD_FINITE_FIELD_HPP_
#define VALMOD_FINITE_FIELD_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "valmod/rational.hpp"

namespace valmod {

// Base field parameters, fixed for the lifetime of a session.
struct GroundConfig {
  std::int64_t p = 2;  // characteristic, prime
  int e = 1;           // q = p^e
  std::int64_t q = 2;

  static GroundConfig make(std::int64_t p, int e);
  friend bool operator==(const GroundConfig&, const GroundConfig&) = default;
};

namespace ff_detail {

// Dense F_p[x] polynomials, coefficients in [0, p), no trailing zeros.
using Poly = std::vector<std::int64_t>;

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  // Extended Euclid; p prime, a != 0 mod p.
  std::int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    std::int64_t qq = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - qq * newt);
    std::tie(r, newr) = std::make_pair(newr, r - qq * newr);
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return ((t % p) + p) % p;
}

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int poly_deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly poly_add(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = v % p;
  }
  poly_trim(r);
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = ((v % p) + p) % p;
  }
  poly_trim(r);
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  poly_trim(r);
  return r;
}

// Remainder of a modulo monic m.
inline Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
  if (m.empty()) throw std::domain_error("poly_rem: zero modulus");
  const int dm = poly_deg(m);
  while (poly_deg(a) >= dm) {
    std::int64_t lead = a.back();
    int shift = poly_deg(a) - dm;
    if (lead != 0) {
      std::int64_t scale = (lead * mod_inverse(m.back(), p)) % p;
      for (int i = 0; i <= dm; ++i) {
        std::int64_t v = a[i + shift] - scale * m[i];
        a[i + shift] = ((v % p) + p) % p;
      }
    }
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  return poly_rem(poly_mul(a, b, p), m, p);
}

inline Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::int64_t inv = mod_inverse(a.back(), p);
    for (auto& c : a) c = (c * inv) % p;
  }
  return a;
}

// Inverse of a modulo monic m (extended Euclid on polynomials).
inline Poly poly_inv_mod(const Poly& a, const Poly& m, std::int64_t p) {
  Poly t{}, newt{1}, r = m, newr = poly_rem(a, m, p);
  if (newr.empty()) throw std::domain_error("poly_inv_mod: zero element");
  while (!newr.empty()) {
    // q, rem of r / newr.
    Poly q{}, rem = r;
    const int dn = poly_deg(newr);
    std::int64_t leadinv = mod_inverse(newr.back(), p);
    while (poly_deg(rem) >= dn) {
      int shift = poly_deg(rem) - dn;
      std::int64_t scale = (rem.back() * leadinv) % p;
      if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, 0);
      q[shift] = (q[shift] + scale) % p;
      for (int i = 0; i <= dn; ++i) {
        std::int64_t v = rem[i + shift] - scale * newr[i];
        rem[i + shift] = ((v % p) + p) % p;
      }
      poly_trim(rem);
      if (rem.empty()) break;
    }
    Poly t2 = poly_sub(t, poly_mul(q, newt, p), p);
    t = std::move(newt);
    newt = std::move(t2);
    r = std::move(newr);
    newr = std::move(rem);
  }
  if (poly_deg(r) != 0) throw std::domain_error("poly_inv_mod: not invertible");
  std::int64_t inv = mod_inverse(r[0], p);
  for (auto& c : t) c = (c * inv) % p;
  poly_trim(t);
  return t;
}

inline Poly poly_pow_mod(Poly base, Int exp, const Poly& m, std::int64_t p) {
  Poly acc{1};
  base = poly_rem(std::move(base), m, p);
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) acc = poly_mul_mod(acc, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    exp >>= 1;
  }
  return acc;
}

inline std::vector<std::int64_t> prime_factors_small(std::int64_t n) {
  std::vector<std::int64_t> fs;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Distinct prime factors of n. Trial division only; callers keep n below
// ~2^42 so any cofactor surviving the sieve bound is itself prime.
inline std::vector<Int> prime_factors_big(Int n) {
  std::vector<Int> fs;
  const std::int64_t bound = 1 << 21;
  for (std::int64_t d = 2; d <= bound && Int(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    if (n > Int(bound) * bound) throw std::domain_error("field tower too large to certify");
    fs.push_back(n);
  }
  return fs;
}

inline bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rabin irreducibility test for monic h of degree n over F_p.
inline bool poly_irreducible(const Poly& h, std::int64_t p) {
  const int n = poly_deg(h);
  if (n <= 0) return false;
  Poly x{0, 1};
  Poly t = x;
  std::vector<Poly> frob_powers(n + 1);  // frob_powers[k] = x^(p^k) mod h
  frob_powers[0] = x;
  for (int k = 1; k <= n; ++k) {
    t = poly_pow_mod(t, Int(p), h, p);
    frob_powers[k] = t;
  }
  if (poly_sub(frob_powers[n], x, p) != Poly{}) return false;
  for (std::int64_t ell : prime_factors_small(n)) {
    Poly d = poly_sub(frob_powers[n / ell], x, p);
    Poly g = poly_gcd(h, d, p);
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

// Minimal polynomial of w in F_p[x]/(h), via incremental row reduction of
// the powers w^0, w^1, ... The result is monic.
inline Poly minimal_polynomial(const Poly& w, const Poly& h, std::int64_t p) {
  const int n = poly_deg(h);
  struct Row {
    std::vector<std::int64_t> v;      // reduced coordinates, length n
    std::vector<std::int64_t> combo;  // combination over powers, length k+1
    int pivot;
  };
  std::vector<Row> rows;
  Poly wk{1};
  for (int k = 0; k <= n; ++k) {
    std::vector<std::int64_t> v(n, 0);
    for (std::size_t i = 0; i < wk.size(); ++i) v[i] = wk[i];
    std::vector<std::int64_t> combo(k + 1, 0);
    combo[k] = 1;
    for (const Row& r : rows) {
      if (v[r.pivot] == 0) continue;
      std::int64_t scale = v[r.pivot];
      for (int i = 0; i < n; ++i) v[i] = ((v[i] - scale * r.v[i]) % p + p) % p;
      for (std::size_t i = 0; i < r.combo.size(); ++i)
        combo[i] = ((combo[i] - scale * r.combo[i]) % p + p) % p;
    }
    int pivot = -1;
    for (int i = 0; i < n; ++i)
      if (v[i] != 0) { pivot = i; break; }
    if (pivot < 0) {
      Poly mp(combo.begin(), combo.end());
      poly_trim(mp);
      return mp;  // combo[k] == 1, so monic of degree k
    }
    std::int64_t inv = mod_inverse(v[pivot], p);
    for (auto& c : v) c = (c * inv) % p;
    for (auto& c : combo) c = (c * inv) % p;
    rows.push_back(Row{std::move(v), std::move(combo), pivot});
    wk = poly_mul_mod(wk, w, h, p);
  }
  throw std::logic_error("minimal_polynomial: no dependence found");
}

// Digits of v in base p, least significant first, padded to n entries.
inline Poly counting_poly(std::int64_t v, std::int64_t p, int n) {
  Poly c(n, 0);
  for (int i = 0; i < n && v > 0; ++i) {
    c[i] = v % p;
    v /= p;
  }
  poly_trim(c);
  return c;
}

}  // namespace ff_detail

// Registry of canonical tower fields F_{p^n} = F_p[x]/(C_n).  C_n is the
// minimal polynomial of the first (in counting order) primitive element
// whose norms down to every maximal subfield hit that subfield's canonical
// generator.  Norm compatibility at maximal subfields telescopes to all
// subfields, which makes the embedding maps below commute.
class FieldRegistry {
 public:
  // Canonical monic modulus C_n of degree n.
  static const ff_detail::Poly& modulus(std::int64_t p, int n) {
    auto& st = state();
    std::scoped_lock lk(st.mu);
    return modulus_locked(st, p, n);
  }

  // Matrix of the embedding F_{p^a} -> F_{p^b} in canonical bases
  // (b rows of length a, column j = image of x^j).
  static const std::vector<std::vector<std::int64_t>>& embedding(std::int64_t p, int a, int b) {
    auto& st = state();
    std::scoped_lock lk(st.mu);
    auto key = std::make_tuple(p, a, b);
    auto it = st.embeddings.find(key);
    if (it != st.embeddings.end()) return it->second;
    if (b % a != 0) throw std::domain_error("embedding: target is not an extension");
    const ff_detail::Poly& ca = modulus_locked(st, p, a);
    const ff_detail::Poly& cb = modulus_locked(st, p, b);
    Int exp = (pow_int(p, b) - 1) / (pow_int(p, a) - 1);
    ff_detail::Poly img = ff_detail::poly_pow_mod({0, 1}, exp, cb, p);
    if (ff_detail::minimal_polynomial(img, cb, p) != ca)
      throw std::logic_error("embedding: norm compatibility violated");
    std::vector<std::vector<std::int64_t>> mat(b, std::vector<std::int64_t>(a, 0));
    ff_detail::Poly col{1};
    for (int j = 0; j < a; ++j) {
      for (std::size_t i = 0; i < col.size(); ++i) mat[i][j] = col[i];
      col = ff_detail::poly_mul_mod(col, img, cb, p);
    }
    return st.embeddings.emplace(key, std::move(mat)).first->second;
  }

  static Int pow_int(std::int64_t p, int n) {
    Int r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
  }

 private:
  struct State {
    std::recursive_mutex mu;
    std::map<std::pair<std::int64_t, int>, ff_detail::Poly> moduli;
    std::map<std::tuple<std::int64_t, int, int>, std::vector<std::vector<std::int64_t>>> embeddings;
  };

  static State& state() {
    static State st;
    return st;
  }

  static const ff_detail::Poly& modulus_locked(State& st, std::int64_t p, int n) {
    auto key = std::make_pair(p, n);
    auto it = st.moduli.find(key);
    if (it != st.moduli.end()) return it->second;
    if (n < 1) throw std::domain_error("modulus: degree must be positive");
    ff_detail::Poly cn;
    if (n == 1) {
      std::int64_t g = smallest_primitive_root(p);
      cn = {((p - g) % p + p) % p, 1};  // x - g
    } else {
      // Scratch field to search in: first irreducible monic of degree n.
      ff_detail::Poly h;
      for (std::int64_t v = 1;; ++v) {
        ff_detail::Poly cand = ff_detail::counting_poly(v, p, n);
        cand.resize(n + 1, 0);
        cand[n] = 1;
        if (n > 1 && cand[0] == 0) continue;
        if (ff_detail::poly_irreducible(cand, p)) {
          h = cand;
          break;
        }
      }
      Int order = pow_int(p, n) - 1;
      std::vector<Int> order_factors = ff_detail::prime_factors_big(order);
      std::vector<std::int64_t> deg_factors = ff_detail::prime_factors_small(n);
      for (std::int64_t v = 1;; ++v) {
        ff_detail::Poly z = ff_detail::counting_poly(v, p, n);
        if (z.empty()) continue;
        bool ok = true;
        for (const Int& ell : order_factors) {
          if (ff_detail::poly_pow_mod(z, order / ell, h, p) == ff_detail::Poly{1}) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        for (std::int64_t ell : deg_factors) {
          int m = n / static_cast<int>(ell);
          Int exp = order / (pow_int(p, m) - 1);
          ff_detail::Poly w = ff_detail::poly_pow_mod(z, exp, h, p);
          if (ff_detail::minimal_polynomial(w, h, p) != modulus_locked(st, p, m)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        cn = ff_detail::minimal_polynomial(z, h, p);
        if (ff_detail::poly_deg(cn) != n)
          throw std::logic_error("modulus: primitive element of wrong degree");
        break;
      }
    }
    return st.moduli.emplace(key, std::move(cn)).first->second;
  }

  static std::int64_t smallest_primitive_root(std::int64_t p) {
    if (p == 2) return 1;
    std::vector<std::int64_t> fs = ff_detail::prime_factors_small(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
      bool ok = true;
      for (std::int64_t ell : fs) {
        // g^((p-1)/ell) mod p by fast exponentiation.
        std::int64_t e = (p - 1) / ell, base = g, acc = 1;
        while (e > 0) {
          if (e & 1) acc = (acc * base) % p;
          base = (base * base) % p;
          e >>= 1;
        }
        if (acc == 1) { ok = false; break; }
      }
      if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: none found");
  }
};

inline GroundConfig GroundConfig::make(std::int64_t p, int e) {
  if (!ff_detail::is_prime_small(p)) throw std::domain_error("GroundConfig: p must be prime");
  if (e < 1) throw std::domain_error("GroundConfig: e must be positive");
  Int q = FieldRegistry::pow_int(p, e);
  if (q > (Int(1) << 20)) throw std::domain_error("GroundConfig: q too large");
  return GroundConfig{p, e, static_cast<std::int64_t>(q)};
}

// Element of F_{q^m} inside the canonical tower, held as coordinates over
// F_p in the basis 1, x, ..., x^(e*m-1) of F_{p^(e*m)}.
struct FieldElem {
  std::int64_t p = 2;
  int e = 1;
  int m = 1;                     // tower degree over F_q
  std::vector<std::int64_t> c;  // size e*m, entries in [0, p)

  int field_degree() const { return e * m; }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
  }

  static FieldElem zero(const GroundConfig& cfg, int m = 1) {
    return FieldElem{cfg.p, cfg.e, m, std::vector<std::int64_t>(cfg.e * m, 0)};
  }

  static FieldElem one(const GroundConfig& cfg, int m = 1) {
    FieldElem r = zero(cfg, m);
    r.c[0] = 1;
    return r;
  }

  static FieldElem from_int(const GroundConfig& cfg, std::int64_t v, int m = 1) {
    FieldElem r = zero(cfg, m);
    r.c[0] = ((v % cfg.p) + cfg.p) % cfg.p;
    return r;
  }

  // Class of x in F_{p^(e*m)}; for m == 1 this is the canonical generator
  // of the base field F_q (written w in the text syntax).
  static FieldElem generator(const GroundConfig& cfg, int m = 1) {
    FieldElem r = zero(cfg, m);
    if (r.c.size() < 2) throw std::domain_error("generator: prime field has no generator symbol");
    r.c[1] = 1;
    return r;
  }

  static FieldElem from_coords(const GroundConfig& cfg, int m, std::vector<std::int64_t> coords) {
    if (static_cast<int>(coords.size()) != cfg.e * m)
      throw std::domain_error("from_coords: wrong coordinate count");
    for (auto& v : coords) v = ((v % cfg.p) + cfg.p) % cfg.p;
    return FieldElem{cfg.p, cfg.e, m, std::move(coords)};
  }
};

namespace ff_detail {

inline void check_same_ground(const FieldElem& a, const FieldElem& b) {
  if (a.p != b.p || a.e != b.e) throw std::domain_error("field elements from different ground configs");
}

inline FieldElem lift_to(const FieldElem& a, int m) {
  if (a.m == m) return a;
  if (m % a.m != 0) throw std::domain_error("lift_to: not an extension of the element's field");
  const auto& mat = FieldRegistry::embedding(a.p, a.field_degree(), a.e * m);
  std::vector<std::int64_t> out(a.e * m, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.c.size(); ++j) s += mat[i][j] * a.c[j];
    out[i] = s % a.p;
  }
  return FieldElem{a.p, a.e, m, std::move(out)};
}

inline int unify_degree(const FieldElem& a, const FieldElem& b) {
  check_same_ground(a, b);
  return static_cast<int>(std::lcm(a.m, b.m));
}

}  // namespace ff_detail

inline FieldElem ff_add(const FieldElem& a, const FieldElem& b) {
  int m = ff_detail::unify_degree(a, b);
  FieldElem x = ff_detail::lift_to(a, m), y = ff_detail::lift_to(b, m);
  for (std::size_t i = 0; i < x.c.size(); ++i) x.c[i] = (x.c[i] + y.c[i]) % x.p;
  return x;
}

inline FieldElem ff_neg(const FieldElem& a) {
  FieldElem r = a;
  for (auto& v : r.c) v = (r.p - v) % r.p;
  return r;
}

inline FieldElem ff_sub(const FieldElem& a, const FieldElem& b) { return ff_add(a, ff_neg(b)); }

inline FieldElem ff_mul(const FieldElem& a, const FieldElem& b) {
  int m = ff_detail::unify_degree(a, b);
  FieldElem x = ff_detail::lift_to(a, m), y = ff_detail::lift_to(b, m);
  const auto& mod = FieldRegistry::modulus(x.p, x.field_degree());
  ff_detail::Poly pa(x.c.begin(), x.c.end()), pb(y.c.begin(), y.c.end());
  ff_detail::poly_trim(pa);
  ff_detail::poly_trim(pb);
  ff_detail::Poly pr = ff_detail::poly_mul_mod(pa, pb, mod, x.p);
  pr.resize(x.c.size(), 0);
  x.c.assign(pr.begin(), pr.end());
  return x;
}

inline FieldElem ff_inv(const FieldElem& a) {
  if (a.is_zero()) throw std::domain_error("ff_inv: zero is not invertible");
  const auto& mod = FieldRegistry::modulus(a.p, a.field_degree());
  ff_detail::Poly pa(a.c.begin(), a.c.end());
  ff_detail::poly_trim(pa);
  ff_detail::Poly pr = ff_detail::poly_inv_mod(pa, mod, a.p);
  pr.resize(a.c.size(), 0);
  FieldElem r = a;
  r.c.assign(pr.begin(), pr.end());
  return r;
}

inline FieldElem ff_pow(const FieldElem& a, Int k) {
  const auto& mod = FieldRegistry::modulus(a.p, a.field_degree());
  FieldElem base = a;
  if (k < 0) {
    base = ff_inv(a);
    k = -k;
  }
  ff_detail::Poly pb(base.c.begin(), base.c.end());
  ff_detail::poly_trim(pb);
  ff_detail::Poly pr = ff_detail::poly_pow_mod(pb, k, mod, a.p);
  pr.resize(a.c.size(), 0);
  FieldElem r = a;
  r.c.assign(pr.begin(), pr.end());
  return r;
}

// x -> x^q, an automorphism of every tower field.
inline FieldElem ff_frobenius(const FieldElem& a) {
  return ff_pow(a, FieldRegistry::pow_int(a.p, a.e));
}

// Inverse of x -> x^q.  On a field with p^n elements x^(p^n) = x, so the
// inverse of x -> x^(p^e) is x -> x^(p^(n-e)); for n == e it is the identity.
inline FieldElem ff_inv_frobenius(const FieldElem& a) {
  int n = a.field_degree();
  return ff_pow(a, FieldRegistry::pow_int(a.p, n - a.e));
}

inline bool ff_equal(const FieldElem& a, const FieldElem& b) {
  int m = ff_detail::unify_degree(a, b);
  return ff_detail::lift_to(a, m).c == ff_detail::lift_to(b, m).c;
}

// Smallest tower degree d | m whose subfield contains a.
inline int ff_minimal_degree(const FieldElem& a) {
  for (int d = 1; d <= a.m; ++d) {
    if (a.m % d != 0) continue;
    const auto& mat = FieldRegistry::embedding(a.p, a.e * d, a.field_degree());
    // Solve mat * y = a.c by elimination.
    int rows = a.field_degree(), cols = a.e * d;
    std::vector<std::vector<std::int64_t>> aug(rows, std::vector<std::int64_t>(cols + 1, 0));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) aug[i][j] = mat[i][j];
      aug[i][cols] = a.c[i];
    }
    int rank = 0;
    bool consistent = true;
    for (int col = 0; col < cols && rank < rows; ++col) {
      int piv = -1;
      for (int r = rank; r < rows; ++r)
        if (aug[r][col] != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(aug[rank], aug[piv]);
      std::int64_t inv = ff_detail::mod_inverse(aug[rank][col], a.p);
      for (auto& v : aug[rank]) v = (v * inv) % a.p;
      for (int r = 0; r < rows; ++r) {
        if (r == rank || aug[r][col] == 0) continue;
        std::int64_t s = aug[r][col];
        for (int j = col; j <= cols; ++j)
          aug[r][j] = ((aug[r][j] - s * aug[rank][j]) % a.p + a.p) % a.p;
      }
      ++rank;
    }
    for (int r = 0; r < rows; ++r) {
      bool allz = true;
      for (int j = 0; j < cols; ++j)
        if (aug[r][j] != 0) { allz = false; break; }
      if (allz && aug[r][cols] != 0) { consistent = false; break; }
    }
    if (consistent) return d;
  }
  return a.m;
}

// Descend a to the given tower degree (must contain it).
inline FieldElem ff_descend(const FieldElem& a, int d) {
  if (d == a.m) return a;
  if (a.m % d != 0) throw std::domain_error("ff_descend: not a subfield");
  const auto& mat = FieldRegistry::embedding(a.p, a.e * d, a.field_degree());
  int rows = a.field_degree(), cols = a.e * d;
  std::vector<std::vector<std::int64_t>> aug(rows, std::vector<std::int64_t>(cols + 1, 0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = mat[i][j];
    aug[i][cols] = a.c[i];
  }
  std::vector<int> pivot_col(cols, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (aug[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(aug[rank], aug[piv]);
    std::int64_t inv = ff_detail::mod_inverse(aug[rank][col], a.p);
    for (auto& v : aug[rank]) v = (v * inv) % a.p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      std::int64_t s = aug[r][col];
      for (int j = col; j <= cols; ++j)
        aug[r][j] = ((aug[r][j] - s * aug[rank][j]) % a.p + a.p) % a.p;
    }
    pivot_col[col] = rank;
    ++rank;
  }
  std::vector<std::int64_t> y(cols, 0);
  for (int col = 0; col < cols; ++col)
    if (pivot_col[col] >= 0) y[col] = aug[pivot_col[col]][cols];
  GroundConfig cfg{a.p, a.e, 0};
  cfg.q = static_cast<std::int64_t>(FieldRegistry::pow_int(a.p, a.e));
  FieldElem r = FieldElem::from_coords(cfg, d, y);
  if (!ff_equal(ff_detail::lift_to(r, a.m), a)) throw std::domain_error("ff_descend: element not in subfield");
  return r;
}

// Canonical element order: smaller minimal tower degree first, then
// lexicographic coordinates in the joint field.
inline bool ff_less(const FieldElem& a, const FieldElem& b) {
  int da = ff_minimal_degree(a), db = ff_minimal_degree(b);
  if (da != db) return da < db;
  int m = ff_detail::unify_degree(a, b);
  return ff_detail::lift_to(a, m).c < ff_detail::lift_to(b, m).c;
}

inline std::string ff_to_string(const FieldElem& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = static_cast<int>(a.c.size()) - 1; i >= 0; --i) {
    if (a.c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(a.c[i]);
    } else {
      if (a.c[i] != 1) out += std::to_string(a.c[i]) + "*";
      out += (i == 1) ? "w" : "w^" + std::to_string(i);
    }
  }
  return out;
}

// Solutions of sum_i a_i * c^(q^i) = target over the tower.
struct AdditiveSolveResult {
  int ext_m = 1;                     // tower degree of the solution field over F_q
  std::vector<FieldElem> solutions;  // all solutions in that field, canonically ordered
  int kernel_dim_q = 0;              // F_q-dimension of the homogeneous kernel there
};

namespace ff_detail {

struct LinearSystem {
  // Augmented F_p system rows x (cols + 1).
  std::vector<std::vector<std::int64_t>> aug;
  std::int64_t p;
  int cols;

  // Returns particular solution and kernel basis, or nullopt if inconsistent.
  std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::vector<std::int64_t>>>> solve() {
    int rows = static_cast<int>(aug.size());
    std::vector<int> pivot_of_col(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
      int piv = -1;
      for (int r = rank; r < rows; ++r)
        if (aug[r][col] != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(aug[rank], aug[piv]);
      std::int64_t inv = mod_inverse(aug[rank][col], p);
      for (auto& v : aug[rank]) v = (v * inv) % p;
      for (int r = 0; r < rows; ++r) {
        if (r == rank || aug[r][col] == 0) continue;
        std::int64_t s = aug[r][col];
        for (int j = col; j <= cols; ++j)
          aug[r][j] = ((aug[r][j] - s * aug[rank][j]) % p + p) % p;
      }
      pivot_of_col[col] = rank;
      ++rank;
    }
    for (int r = rank; r < rows; ++r)
      if (aug[r][cols] != 0) return std::nullopt;
    std::vector<std::int64_t> part(cols, 0);
    for (int col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0) part[col] = aug[pivot_of_col[col]][cols];
    std::vector<std::vector<std::int64_t>> kernel;
    for (int col = 0; col < cols; ++col) {
      if (pivot_of_col[col] >= 0) continue;
      std::vector<std::int64_t> v(cols, 0);
      v[col] = 1;
      for (int c2 = 0; c2 < cols; ++c2)
        if (pivot_of_col[c2] >= 0)
          v[c2] = ((-aug[pivot_of_col[c2]][col]) % p + p) % p;
      kernel.push_back(std::move(v));
    }
    return std::make_pair(std::move(part), std::move(kernel));
  }
};

}  // namespace ff_detail

// All solutions c of sum a_i c^(q^i) = target, searched over tower degrees
// m0*s for s = 1, 2, ...; returns the solutions in the first degree where
// the system is consistent.  max_ext caps the search.
inline AdditiveSolveResult additive_solve(const GroundConfig& cfg,
                                          const std::vector<std::pair<int, FieldElem>>& coeffs,
                                          const FieldElem& target,
                                          int max_ext = 64,
                                          std::size_t max_enumerate = 1 << 16) {
  if (coeffs.empty()) throw std::domain_error("additive_solve: empty map");
  int m0 = target.m;
  for (const auto& [i, a] : coeffs) {
    if (i < 0) throw std::domain_error("additive_solve: negative twist");
    m0 = static_cast<int>(std::lcm(m0, a.m));
  }
  for (int s = 1; s * m0 <= std::max(max_ext, m0); ++s) {
    int m = m0 * s;
    int n = cfg.e * m;
    std::vector<FieldElem> lifted;
    lifted.reserve(coeffs.size());
    for (const auto& [i, a] : coeffs) lifted.push_back(ff_detail::lift_to(a, m));
    FieldElem rhs = ff_detail::lift_to(target, m);
    ff_detail::LinearSystem sys;
    sys.p = cfg.p;
    sys.cols = n;
    sys.aug.assign(n, std::vector<std::int64_t>(n + 1, 0));
    for (int j = 0; j < n; ++j) {
      FieldElem basis = FieldElem::zero(cfg, m);
      basis.c[j] = 1;
      FieldElem img = FieldElem::zero(cfg, m);
      for (std::size_t t = 0; t < coeffs.size(); ++t) {
        Int exp = 1;
        for (int k = 0; k < coeffs[t].first; ++k) exp *= cfg.q;
        img = ff_add(img, ff_mul(lifted[t], ff_pow(basis, exp)));
      }
      for (int i = 0; i < n; ++i) sys.aug[i][j] = img.c[i];
    }
    for (int i = 0; i < n; ++i) sys.aug[i][n] = rhs.c[i];
    auto sol = sys.solve();
    if (!sol) continue;
    auto& [part, kernel] = *sol;
    if (kernel.size() % cfg.e != 0)
      throw std::logic_error("additive_solve: kernel is not an F_q-space");
    AdditiveSolveResult res;
    res.ext_m = m;
    res.kernel_dim_q = static_cast<int>(kernel.size()) / cfg.e;
    // Enumerate part + span(kernel) over F_p.
    std::size_t count = 1;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      count *= static_cast<std::size_t>(cfg.p);
      if (count > max_enumerate) throw std::domain_error("additive_solve: too many solutions to enumerate");
    }
    std::vector<std::int64_t> lambda(kernel.size(), 0);
    for (std::size_t it = 0; it < count; ++it) {
      std::vector<std::int64_t> v = part;
      std::size_t rem = it;
      for (std::size_t k = 0; k < kernel.size(); ++k) {
        std::int64_t lam = static_cast<std::int64_t>(rem % cfg.p);
        rem /= cfg.p;
        if (lam == 0) continue;
        for (int j = 0; j < n; ++j) v[j] = (v[j] + lam * kernel[k][j]) % cfg.p;
      }
      res.solutions.push_back(FieldElem::from_coords(cfg, m, std::move(v)));
    }
    std::sort(res.solutions.begin(), res.solutions.end(), ff_less);
    return res;
  }
  throw std::domain_error("additive_solve: no solution within extension budget");
}

// F_q-basis of the kernel of sum a_i c^(q^i), searched over growing tower
// degrees until the expected dimension is reached (or the budget runs out,
// in which case the basis found so far is returned with its degree).
struct AdditiveKernelResult {
  int ext_m = 1;
  std::vector<FieldElem> basis;  // F_q-basis, canonically ordered
};

inline AdditiveKernelResult additive_kernel(const GroundConfig& cfg,
                                            const std::vector<std::pair<int, FieldElem>>& coeffs,
                                            int expected_dim,
                                            int max_ext = 64) {
  int m0 = 1;
  for (const auto& [i, a] : coeffs) m0 = static_cast<int>(std::lcm(m0, a.m));
  AdditiveKernelResult best;
  best.ext_m = m0;
  for (int s = 1; s * m0 <= std::max(max_ext, m0); ++s) {
    int m = m0 * s;
    int n = cfg.e * m;
    std::vector<FieldElem> lifted;
    for (const auto& [i, a] : coeffs) lifted.push_back(ff_detail::lift_to(a, m));
    ff_detail::LinearSystem sys;
    sys.p = cfg.p;
    sys.cols = n;
    sys.aug.assign(n, std::vector<std::int64_t>(n + 1, 0));
    for (int j = 0; j < n; ++j) {
      FieldElem basis = FieldElem::zero(cfg, m);
      basis.c[j] = 1;
      FieldElem img = FieldElem::zero(cfg, m);
      for (std::size_t t = 0; t < coeffs.size(); ++t) {
        Int exp = 1;
        for (int k = 0; k < coeffs[t].first; ++k) exp *= cfg.q;
        img = ff_add(img, ff_mul(lifted[t], ff_pow(basis, exp)));
      }
      for (int i = 0; i < n; ++i) sys.aug[i][j] = img.c[i];
    }
    auto sol = sys.solve();
    if (!sol) continue;
    auto& kernel = sol->second;
    // Extract an F_q-basis: greedily take kernel vectors independent over
    // F_q, tracking the F_p-span of all F_q-multiples taken so far.  Span
    // rows are zero left of their pivot and keyed by it, so one ascending
    // reduction pass decides membership.
    std::vector<FieldElem> qbasis;
    std::map<int, std::vector<std::int64_t>> span;
    auto reduce = [&](std::vector<std::int64_t> v) {
      for (const auto& [piv, row] : span) {
        if (v[piv] == 0) continue;
        std::int64_t s2 = (v[piv] * ff_detail::mod_inverse(row[piv], cfg.p)) % cfg.p;
        for (int i = piv; i < n; ++i) v[i] = ((v[i] - s2 * row[i]) % cfg.p + cfg.p) % cfg.p;
      }
      return v;
    };
    auto insert_row = [&](const std::vector<std::int64_t>& raw) {
      std::vector<std::int64_t> row = reduce(raw);
      for (int i = 0; i < n; ++i)
        if (row[i] != 0) { span.emplace(i, std::move(row)); return true; }
      return false;
    };
    for (const auto& kv : kernel) {
      std::vector<std::int64_t> red = reduce(kv);
      if (std::all_of(red.begin(), red.end(), [](std::int64_t x) { return x == 0; })) continue;
      FieldElem elem = FieldElem::from_coords(cfg, m, kv);
      qbasis.push_back(elem);
      // F_p-rows for elem * w^k, k < e, w the base-field generator.
      for (int k = 0; k < cfg.e; ++k) {
        FieldElem mult = elem;
        if (k > 0) mult = ff_mul(elem, ff_pow(FieldElem::generator(cfg, 1), k));
        insert_row(mult.c);
      }
    }
    if (static_cast<int>(qbasis.size()) > static_cast<int>(best.basis.size())) {
      std::sort(qbasis.begin(), qbasis.end(), ff_less);
      best.ext_m = m;
      best.basis = std::move(qbasis);
    }
    if (static_cast<int>(best.basis.size()) >= expected_dim) return best;
  }
  return best;
}

}  // namespace valmod

#endif  // VALMOD_FINITE_FIELD_HPP_
