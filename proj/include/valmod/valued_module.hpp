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

#ifndef VALMOD_VALUED_MODULE_HPP_
#define VALMOD_VALUED_MODULE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "valmod/chain.hpp"
#include "valmod/hahn_series.hpp"
#include "valmod/ore_poly.hpp"

namespace valmod {

namespace vm_detail {

// Verdicts are only sound on exact data, so truncated series are rejected
// at every entry point of this module.
inline void require_exact(const HahnSeries& x, const char* what) {
  if (!x.is_exact()) throw std::domain_error(std::string(what) + ": truncated series rejected");
}

inline void require_exact(const OrePoly& r, const char* what) {
  if (r.is_zero()) throw std::domain_error(std::string(what) + ": zero polynomial");
  if (!r.is_exact()) throw std::domain_error(std::string(what) + ": truncated coefficients rejected");
}

// Leading coefficients of the monomials achieving the tropical minimum at
// g: the additive equation sum a_i c^(q^i) governs cancellation there.
inline std::vector<std::pair<int, FieldElem>> reduced_coeffs(const OrePoly& r, const Rat& g) {
  std::vector<std::pair<int, FieldElem>> out;
  for (int i : achieving_degrees(g, tropicalize(r), r.cfg.q))
    out.emplace_back(i, r.coeffs[i].leading_coeff());
  return out;
}

// Extension search cap for reduced equations: the kernel of an additive
// polynomial of q-degree d lies in a tower extension of degree at most
// q^d - 1 (the Frobenius acts as an invertible F_q-linear map on it).
inline int extension_cap(std::int64_t q, int d, int budget) {
  std::int64_t cap = 1;
  for (int i = 0; i < d && cap < 64; ++i) cap *= q;
  cap = std::max<std::int64_t>(cap, 2);
  return static_cast<int>(std::min<std::int64_t>(std::max<std::int64_t>(budget, 8), std::min<std::int64_t>(cap, 64)));
}

}  // namespace vm_detail

// Comparison of v(x.r) against the tropical prediction v(x) . r.
struct RegularityVerdict {
  ChainValue v_image;      // v(x.r)
  ChainValue v_predicted;  // v(x) . r
  bool regular = false;
};

inline RegularityVerdict regularity(const HahnSeries& x, const OrePoly& r) {
  vm_detail::require_exact(r, "regularity");
  vm_detail::require_exact(x, "regularity");
  RegularityVerdict v;
  v.v_image = ore_eval(x, r).valuation();
  v.v_predicted = chain_eval(x.valuation(), tropicalize(r), r.cfg.q);
  v.regular = v.v_image == v.v_predicted;
  return v;
}

// Potential jumps whose reduced equation has a nonzero root somewhere in
// the tower; on this module every breakpoint qualifies once the tower is
// searched far enough, so the budget is the only practical restriction.
inline JumpSet jump_values_in_M(const OrePoly& r, const Rat& /*prec*/, int budget) {
  vm_detail::require_exact(r, "jump_values_in_M");
  JumpSet out;
  for (const Jump& j : potential_jumps(tropicalize(r), r.cfg.q).jumps) {
    auto coeffs = vm_detail::reduced_coeffs(r, j.gamma);
    int expected = j.deg_hi - j.deg_lo;
    auto kern = additive_kernel(r.cfg, coeffs, expected,
                                vm_detail::extension_cap(r.cfg.q, expected, budget));
    if (!kern.basis.empty()) out.jumps.push_back(j);
  }
  return out;
}

enum class SolveStatus { precision_reached, budget_exhausted };

struct SolveStep {
  HahnSeries term;               // monomial added to the approximant
  ChainValue residual_valuation;  // v(y.r - z) after adding it
  int tower_m;                   // coefficient tower degree so far
};

// A certified pseudo-Cauchy prefix: approximants whose residual valuations
// strictly increase.
struct ApproximationTrace {
  std::vector<HahnSeries> approximants;        // starts with 0
  std::vector<ChainValue> residual_valuations;  // aligned with approximants
  std::vector<SolveStep> steps;
  SolveStatus status = SolveStatus::precision_reached;
  int tower_m = 1;
};

// Newton-style iteration along the chain: each round cancels the leading
// residual coefficient by solving the reduced additive equation at
// gamma = chain_inverse(v(residual)).  Stops once v(y.r - z) > prec or the
// term budget runs out; residual valuations increase strictly either way.
inline std::pair<HahnSeries, ApproximationTrace> solve_regular(const OrePoly& r,
                                                               const HahnSeries& z,
                                                               const Rat& prec, int budget) {
  vm_detail::require_exact(r, "solve_regular");
  vm_detail::require_exact(z, "solve_regular");
  if (z.is_zero()) throw std::domain_error("solve_regular: zero right-hand side, use kernel_basis");
  const GroundConfig& cfg = r.cfg;
  const TropPoly trop = tropicalize(r);
  ApproximationTrace trace;
  HahnSeries y = HahnSeries::zero(r.cfg);
  HahnSeries res = z;
  trace.approximants.push_back(y);
  trace.residual_valuations.push_back(res.valuation());
  int steps = 0;
  for (;;) {
    ChainValue delta = res.valuation();
    if (delta.is_inf || delta.v > prec) {
      trace.status = SolveStatus::precision_reached;
      break;
    }
    if (steps >= budget) {
      trace.status = SolveStatus::budget_exhausted;
      break;
    }
    ChainValue gamma = chain_inverse(delta, trop, cfg.q);
    auto reduced = vm_detail::reduced_coeffs(r, gamma.v);
    int d = reduced.empty() ? 0 : reduced.back().first - reduced.front().first;
    auto sol = additive_solve(cfg, reduced, res.leading_coeff(),
                              vm_detail::extension_cap(cfg.q, d, budget));
    HahnSeries term = HahnSeries::monomial(r.cfg, sol.solutions.front(), gamma.v);
    y = hs_add(y, term);
    res = hs_sub(res, ore_eval(term, r));
    if (!(res.valuation() > delta))
      throw std::logic_error("solve_regular: residual valuation did not increase");
    ++steps;
    trace.approximants.push_back(y);
    trace.residual_valuations.push_back(res.valuation());
    trace.steps.push_back(SolveStep{term, res.valuation(), y.tower_degree()});
  }
  trace.tower_m = y.tower_degree();
  return {std::move(y), std::move(trace)};
}

namespace vm_detail {

// Corrects x until v(x.r) > threshold, one reduced equation per round.
// Non-breakpoint rounds have a unique solution (a q-power root); at
// breakpoints the lexicographically least solution is taken.  Returns
// false if the step budget was insufficient.
inline bool lift_root(HahnSeries& x, const OrePoly& r, const ChainValue& threshold,
                      int step_budget, int ext_budget) {
  const GroundConfig& cfg = r.cfg;
  const TropPoly trop = tropicalize(r);
  for (int step = 0; step < step_budget; ++step) {
    HahnSeries image = ore_eval(x, r);
    ChainValue delta = image.valuation();
    if (delta > threshold) return true;
    ChainValue gamma = chain_inverse(delta, trop, cfg.q);
    auto reduced = reduced_coeffs(r, gamma.v);
    int d = reduced.empty() ? 0 : reduced.back().first - reduced.front().first;
    auto sol = additive_solve(cfg, reduced, ff_neg(image.leading_coeff()),
                              extension_cap(cfg.q, d, ext_budget));
    HahnSeries term = HahnSeries::monomial(r.cfg, sol.solutions.front(), gamma.v);
    x = hs_add(x, term);
    if (!(ore_eval(x, r).valuation() > delta))
      throw std::logic_error("lift_root: residual valuation did not increase");
  }
  return ore_eval(x, r).valuation() > threshold;
}

}  // namespace vm_detail

// One valuation level of the kernel: the reduced equation's root space and
// its lifts against both r and the jump subpolynomial r_gamma.
struct KernelStratum {
  Rat gamma;
  OrePoly r_gamma;
  int dim_q = 0;  // F_q-dimension of the reduced root space
  int tower_m = 1;
  std::vector<HahnSeries> basis;         // approximate roots of r at valuation gamma
  std::vector<HahnSeries> rgamma_basis;  // matched approximate roots of r_gamma
  bool complete = true;
};

struct KernelStratification {
  std::vector<KernelStratum> strata;  // ascending gamma
  Int total_count = 1;                // product over strata of q^dim
  ChainValue cert_threshold = ChainValue::infinity();
  bool complete = true;
};

// Stratified approximate kernel of x -> x.r.  Every stratum sits at a
// potential jump; roots are certified to v(x.r) > chain_eval(gamma + prec)
// per stratum or flagged incomplete.
inline KernelStratification kernel_basis(const OrePoly& r, const Rat& prec, int budget) {
  vm_detail::require_exact(r, "kernel_basis");
  const GroundConfig& cfg = r.cfg;
  const TropPoly trop = tropicalize(r);
  KernelStratification out;
  for (const Jump& j : potential_jumps(trop, cfg.q).jumps) {
    auto coeffs = vm_detail::reduced_coeffs(r, j.gamma);
    int expected = j.deg_hi - j.deg_lo;
    auto kern = additive_kernel(cfg, coeffs, expected,
                                vm_detail::extension_cap(cfg.q, expected, budget));
    if (kern.basis.empty()) continue;
    KernelStratum stratum;
    stratum.gamma = j.gamma;
    stratum.r_gamma = subpoly_at(r, ChainValue::finite(j.gamma));
    stratum.dim_q = static_cast<int>(kern.basis.size());
    stratum.tower_m = kern.ext_m;
    stratum.complete = stratum.dim_q == expected;
    ChainValue threshold = chain_eval(ChainValue::finite(j.gamma + prec), trop, cfg.q);
    for (const FieldElem& c : kern.basis) {
      HahnSeries root = HahnSeries::monomial(r.cfg, c, j.gamma);
      if (!vm_detail::lift_root(root, r, threshold, 4 * budget + 16, budget))
        stratum.complete = false;
      HahnSeries groot = HahnSeries::monomial(r.cfg, c, j.gamma);
      if (!vm_detail::lift_root(groot, stratum.r_gamma, threshold, 4 * budget + 16, budget))
        stratum.complete = false;
      stratum.basis.push_back(std::move(root));
      stratum.rgamma_basis.push_back(std::move(groot));
    }
    for (int k = 0; k < stratum.dim_q; ++k) out.total_count *= cfg.q;
    out.complete = out.complete && stratum.complete;
    out.cert_threshold = ext_min(out.cert_threshold, threshold);
    out.strata.push_back(std::move(stratum));
  }
  return out;
}

struct DecompositionResult {
  HahnSeries a;    // combination of lifted stratum roots
  HahnSeries eps;  // regular remainder
  int rounds = 0;
};

namespace vm_detail {

// Extends the lifted root by one correction term against r.
inline void lift_one(HahnSeries& root, const OrePoly& r) {
  const TropPoly trop = tropicalize(r);
  HahnSeries image = ore_eval(root, r);
  ChainValue delta = image.valuation();
  if (delta.is_inf) return;
  ChainValue gamma = chain_inverse(delta, trop, r.cfg.q);
  auto reduced = reduced_coeffs(r, gamma.v);
  int d = reduced.empty() ? 0 : reduced.back().first - reduced.front().first;
  auto sol = additive_solve(r.cfg, reduced, ff_neg(image.leading_coeff()),
                            extension_cap(r.cfg.q, d, 24));
  root = hs_add(root, HahnSeries::monomial(r.cfg, sol.solutions.front(), gamma.v));
}

// Membership of the leading coefficient in the stratum equation's kernel.
inline bool in_reduced_kernel(const GroundConfig& cfg,
                              const std::vector<std::pair<int, FieldElem>>& reduced,
                              const FieldElem& lead) {
  FieldElem check = FieldElem::zero(cfg, 1);
  for (const auto& [i, a] : reduced) {
    Int exp = 1;
    for (int k = 0; k < i; ++k) exp *= cfg.q;
    check = ff_add(check, ff_mul(a, ff_pow(lead, exp)));
  }
  return check.is_zero();
}

}  // namespace vm_detail

// Splits x into a combination of lifted stratum roots and a regular
// remainder.  Each round subtracts the root whose leading term matches the
// irregular level of the current remainder, extending the lift until the
// remainder's verdict turns regular (checked exactly) or lands on the next
// stratum.  Rounds are bounded by the jump count of r; prec only deepens
// the root lifts beyond the minimal regular point when that is safe.
inline DecompositionResult regular_decomposition(const HahnSeries& x, const OrePoly& r,
                                                 const Rat& prec) {
  vm_detail::require_exact(r, "regular_decomposition");
  vm_detail::require_exact(x, "regular_decomposition");
  if (x.is_zero()) throw std::domain_error("regular_decomposition: zero element");
  const GroundConfig& cfg = r.cfg;
  const TropPoly trop = tropicalize(r);
  const JumpSet jumps = potential_jumps(trop, cfg.q);
  const int max_corrections = 64 + 4 * static_cast<int>(x.terms.size());
  DecompositionResult res;
  res.a = HahnSeries::zero(cfg);
  res.eps = x;
  while (true) {
    if (res.eps.is_zero() || regularity(res.eps, r).regular) break;
    Rat gamma = res.eps.valuation().v;
    auto reduced = vm_detail::reduced_coeffs(r, gamma);
    // Irregularity forces v(eps) onto a jump with its leading coefficient
    // in the stratum kernel; anything else indicates a broken invariant.
    if (!jumps.contains(gamma) || res.rounds >= static_cast<int>(jumps.jumps.size()) ||
        !vm_detail::in_reduced_kernel(cfg, reduced, res.eps.leading_coeff()))
      throw std::logic_error("regular_decomposition: irregular level is not a liftable stratum");
    HahnSeries root = HahnSeries::monomial(cfg, res.eps.leading_coeff(), gamma);
    HahnSeries rem = hs_sub(res.eps, root);
    // Commit once the remainder is settled: zero, exactly regular, or
    // parked on a deeper stratum for the next round.
    for (int step = 0; step < max_corrections; ++step) {
      if (rem.is_zero() || regularity(rem, r).regular) break;
      Rat g2 = rem.valuation().v;
      if (g2 > gamma && jumps.contains(g2) &&
          vm_detail::in_reduced_kernel(cfg, vm_detail::reduced_coeffs(r, g2), rem.leading_coeff()))
        break;
      vm_detail::lift_one(root, r);
      rem = hs_sub(res.eps, root);
    }
    if (!rem.is_zero() && !regularity(rem, r).regular && !(rem.valuation().v > gamma))
      throw std::logic_error("regular_decomposition: remainder failed to settle");
    // Optional refinement toward the certification threshold, kept only
    // while it preserves the remainder's verdict.
    ChainValue threshold = chain_eval(ChainValue::finite(gamma + prec), trop, cfg.q);
    for (int step = 0; step < 64; ++step) {
      if (rem.is_zero()) break;
      HahnSeries image = ore_eval(root, r);
      if (image.valuation() > threshold) break;
      HahnSeries deeper = root;
      vm_detail::lift_one(deeper, r);
      if (!(ore_eval(deeper, r).valuation() > image.valuation())) break;
      HahnSeries drem = hs_sub(res.eps, deeper);
      if (!drem.is_zero() && !regularity(drem, r).regular) break;
      root = std::move(deeper);
      rem = hs_sub(res.eps, root);
    }
    res.a = hs_add(res.a, root);
    res.eps = std::move(rem);
    ++res.rounds;
  }
  return res;
}

enum class PcKind { affine_evidence, stabilized, irregular_pattern };

struct PcVerdict {
  PcKind kind = PcKind::irregular_pattern;
  std::vector<ChainValue> residuals;  // v(a_k . r - b) over the window
  std::string note;
};

// Finite-window classification of a pseudo-Cauchy sequence against the
// target (r, b).  Evidence only: the window cannot prove a limit.
inline PcVerdict pc_classify(const std::vector<HahnSeries>& seq, const OrePoly& r,
                             const HahnSeries& b) {
  vm_detail::require_exact(r, "pc_classify");
  if (seq.size() < 2) throw std::domain_error("pc_classify: need at least two approximants");
  for (const HahnSeries& a : seq) vm_detail::require_exact(a, "pc_classify");
  ExtRat last_diff = ExtRat::finite(Rat(0));
  bool first = true;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    ExtRat d = hs_sub(seq[k], seq[k - 1]).valuation();
    if (d.is_inf || (!first && !(d > last_diff)))
      throw std::domain_error("pc_classify: not a pseudo-Cauchy sequence");
    last_diff = d;
    first = false;
  }
  PcVerdict out;
  for (const HahnSeries& a : seq) out.residuals.push_back(hs_sub(ore_eval(a, r), b).valuation());
  bool increasing = true;
  for (std::size_t k = 1; k < out.residuals.size(); ++k) {
    if (!(out.residuals[k] > out.residuals[k - 1])) increasing = false;
  }
  const std::size_t n = out.residuals.size();
  bool stabilized_tail = out.residuals[n - 1] == out.residuals[n - 2];
  if (increasing) {
    out.kind = PcKind::affine_evidence;
    out.note = "residual valuations strictly increase over the window (finite-window evidence)";
  } else if (stabilized_tail) {
    out.kind = PcKind::stabilized;
    out.note = "residual valuations stabilize over the window (finite-window evidence)";
  } else {
    out.kind = PcKind::irregular_pattern;
    out.note = "residual valuations neither increase throughout nor stabilize at the tail";
  }
  return out;
}

struct BallInvarianceReport {
  RegularityVerdict x_verdict;
  RegularityVerdict y_verdict;
  bool agree = false;
};

// Regularity only depends on the open ball around x: if v(x - y) > v(x)
// the verdicts must coincide.
inline BallInvarianceReport ball_regularity_invariance(const HahnSeries& x, const HahnSeries& y,
                                                       const OrePoly& r) {
  vm_detail::require_exact(r, "ball_regularity_invariance");
  vm_detail::require_exact(x, "ball_regularity_invariance");
  vm_detail::require_exact(y, "ball_regularity_invariance");
  if (!(hs_sub(x, y).valuation() > x.valuation()))
    throw std::domain_error("ball_regularity_invariance: y is not in the open ball around x");
  BallInvarianceReport rep;
  rep.x_verdict = regularity(x, r);
  rep.y_verdict = regularity(y, r);
  rep.agree = rep.x_verdict.regular == rep.y_verdict.regular;
  return rep;
}

}  // namespace valmod

#endif  // VALMOD_VALUED_MODULE_HPP_
