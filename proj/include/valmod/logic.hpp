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

#ifndef VALMOD_LOGIC_HPP_
#define VALMOD_LOGIC_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "valmod/formula.hpp"
#include "valmod/interval_set.hpp"
#include "valmod/piecewise.hpp"

namespace valmod {

namespace logic_detail {

inline bool term_mentions(const Term& t, const std::string& x) {
  return t.base == Term::Base::variable && t.var == x;
}

// Folds the op chain of a term rooted at x into one piecewise map.
inline PLFunction pl_of_ops(const std::vector<TermOp>& ops, std::int64_t q) {
  PLFunction f = PLFunction::identity();
  for (const TermOp& op : ops) {
    if (op.inverse) {
      const auto& [deg, c] = *op.trop.lines.begin();
      f = f.then_mono_inverse(deg, c, q);
    } else {
      f = f.then_trop(op.trop, q);
    }
  }
  return f;
}

// Solutions of f(x) ? c over Q u {inf}, where f fixes inf and restricts to
// a strictly increasing bijection of Q.
inline IntervalSet solve_pl_vs_const(const PLFunction& f, Cmp cmp, const ExtRat& c) {
  if (c.is_inf) {
    switch (cmp) {
      case Cmp::lt: return IntervalSet::rationals();
      case Cmp::le: return IntervalSet::everything();
      case Cmp::eq: return IntervalSet::inf_point();
      case Cmp::ne: return IntervalSet::rationals();
      case Cmp::ge: return IntervalSet::inf_point();
      default: return IntervalSet::empty();
    }
  }
  Rat x0 = f.inverse(c.v);
  IntervalSet fin;
  switch (cmp) {
    case Cmp::lt: fin = IntervalSet::below(x0, false); break;
    case Cmp::le: fin = IntervalSet::below(x0, true); break;
    case Cmp::eq: fin = IntervalSet::point(x0); break;
    case Cmp::ne: fin = set_complement(IntervalSet::point(x0)); break;
    case Cmp::ge: fin = IntervalSet::above(x0, true); break;
    default: fin = IntervalSet::above(x0, false); break;
  }
  // f(inf) = inf compares against finite c as "greater".
  bool inf_in = cmp == Cmp::ne || cmp == Cmp::ge || cmp == Cmp::gt;
  if (!inf_in) fin.has_inf = false;
  if (inf_in && !fin.has_inf) fin.has_inf = true;
  return fin;
}

inline Cmp cmp_converse(Cmp c) {
  switch (c) {
    case Cmp::lt: return Cmp::gt;
    case Cmp::le: return Cmp::ge;
    case Cmp::ge: return Cmp::le;
    case Cmp::gt: return Cmp::lt;
    default: return c;
  }
}

// Merged linear regions of two piecewise maps; closed sampling is valid on
// region closures because both maps are continuous.
inline IntervalSet solve_pl_vs_pl(const PLFunction& f, Cmp cmp, const PLFunction& g,
                                  std::int64_t q) {
  (void)q;
  std::vector<Rat> cuts = f.breakpoints();
  for (const Rat& b : g.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  IntervalSet fin = IntervalSet::empty();
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    Rat sample;
    if (cuts.empty())
      sample = Rat(0);
    else if (k == 0)
      sample = cuts.front() - 1;
    else if (k == cuts.size())
      sample = cuts.back() + 1;
    else
      sample = (cuts[k - 1] + cuts[k]) / 2;
    const PLPiece& pf = f.piece_at(sample);
    const PLPiece& pg = g.piece_at(sample);
    std::optional<Rat> lo = k == 0 ? std::optional<Rat>{} : std::optional<Rat>{cuts[k - 1]};
    std::optional<Rat> hi = k == cuts.size() ? std::optional<Rat>{} : std::optional<Rat>{cuts[k]};
    auto region = [&](const std::optional<Rat>& a, bool ac, const std::optional<Rat>& b,
                      bool bc) -> IntervalSet {
      if (!a && !b) return IntervalSet::rationals();
      if (!a) return IntervalSet::below(*b, bc);
      if (!b) return IntervalSet::above(*a, ac);
      if (*a > *b || (*a == *b && !(ac && bc))) return IntervalSet::empty();
      if (*a == *b) return IntervalSet::point(*a);
      return IntervalSet::between(*a, ac, *b, bc);
    };
    Rat da = pf.slope - pg.slope;
    Rat db = pf.intercept - pg.intercept;
    IntervalSet sol;
    if (da == 0) {
      bool holds = cmp_holds(cmp, ExtRat::finite(db), ExtRat::finite(Rat(0)));
      sol = holds ? region(lo, true, hi, true) : IntervalSet::empty();
    } else {
      Rat xs = -db / da;  // d(xs) = 0
      bool rising = da > 0;
      IntervalSet eqs = IntervalSet::point(xs);
      IntervalSet pos = rising ? IntervalSet::above(xs, false) : IntervalSet::below(xs, false);
      IntervalSet neg = rising ? IntervalSet::below(xs, false) : IntervalSet::above(xs, false);
      switch (cmp) {
        case Cmp::lt: sol = neg; break;
        case Cmp::le: sol = set_union(neg, eqs); break;
        case Cmp::eq: sol = eqs; break;
        case Cmp::ne: sol = set_union(neg, pos); break;
        case Cmp::ge: sol = set_union(pos, eqs); break;
        default: sol = pos; break;
      }
      sol = set_intersect(sol, region(lo, true, hi, true));
      fin = set_union(fin, sol);
      continue;
    }
    fin = set_union(fin, set_intersect(sol, region(lo, true, hi, true)));
  }
  // Both sides are inf at x = inf.
  bool inf_in = cmp == Cmp::le || cmp == Cmp::eq || cmp == Cmp::ge;
  fin.has_inf = inf_in;
  return fin;
}

}  // namespace logic_detail

// Exact solution set in x of a single comparison; env supplies all other
// free variables.
inline IntervalSet atom_solution_set(const FormulaPtr& atom, const Env& env,
                                     const std::string& x, std::int64_t q) {
  if (atom->kind != Formula::Kind::atom)
    throw std::domain_error("atom_solution_set: atomic formula required");
  using logic_detail::term_mentions;
  bool lx = term_mentions(atom->lhs, x);
  bool rx = term_mentions(atom->rhs, x);
  if (!lx && !rx) {
    bool holds = cmp_holds(atom->cmp, eval_term(atom->lhs, env, q),
                           eval_term(atom->rhs, env, q));
    return holds ? IntervalSet::everything() : IntervalSet::empty();
  }
  if (lx && rx) {
    return logic_detail::solve_pl_vs_pl(logic_detail::pl_of_ops(atom->lhs.ops, q), atom->cmp,
                                        logic_detail::pl_of_ops(atom->rhs.ops, q), q);
  }
  const Term& xs = lx ? atom->lhs : atom->rhs;
  const Term& cs = lx ? atom->rhs : atom->lhs;
  Cmp cmp = lx ? atom->cmp : logic_detail::cmp_converse(atom->cmp);
  return logic_detail::solve_pl_vs_const(logic_detail::pl_of_ops(xs.ops, q), cmp,
                                         eval_term(cs, env, q));
}

// Solution set of a quantifier-free formula in the single variable x.
inline IntervalSet solution_set(const FormulaPtr& f, const Env& env, const std::string& x,
                                std::int64_t q) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f->truth ? IntervalSet::everything() : IntervalSet::empty();
    case Formula::Kind::atom:
      return atom_solution_set(f, env, x, q);
    case Formula::Kind::negation:
      return set_complement(solution_set(f->children.front(), env, x, q));
    case Formula::Kind::conjunction: {
      IntervalSet s = IntervalSet::everything();
      for (const auto& c : f->children) s = set_intersect(s, solution_set(c, env, x, q));
      return s;
    }
    case Formula::Kind::disjunction: {
      IntervalSet s = IntervalSet::empty();
      for (const auto& c : f->children) s = set_union(s, solution_set(c, env, x, q));
      return s;
    }
    default:
      throw std::domain_error("solution_set: quantifier-free formula required");
  }
}

// ---- Simplification ----

namespace logic_detail {

inline bool term_is_ground(const Term& t) { return t.base != Term::Base::variable; }

inline Term simplify_term(const Term& t) {
  Term out = t;
  if (out.base == Term::Base::infinity) {
    out.ops.clear();  // every operation fixes inf
    return out;
  }
  std::vector<TermOp> kept;
  for (const TermOp& op : out.ops) {
    bool identity = op.trop.lines.size() == 1 && op.trop.lines.begin()->first == 0 &&
                    op.trop.lines.begin()->second == 0;
    if (!identity) kept.push_back(op);
  }
  out.ops = std::move(kept);
  return out;
}

inline FormulaPtr simplify_once(const FormulaPtr& f, std::int64_t q) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f;
    case Formula::Kind::atom: {
      Term lhs = simplify_term(f->lhs);
      Term rhs = simplify_term(f->rhs);
      if (term_is_ground(lhs) && term_is_ground(rhs)) {
        Env empty;
        return f_truth(cmp_holds(f->cmp, eval_term(lhs, empty, q), eval_term(rhs, empty, q)));
      }
      if (lhs == rhs)
        return f_truth(f->cmp == Cmp::le || f->cmp == Cmp::eq || f->cmp == Cmp::ge);
      // Comparisons decided by inf being the top element.
      bool lhs_inf = term_is_ground(lhs) && lhs.base == Term::Base::infinity;
      bool rhs_inf = term_is_ground(rhs) && rhs.base == Term::Base::infinity;
      if (rhs_inf && f->cmp == Cmp::le) return f_truth(true);
      if (rhs_inf && f->cmp == Cmp::gt) return f_truth(false);
      if (lhs_inf && f->cmp == Cmp::ge) return f_truth(true);
      if (lhs_inf && f->cmp == Cmp::lt) return f_truth(false);
      return f_atom(std::move(lhs), f->cmp, std::move(rhs));
    }
    case Formula::Kind::negation: {
      FormulaPtr inner = simplify_once(f->children.front(), q);
      if (inner->kind == Formula::Kind::truth) return f_truth(!inner->truth);
      if (inner->kind == Formula::Kind::negation) return inner->children.front();
      if (inner->kind == Formula::Kind::atom)
        return f_atom(inner->lhs, cmp_negate(inner->cmp), inner->rhs);
      return f_not(std::move(inner));
    }
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      bool is_and = f->kind == Formula::Kind::conjunction;
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) {
        FormulaPtr s = simplify_once(c, q);
        if (s->kind == f->kind) {
          for (const auto& g : s->children) parts.push_back(g);
        } else {
          parts.push_back(std::move(s));
        }
      }
      std::vector<FormulaPtr> kept;
      for (auto& p : parts) {
        if (p->kind == Formula::Kind::truth) {
          if (p->truth == is_and) continue;       // neutral element
          return f_truth(!is_and);                // absorbing element
        }
        bool dup = false;
        for (const auto& k : kept) dup = dup || formula_equal(k, p);
        if (!dup) kept.push_back(std::move(p));
      }
      if (kept.empty()) return f_truth(is_and);
      return f_join(f->kind, std::move(kept));
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      FormulaPtr body = simplify_once(f->children.front(), q);
      if (body->kind == Formula::Kind::truth) return body;  // nonempty domain
      if (!free_vars(body).count(f->var)) return body;
      return f_quant(f->kind, f->var, std::move(body));
    }
  }
  return f;
}

}  // namespace logic_detail

inline FormulaPtr simplify(const FormulaPtr& f, std::int64_t q) {
  FormulaPtr cur = f;
  for (int round = 0; round < 8; ++round) {
    FormulaPtr next = logic_detail::simplify_once(cur, q);
    if (formula_equal(next, cur)) return next;
    cur = std::move(next);
  }
  return cur;
}

// ---- Quantifier elimination ----

namespace logic_detail {

inline FormulaPtr nnf(const FormulaPtr& f, bool positive) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f_truth(positive == f->truth);
    case Formula::Kind::atom:
      return positive ? f : f_atom(f->lhs, cmp_negate(f->cmp), f->rhs);
    case Formula::Kind::negation:
      return nnf(f->children.front(), !positive);
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      bool keep = (f->kind == Formula::Kind::conjunction) == positive;
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(nnf(c, positive));
      return f_join(keep ? Formula::Kind::conjunction : Formula::Kind::disjunction,
                    std::move(parts));
    }
    default:
      throw std::domain_error("qe_exists: quantifier-free matrix required");
  }
}

// Disjunctive normal form as conjunct lists of atoms; an empty conjunct
// list means the formula is unsatisfiable, an empty conjunct means true.
inline std::vector<std::vector<FormulaPtr>> dnf(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::truth:
      if (f->truth) return {{}};
      return {};
    case Formula::Kind::atom:
      return {{f}};
    case Formula::Kind::disjunction: {
      std::vector<std::vector<FormulaPtr>> out;
      for (const auto& c : f->children) {
        auto sub = dnf(c);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Formula::Kind::conjunction: {
      std::vector<std::vector<FormulaPtr>> out{{}};
      for (const auto& c : f->children) {
        auto sub = dnf(c);
        std::vector<std::vector<FormulaPtr>> next;
        for (const auto& left : out)
          for (const auto& right : sub) {
            if (left.size() * sub.size() > 4096)
              throw std::logic_error("dnf: matrix too large");
            std::vector<FormulaPtr> merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        out = std::move(next);
      }
      return out;
    }
    default:
      throw std::domain_error("qe_exists: quantifier-free matrix required");
  }
}

// Substitutes inf for x; op chains are dropped because every op fixes inf.
inline Term term_at_inf(const Term& t, const std::string& x) {
  if (term_mentions(t, x)) return Term::make_inf();
  return t;
}

struct Bound {
  Term term;
  bool weak;
};

// One-point or dense-interval satisfiability of ordering constraints on a
// variable over Q, with parameter terms as bounds.  Equalities substitute;
// otherwise every lower/upper pair must be compatible and single-point
// gaps must dodge the disequalities.
inline FormulaPtr langford(const std::optional<Interval>& box, const std::vector<Bound>& lowers,
                           const std::vector<Bound>& uppers, const std::vector<Term>& equalities,
                           const std::vector<Term>& disequalities) {
  std::vector<Bound> lo = lowers, up = uppers;
  if (box) {
    if (box->lo) lo.push_back(Bound{Term::make_const(*box->lo), box->lo_closed});
    if (box->hi) up.push_back(Bound{Term::make_const(*box->hi), box->hi_closed});
  }
  std::vector<FormulaPtr> parts;
  if (!equalities.empty()) {
    const Term& e = equalities.front();
    parts.push_back(f_atom(e, Cmp::lt, Term::make_inf()));
    for (std::size_t k = 1; k < equalities.size(); ++k)
      parts.push_back(f_atom(e, Cmp::eq, equalities[k]));
    for (const Bound& b : lo) parts.push_back(f_atom(b.term, b.weak ? Cmp::le : Cmp::lt, e));
    for (const Bound& b : up) parts.push_back(f_atom(e, b.weak ? Cmp::le : Cmp::lt, b.term));
    for (const Term& d : disequalities) parts.push_back(f_atom(e, Cmp::ne, d));
    return f_and(std::move(parts));
  }
  for (const Bound& l : lo) {
    // A strict pair condition below already forces l finite.
    bool strict_pair = false;
    for (const Bound& u : up) strict_pair = strict_pair || !(l.weak && u.weak);
    if (!strict_pair) parts.push_back(f_atom(l.term, Cmp::lt, Term::make_inf()));
  }
  for (const Bound& l : lo)
    for (const Bound& u : up) {
      bool both_weak = l.weak && u.weak;
      parts.push_back(f_atom(l.term, both_weak ? Cmp::le : Cmp::lt, u.term));
      if (both_weak && !disequalities.empty()) {
        std::vector<FormulaPtr> dodge;
        for (const Term& d : disequalities) dodge.push_back(f_atom(l.term, Cmp::ne, d));
        parts.push_back(f_or({f_atom(l.term, Cmp::ne, u.term), f_and(std::move(dodge))}));
      }
    }
  if (parts.empty()) return f_truth(true);
  return f_and(std::move(parts));
}

// Inverts the monomial decomposition of one linear piece, as a term
// transformation applied after the parameter side.
inline Term invert_ops_onto(const Term& s, const std::vector<PLOp>& ops) {
  Term out = s;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    TermOp op;
    op.trop.lines.emplace(it->deg, it->c);
    op.inverse = !it->inverse;
    out.ops.push_back(std::move(op));
  }
  return out;
}

inline IntervalSet piece_domain(const PLFunction& f, std::size_t k) {
  const auto& pieces = f.pieces;
  std::optional<Rat> lo = pieces[k].lo;
  std::optional<Rat> hi =
      k + 1 < pieces.size() ? pieces[k + 1].lo : std::optional<Rat>{};
  if (!lo && !hi) return IntervalSet::rationals();
  if (!lo) return IntervalSet::below(*hi, false);
  if (!hi) return IntervalSet::above(*lo, true);
  return IntervalSet::between(*lo, true, *hi, false);
}

// Existential elimination over one DNF conjunct, finite branch: concrete
// interval constraints intersect, parameter comparisons case-split over the
// pieces of the x-side maps and reduce to dense-order conditions.
inline FormulaPtr qe_conjunct_finite(const std::vector<FormulaPtr>& atoms, const std::string& x,
                                     std::int64_t q) {
  std::vector<FormulaPtr> side;       // atoms without x
  IntervalSet concrete = IntervalSet::rationals();
  struct ParamAtom {
    PLFunction f;     // x-side map
    Cmp cmp;          // with x-side on the left
    Term s;           // parameter side
  };
  std::vector<ParamAtom> params;
  Env empty_env;
  for (const FormulaPtr& a : atoms) {
    bool lx = term_mentions(a->lhs, x);
    bool rx = term_mentions(a->rhs, x);
    if (!lx && !rx) {
      side.push_back(a);
      continue;
    }
    if (lx && rx) {
      IntervalSet s = atom_solution_set(a, empty_env, x, q);
      s.has_inf = false;
      concrete = set_intersect(concrete, s);
      continue;
    }
    const Term& xt = lx ? a->lhs : a->rhs;
    const Term& st = lx ? a->rhs : a->lhs;
    Cmp cmp = lx ? a->cmp : cmp_converse(a->cmp);
    if (term_is_ground(st)) {
      IntervalSet s = solve_pl_vs_const(pl_of_ops(xt.ops, q), cmp, eval_term(st, empty_env, q));
      s.has_inf = false;
      concrete = set_intersect(concrete, s);
      continue;
    }
    params.push_back(ParamAtom{pl_of_ops(xt.ops, q), cmp, st});
  }

  // Cartesian product over the pieces of every parameter atom.
  std::vector<std::vector<std::size_t>> combos{{}};
  for (const ParamAtom& pa : params) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& base : combos)
      for (std::size_t k = 0; k < pa.f.pieces.size(); ++k) {
        if (next.size() > 4096) throw std::logic_error("qe_exists: piece explosion");
        auto ext = base;
        ext.push_back(k);
        next.push_back(std::move(ext));
      }
    combos = std::move(next);
  }

  std::vector<FormulaPtr> cases;
  for (const auto& combo : combos) {
    IntervalSet region = concrete;
    std::vector<Bound> lowers, uppers;
    std::vector<Term> equalities, disequalities;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const ParamAtom& pa = params[j];
      std::size_t k = combo[j];
      region = set_intersect(region, piece_domain(pa.f, k));
      Term tau = invert_ops_onto(pa.s, pa.f.pieces[k].ops);
      switch (pa.cmp) {
        case Cmp::lt: uppers.push_back(Bound{tau, false}); break;
        case Cmp::le: uppers.push_back(Bound{tau, true}); break;
        case Cmp::ge: lowers.push_back(Bound{tau, true}); break;
        case Cmp::gt: lowers.push_back(Bound{tau, false}); break;
        case Cmp::eq: equalities.push_back(tau); break;
        default: disequalities.push_back(tau); break;
      }
    }
    region.has_inf = false;
    if (region.parts.empty()) continue;
    for (const Interval& box : region.parts)
      cases.push_back(langford(box, lowers, uppers, equalities, disequalities));
  }
  FormulaPtr fin = cases.empty() ? f_truth(false) : f_or(std::move(cases));
  if (!side.empty()) {
    std::vector<FormulaPtr> all = side;
    all.push_back(std::move(fin));
    fin = f_and(std::move(all));
  }
  return fin;
}

inline FormulaPtr qe_conjunct(const std::vector<FormulaPtr>& atoms, const std::string& x,
                              std::int64_t q) {
  // Branch x = inf: substitute and keep the atoms as parameter conditions.
  std::vector<FormulaPtr> at_inf;
  for (const FormulaPtr& a : atoms)
    at_inf.push_back(f_atom(term_at_inf(a->lhs, x), a->cmp, term_at_inf(a->rhs, x)));
  FormulaPtr inf_branch = at_inf.empty() ? f_truth(true) : f_and(std::move(at_inf));
  FormulaPtr fin_branch = qe_conjunct_finite(atoms, x, q);
  return f_or({std::move(fin_branch), std::move(inf_branch)});
}

}  // namespace logic_detail

// One-variable elimination over a quantifier-free matrix; the result is
// quantifier-free in the remaining parameters and equivalent to E x. f on
// every assignment.
inline FormulaPtr qe_exists(const FormulaPtr& f, const std::string& x, std::int64_t q) {
  using namespace logic_detail;
  FormulaPtr norm = nnf(f, true);
  if (!free_vars(norm).count(x)) return simplify(norm, q);
  std::vector<std::vector<FormulaPtr>> conjuncts = dnf(norm);
  std::vector<FormulaPtr> out;
  for (const auto& c : conjuncts) out.push_back(qe_conjunct(c, x, q));
  if (out.empty()) return f_truth(false);
  return simplify(f_or(std::move(out)), q);
}

// ---- Decision procedure ----

namespace logic_detail {

inline FormulaPtr eliminate(const FormulaPtr& f, std::int64_t q) {
  switch (f->kind) {
    case Formula::Kind::truth:
    case Formula::Kind::atom:
      return f;
    case Formula::Kind::negation:
      return f_not(eliminate(f->children.front(), q));
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(eliminate(c, q));
      return f_join(f->kind, std::move(parts));
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      FormulaPtr body = simplify(eliminate(f->children.front(), q), q);
      std::set<std::string> fv = free_vars(body);
      fv.erase(f->var);
      if (fv.empty()) {
        Env empty;
        IntervalSet s = solution_set(body, empty, f->var, q);
        bool value = f->kind == Formula::Kind::exists ? !s.is_empty() : s.is_everything();
        return f_truth(value);
      }
      if (f->kind == Formula::Kind::exists) return qe_exists(body, f->var, q);
      return simplify(f_not(qe_exists(f_not(body), f->var, q)), q);
    }
  }
  return f;
}

}  // namespace logic_detail

// Truth value of a sentence over the standard chain model.
inline bool decide(const FormulaPtr& f, std::int64_t q) {
  if (!free_vars(f).empty()) throw std::domain_error("decide: sentence required");
  FormulaPtr qf = logic_detail::eliminate(f, q);
  Env empty;
  return eval_formula(qf, empty, q);
}

}  // namespace valmod

#endif  // VALMOD_LOGIC_HPP_
