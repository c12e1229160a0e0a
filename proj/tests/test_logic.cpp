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

#include "valmod/logic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "valmod/formula.hpp"
#include "valmod/interval_set.hpp"
#include "valmod/piecewise.hpp"

using namespace valmod;

namespace {

constexpr std::int64_t kQ = 2;

// Finite probe values covering every breakpoint used in this file.
std::vector<ExtRat> probe_grid() {
  std::vector<ExtRat> out;
  for (int k = -48; k <= 48; ++k) out.push_back(ExtRat::finite(Rat(k, 8)));
  for (int v : {-100, -20, 20, 100}) out.push_back(ExtRat::finite(Rat(v)));
  out.push_back(ExtRat::infinity());
  return out;
}

bool set_matches_eval(const IntervalSet& s, const FormulaPtr& atom, Env env,
                      const std::string& x, const std::vector<ExtRat>& probes) {
  for (const ExtRat& v : probes) {
    env[x] = v;
    if (s.contains(v) != eval_formula(atom, env, kQ)) return false;
  }
  return true;
}

// Quantifiers enumerated over a finite grid; sound for formulas whose
// breakpoints and witnesses all lie on the grid.
bool grid_decide(const FormulaPtr& f, Env& env, const std::vector<ExtRat>& grid) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f->truth;
    case Formula::Kind::atom:
      return cmp_holds(f->cmp, eval_term(f->lhs, env, kQ), eval_term(f->rhs, env, kQ));
    case Formula::Kind::negation:
      return !grid_decide(f->children.front(), env, grid);
    case Formula::Kind::conjunction:
      for (const auto& c : f->children)
        if (!grid_decide(c, env, grid)) return false;
      return true;
    case Formula::Kind::disjunction:
      for (const auto& c : f->children)
        if (grid_decide(c, env, grid)) return true;
      return false;
    default: {
      bool exists = f->kind == Formula::Kind::exists;
      auto it = env.find(f->var);
      std::optional<ExtRat> saved =
          it == env.end() ? std::optional<ExtRat>{} : std::optional<ExtRat>{it->second};
      bool result = !exists;
      for (const ExtRat& v : grid) {
        env[f->var] = v;
        bool b = grid_decide(f->children.front(), env, grid);
        if (exists == b) {
          result = b;
          break;
        }
      }
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return result;
    }
  }
}

ExtRat random_ext(std::mt19937_64& rng, const std::vector<ExtRat>& pool) {
  return pool[rng() % pool.size()];
}

TropPoly random_small_trop(std::mt19937_64& rng) {
  static const std::vector<TropPoly> pool = {
      TropPoly::of({{1, Rat(0)}}),
      TropPoly::of({{0, Rat(1)}}),
      TropPoly::of({{0, Rat(-1, 2)}}),
      TropPoly::of({{1, Rat(0)}, {0, Rat(1)}}),
      TropPoly::of({{2, Rat(0)}, {0, Rat(-1)}}),
      TropPoly::of({{2, Rat(0)}, {1, Rat(1)}, {0, Rat(3)}}),
      TropPoly::of({{1, Rat(-2)}}),
  };
  return pool[rng() % pool.size()];
}

Term random_x_term(std::mt19937_64& rng, const std::string& x) {
  Term t = Term::make_var(x);
  std::size_t nops = rng() % 3;
  for (std::size_t k = 0; k < nops; ++k) {
    TermOp op;
    op.trop = random_small_trop(rng);
    if (op.trop.lines.size() == 1 && rng() % 3 == 0) op.inverse = true;
    t.ops.push_back(std::move(op));
  }
  return t;
}

Cmp random_cmp(std::mt19937_64& rng) {
  static const Cmp all[] = {Cmp::lt, Cmp::le, Cmp::eq, Cmp::ne, Cmp::ge, Cmp::gt};
  return all[rng() % 6];
}

}  // namespace

TEST_CASE("interval sets form a boolean algebra under union, intersection, complement") {
  std::mt19937_64 rng(20260825);
  std::vector<ExtRat> probes = probe_grid();
  auto random_set = [&]() {
    IntervalSet s;
    std::size_t n = rng() % 3;
    for (std::size_t k = 0; k < n; ++k) {
      Rat a(static_cast<std::int64_t>(rng() % 25) - 12, 4);
      Rat b = a + Rat(static_cast<std::int64_t>(rng() % 9), 4);
      if (a == b) {
        s = set_union(s, IntervalSet::point(a));
      } else {
        s = set_union(s, IntervalSet::between(a, rng() % 2 == 0, b, rng() % 2 == 0));
      }
    }
    if (rng() % 4 == 0) s = set_union(s, IntervalSet::above(Rat(3), false));
    if (rng() % 4 == 0) s.has_inf = true;
    return s;
  };
  for (int iter = 0; iter < 200; ++iter) {
    IntervalSet a = random_set();
    IntervalSet b = random_set();
    IntervalSet u = set_union(a, b);
    IntervalSet i = set_intersect(a, b);
    IntervalSet c = set_complement(a);
    for (const ExtRat& v : probes) {
      REQUIRE(u.contains(v) == (a.contains(v) || b.contains(v)));
      REQUIRE(i.contains(v) == (a.contains(v) && b.contains(v)));
      REQUIRE(c.contains(v) == !a.contains(v));
    }
    // Canonical: sorted parts separated by genuine gaps.
    for (std::size_t k = 1; k < u.parts.size(); ++k)
      REQUIRE(iv_detail::gap_between(u.parts[k - 1], u.parts[k]));
  }
  CHECK(set_complement(IntervalSet::everything()).is_empty());
  CHECK(set_complement(IntervalSet::empty()).is_everything());
  CHECK(interval_set_to_string(IntervalSet::empty()) == "empty");
  CHECK(interval_set_to_string(IntervalSet::everything()) == "(-inf, inf) u {inf}");
}

TEST_CASE("piecewise maps track chain evaluation and invert exactly") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    TropPoly r1 = random_small_trop(rng);
    TropPoly r2 = random_small_trop(rng);
    PLFunction f = PLFunction::identity().then_trop(r1, kQ).then_trop(r2, kQ);
    Rat prev_val;
    bool have_prev = false;
    for (int k = -40; k <= 40; ++k) {
      Rat g(k, 4);
      ChainValue expect = chain_eval(chain_eval(ChainValue::finite(g), r1, kQ), r2, kQ);
      REQUIRE(f.eval(g) == expect.v);
      REQUIRE(f.inverse(f.eval(g)) == g);
      // The recorded monomial decomposition reproduces the map.
      const PLPiece& piece = f.piece_at(g);
      Rat v = g;
      for (const PLOp& op : piece.ops) {
        Rat scale = rat_pow(Rat(kQ), op.deg);
        v = op.inverse ? Rat((v - op.c) / scale) : Rat(scale * v + op.c);
      }
      REQUIRE(v == f.eval(g));
      if (have_prev) REQUIRE(f.eval(g) > prev_val);
      prev_val = f.eval(g);
      have_prev = true;
    }
    REQUIRE(f.eval(ExtRat::infinity()).is_inf);
    // Inverting a monomial undoes the matching forward application.
    PLFunction g = f.then_trop(TropPoly::of({{1, Rat(1, 2)}}), kQ)
                       .then_mono_inverse(1, Rat(1, 2), kQ);
    for (int k = -8; k <= 8; ++k) REQUIRE(g.eval(Rat(k, 2)) == f.eval(Rat(k, 2)));
  }
}

TEST_CASE("formula text round-trips through parse and print") {
  const std::vector<std::string> corpus = {
      "E x. x.{(1,0)} < 0 & x.{(0,1)} > 0",
      "A x. x.{(1,0)} > x.{(0,0)}",
      "inf = inf",
      "x.{(2,0),(1,1),(0,3)} <= a",
      "a.{(1,0)}^-1 = b",
      "!(x < 0) & x < 1",
      "x < 0 | x = 0 | x > 0",
      "E x. A y. x <= y | y.{(1,-2)} != x",
      "true",
      "false | 0 < 1",
      "-3/2 < x & x != inf",
  };
  for (const std::string& text : corpus) {
    FormulaPtr f = parse_formula(text);
    std::string printed = formula_to_string(f);
    FormulaPtr again = parse_formula(printed);
    INFO(text << " -> " << printed);
    REQUIRE(formula_equal(f, again));
  }
  CHECK(formula_to_string(parse_formula("E x. x.{(1,0)} < 0 & x.{(0,1)} > 0")) ==
        "E x. x.{(1,0)} < 0 & x.{(0,1)} > 0");
  FormulaPtr taut = parse_formula("inf = inf");
  CHECK(taut->kind == Formula::Kind::atom);
  CHECK(eval_formula(taut, {}, kQ));
}

TEST_CASE("parse errors report the offending token") {
  CHECK_THROWS_WITH(parse_formula("E x x"), Catch::Matchers::ContainsSubstring("token 3"));
  CHECK_THROWS_WITH(parse_formula("x <"), Catch::Matchers::ContainsSubstring("token 3"));
  CHECK_THROWS_AS(parse_formula("x.{(1,0),(1,2)} < 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("x.{(1,0),(0,1)}^-1 < 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("x.{(-1,0)} < 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_formula("E x. x < 0 )"), std::invalid_argument);
}

TEST_CASE("atom solution sets match the worked comparisons") {
  Env env;
  CHECK(interval_set_to_string(atom_solution_set(parse_formula("x.{(1,0)} < 0"), env, "x", kQ)) ==
        "(-inf, 0)");
  CHECK(interval_set_to_string(
            atom_solution_set(parse_formula("x.{(1,0)} > x.{(0,0)}"), env, "x", kQ)) ==
        "(0, inf)");
  IntervalSet refl = atom_solution_set(parse_formula("x = x"), env, "x", kQ);
  CHECK(refl.is_everything());
  CHECK(interval_set_to_string(refl) == "(-inf, inf) u {inf}");
  // min(2x, x+1) = 2 exactly at x = 1.
  CHECK(interval_set_to_string(
            atom_solution_set(parse_formula("x.{(1,0),(0,1)} = 2"), env, "x", kQ)) == "[1, 1]");
  env["a"] = ExtRat::infinity();
  CHECK(interval_set_to_string(atom_solution_set(parse_formula("x.{(1,0)} <= a"), env, "x",
                                                 kQ)) == "(-inf, inf) u {inf}");
  CHECK(interval_set_to_string(atom_solution_set(parse_formula("x.{(1,0)} = a"), env, "x",
                                                 kQ)) == "{inf}");
}

TEST_CASE("atom membership agrees with direct evaluation on random samples") {
  std::mt19937_64 rng(20260801);
  std::vector<ExtRat> probes = probe_grid();
  std::vector<ExtRat> pool;
  for (int k = -16; k <= 16; ++k) pool.push_back(ExtRat::finite(Rat(k, 4)));
  pool.push_back(ExtRat::infinity());

  SECTION("term against rational constant") {
    for (int iter = 0; iter < 1000; ++iter) {
      Term lhs = random_x_term(rng, "x");
      Term rhs = Term::make_const(Rat(static_cast<std::int64_t>(rng() % 33) - 16, 4));
      FormulaPtr atom = rng() % 2 == 0 ? f_atom(lhs, random_cmp(rng), rhs)
                                       : f_atom(rhs, random_cmp(rng), lhs);
      IntervalSet s = atom_solution_set(atom, {}, "x", kQ);
      Env env;
      env["x"] = random_ext(rng, probes);
      REQUIRE(s.contains(env["x"]) == eval_formula(atom, env, kQ));
    }
  }
  SECTION("term against infinity") {
    for (int iter = 0; iter < 1000; ++iter) {
      FormulaPtr atom = f_atom(random_x_term(rng, "x"), random_cmp(rng), Term::make_inf());
      IntervalSet s = atom_solution_set(atom, {}, "x", kQ);
      Env env;
      env["x"] = random_ext(rng, probes);
      REQUIRE(s.contains(env["x"]) == eval_formula(atom, env, kQ));
    }
  }
  SECTION("term against parameter term") {
    for (int iter = 0; iter < 1000; ++iter) {
      Term rhs = Term::make_var("a");
      if (rng() % 2 == 0) {
        TermOp op;
        op.trop = random_small_trop(rng);
        rhs.ops.push_back(std::move(op));
      }
      FormulaPtr atom = f_atom(random_x_term(rng, "x"), random_cmp(rng), rhs);
      Env env;
      env["a"] = random_ext(rng, pool);
      IntervalSet s = atom_solution_set(atom, env, "x", kQ);
      env["x"] = random_ext(rng, probes);
      REQUIRE(s.contains(env["x"]) == eval_formula(atom, env, kQ));
    }
  }
  SECTION("both sides in the variable") {
    for (int iter = 0; iter < 1000; ++iter) {
      FormulaPtr atom =
          f_atom(random_x_term(rng, "x"), random_cmp(rng), random_x_term(rng, "x"));
      IntervalSet s = atom_solution_set(atom, {}, "x", kQ);
      Env env;
      env["x"] = random_ext(rng, probes);
      REQUIRE(s.contains(env["x"]) == eval_formula(atom, env, kQ));
    }
  }
}

TEST_CASE("quantifier-free solution sets are canonical finite unions") {
  std::mt19937_64 rng(99);
  std::vector<ExtRat> probes = probe_grid();
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<FormulaPtr> atoms;
    std::size_t n = 1 + rng() % 3;
    for (std::size_t k = 0; k < n; ++k) {
      Term rhs = rng() % 2 == 0
                     ? Term::make_const(Rat(static_cast<std::int64_t>(rng() % 17) - 8, 2))
                     : random_x_term(rng, "x");
      FormulaPtr a = f_atom(random_x_term(rng, "x"), random_cmp(rng), rhs);
      atoms.push_back(rng() % 3 == 0 ? f_not(a) : a);
    }
    FormulaPtr f = rng() % 2 == 0 ? f_and(atoms) : f_or(atoms);
    IntervalSet s = solution_set(f, {}, "x", kQ);
    for (std::size_t k = 1; k < s.parts.size(); ++k)
      REQUIRE(iv_detail::gap_between(s.parts[k - 1], s.parts[k]));
    Env env;
    for (const ExtRat& v : probes) {
      env["x"] = v;
      REQUIRE(s.contains(v) == eval_formula(f, env, kQ));
    }
  }
}

TEST_CASE("decide settles the documented sentences") {
  CHECK(decide(parse_formula("E x. x.{(1,0)} < 0 & x.{(0,1)} > 0"), kQ));
  CHECK_FALSE(decide(parse_formula("A x. x.{(1,0)} > x.{(0,0)}"), kQ));
  CHECK(decide(parse_formula("E x. x.{(1,0)} = x"), kQ));
  CHECK(decide(parse_formula("inf = inf"), kQ));
  CHECK_THROWS_AS(decide(parse_formula("x < 0"), kQ), std::domain_error);
}

TEST_CASE("decide agrees with grid evaluation on the golden corpus") {
  std::ifstream in(VALMOD_GOLDEN_DIR "/logic_corpus.txt");
  REQUIRE(in.good());
  std::vector<ExtRat> grid;
  for (int k = -48; k <= 48; ++k) grid.push_back(ExtRat::finite(Rat(k, 8)));
  for (int v : {-100, -20, 20, 100}) grid.push_back(ExtRat::finite(Rat(v)));
  grid.push_back(ExtRat::infinity());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t sp = line.find(' ');
    REQUIRE(sp != std::string::npos);
    bool expected = line.substr(0, sp) == "true";
    FormulaPtr f = parse_formula(line.substr(sp + 1));
    INFO(line);
    CHECK(decide(f, kQ) == expected);
    Env env;
    CHECK(grid_decide(f, env, grid) == expected);
    ++count;
  }
  CHECK(count == 50);
}

TEST_CASE("existential elimination matches the documented parameter conditions") {
  FormulaPtr unbounded = qe_exists(parse_formula("x.{(1,0)} < a.{(0,0)}"), "x", kQ);
  CHECK(formula_to_string(unbounded) == "true");

  FormulaPtr density = qe_exists(parse_formula("a < x & x < b"), "x", kQ);
  CHECK(formula_to_string(density) == "a < b");

  FormulaPtr pinned = qe_exists(parse_formula("x.{(1,0)} = a & x.{(0,0)} = b"), "x", kQ);
  CHECK(free_vars(pinned).count("x") == 0);
  // Equivalent to the one-line parameter condition a.{(1,0)}^-1 = b.
  FormulaPtr reference = parse_formula("a.{(1,0)}^-1 = b");
  std::vector<ExtRat> pool;
  for (int k = -16; k <= 16; ++k) pool.push_back(ExtRat::finite(Rat(k, 4)));
  pool.push_back(ExtRat::infinity());
  for (const ExtRat& va : pool)
    for (const ExtRat& vb : pool) {
      Env env{{"a", va}, {"b", vb}};
      INFO("a=" << va.to_string() << " b=" << vb.to_string());
      REQUIRE(eval_formula(pinned, env, kQ) == eval_formula(reference, env, kQ));
    }

  CHECK_THROWS_AS(qe_exists(parse_formula("E y. y < x"), "x", kQ), std::domain_error);
  CHECK(formula_to_string(qe_exists(parse_formula("a < 0"), "x", kQ)) == "a < 0");
}

TEST_CASE("eliminated formulas agree with decide under parameter sampling") {
  const std::vector<std::string> matrices = {
      "x.{(1,0)} < a.{(0,0)}",
      "x.{(1,0)} = a & x.{(0,0)} = b",
      "a < x & x < b",
      "x.{(1,0),(0,1)} <= a",
      "x.{(1,0),(0,1)} = a & x.{(2,0)} >= b",
      "x.{(1,0)} != a | x.{(0,2)} < b",
      "x >= a & x <= b & x != 0",
      "x.{(2,0),(1,-1)} >= a & x <= b",
      "x.{(1,0),(0,1)} = a | x = b & x.{(0,1)} < a",
      "!(x.{(1,0)} <= a) & x.{(0,-1)} <= b",
  };
  // Sample pool includes every breakpoint image of the maps above.
  std::vector<ExtRat> pool;
  for (int k = -32; k <= 32; ++k) pool.push_back(ExtRat::finite(Rat(k, 8)));
  for (int v : {-20, 20}) pool.push_back(ExtRat::finite(Rat(v)));
  pool.push_back(ExtRat::infinity());
  std::mt19937_64 rng(4242);
  for (const std::string& text : matrices) {
    FormulaPtr matrix = parse_formula(text);
    FormulaPtr psi = qe_exists(matrix, "x", kQ);
    CHECK(free_vars(psi).count("x") == 0);
    int checked = 0;
    for (int iter = 0; iter < 1000; ++iter) {
      ExtRat va = iter < static_cast<int>(pool.size()) ? pool[iter]
                                                       : random_ext(rng, pool);
      ExtRat vb = random_ext(rng, pool);
      FormulaPtr inst = substitute(substitute(matrix, "a", term_from_extrat(va)), "b",
                                   term_from_extrat(vb));
      bool truth = !solution_set(inst, {}, "x", kQ).is_empty();
      Env env{{"a", va}, {"b", vb}};
      INFO(text << " at a=" << va.to_string() << " b=" << vb.to_string());
      REQUIRE(eval_formula(psi, env, kQ) == truth);
      ++checked;
    }
    CHECK(checked == 1000);
  }
}

TEST_CASE("simplification folds ground truth and strips identity operations") {
  CHECK(formula_to_string(simplify(parse_formula("0 < 1"), kQ)) == "true");
  CHECK(formula_to_string(simplify(parse_formula("inf = inf"), kQ)) == "true");
  CHECK(formula_to_string(simplify(parse_formula("1/2 = 2/4"), kQ)) == "true");
  FormulaPtr keep = parse_formula("a < b");
  CHECK(formula_equal(simplify(f_and({keep, f_truth(true)}), kQ), keep));
  CHECK(formula_to_string(simplify(f_or({keep, f_truth(true)}), kQ)) == "true");
  FormulaPtr ground = substitute(parse_formula("x < 1 | x < 2"), "x",
                                 Term::make_const(Rat(0)));
  CHECK(formula_to_string(simplify(ground, kQ)) == "true");
  CHECK(formula_to_string(simplify(parse_formula("x <= inf"), kQ)) == "true");
  CHECK(formula_to_string(simplify(parse_formula("inf < x"), kQ)) == "false");
  CHECK(formula_to_string(simplify(parse_formula("b.{(0,0)}^-1 = b"), kQ)) == "true");
  CHECK(formula_to_string(simplify(parse_formula("x < x"), kQ)) == "false");
  CHECK(formula_to_string(simplify(parse_formula("!(!(a < b))"), kQ)) == "a < b");
  CHECK(formula_to_string(simplify(parse_formula("!(a < b)"), kQ)) == "a >= b");
  CHECK(formula_to_string(simplify(parse_formula("E x. 0 < 1"), kQ)) == "true");
}

TEST_CASE("decide handles nested quantification through elimination") {
  CHECK(decide(parse_formula("A a. E x. x >= a"), kQ));
  CHECK_FALSE(decide(parse_formula("E a. A x. x.{(1,0)} >= a"), kQ));
  CHECK(decide(parse_formula("E a. A x. x.{(1,0)} >= a | x < a"), kQ));
  CHECK(decide(parse_formula("A x. A y. x < y | x = y | x > y"), kQ));
  CHECK_FALSE(decide(parse_formula("A x. E y. y.{(1,0)} >= x & y <= x"), kQ));
}
