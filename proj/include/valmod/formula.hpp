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

#ifndef VALMOD_FORMULA_HPP_
#define VALMOD_FORMULA_HPP_

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "valmod/chain.hpp"

namespace valmod {

enum class Cmp { lt, le, eq, ne, ge, gt };

inline std::string cmp_to_string(Cmp c) {
  switch (c) {
    case Cmp::lt: return "<";
    case Cmp::le: return "<=";
    case Cmp::eq: return "=";
    case Cmp::ne: return "!=";
    case Cmp::ge: return ">=";
    default: return ">";
  }
}

inline Cmp cmp_negate(Cmp c) {
  switch (c) {
    case Cmp::lt: return Cmp::ge;
    case Cmp::le: return Cmp::gt;
    case Cmp::eq: return Cmp::ne;
    case Cmp::ne: return Cmp::eq;
    case Cmp::ge: return Cmp::lt;
    default: return Cmp::le;
  }
}

inline bool cmp_holds(Cmp c, const ExtRat& a, const ExtRat& b) {
  switch (c) {
    case Cmp::lt: return a < b;
    case Cmp::le: return a <= b;
    case Cmp::eq: return a == b;
    case Cmp::ne: return !(a == b);
    case Cmp::ge: return a >= b;
    default: return a > b;
  }
}

// One applied operation on a term: a chain action, or the inverse of a
// single monomial action.  Inverses require singleton polynomials.
struct TermOp {
  bool inverse = false;
  TropPoly trop;

  friend bool operator==(const TermOp& a, const TermOp& b) {
    return a.inverse == b.inverse && a.trop.lines == b.trop.lines;
  }
};

struct Term {
  enum class Base { variable, constant, infinity };

  Base base = Base::infinity;
  std::string var;
  Rat value;
  std::vector<TermOp> ops;

  static Term make_var(std::string name) {
    Term t;
    t.base = Base::variable;
    t.var = std::move(name);
    return t;
  }
  static Term make_const(Rat v) {
    Term t;
    t.base = Base::constant;
    t.value = std::move(v);
    return t;
  }
  static Term make_inf() { return Term{}; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.base != b.base || a.ops != b.ops) return false;
    if (a.base == Base::variable) return a.var == b.var;
    if (a.base == Base::constant) return a.value == b.value;
    return true;
  }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { truth, atom, negation, conjunction, disjunction, exists, forall };

  Kind kind = Kind::truth;
  bool truth = true;
  Term lhs, rhs;
  Cmp cmp = Cmp::eq;
  std::string var;                    // quantified variable
  std::vector<FormulaPtr> children;   // negation: 1; connectives: >= 1; quantifier: 1
};

inline FormulaPtr f_truth(bool b) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::truth;
  f->truth = b;
  return f;
}

inline FormulaPtr f_atom(Term lhs, Cmp c, Term rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::atom;
  f->lhs = std::move(lhs);
  f->cmp = c;
  f->rhs = std::move(rhs);
  return f;
}

inline FormulaPtr f_not(FormulaPtr inner) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::negation;
  f->children.push_back(std::move(inner));
  return f;
}

inline FormulaPtr f_join(Formula::Kind kind, std::vector<FormulaPtr> parts) {
  if (parts.empty()) throw std::logic_error("f_join: empty child list");
  if (parts.size() == 1) return parts.front();
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->children = std::move(parts);
  return f;
}

inline FormulaPtr f_and(std::vector<FormulaPtr> parts) {
  return f_join(Formula::Kind::conjunction, std::move(parts));
}

inline FormulaPtr f_or(std::vector<FormulaPtr> parts) {
  return f_join(Formula::Kind::disjunction, std::move(parts));
}

inline FormulaPtr f_quant(Formula::Kind kind, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->var = std::move(var);
  f->children.push_back(std::move(body));
  return f;
}

inline FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return f_quant(Formula::Kind::exists, std::move(var), std::move(body));
}

inline FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return f_quant(Formula::Kind::forall, std::move(var), std::move(body));
}

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::truth:
      return a->truth == b->truth;
    case Formula::Kind::atom:
      return a->cmp == b->cmp && a->lhs == b->lhs && a->rhs == b->rhs;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      if (a->var != b->var) return false;
      [[fallthrough]];
    default: {
      if (a->children.size() != b->children.size()) return false;
      for (std::size_t k = 0; k < a->children.size(); ++k)
        if (!formula_equal(a->children[k], b->children[k])) return false;
      return true;
    }
  }
}

inline void collect_free_vars(const FormulaPtr& f, std::set<std::string>& bound,
                              std::set<std::string>& out) {
  auto term_vars = [&](const Term& t) {
    if (t.base == Term::Base::variable && !bound.count(t.var)) out.insert(t.var);
  };
  switch (f->kind) {
    case Formula::Kind::truth:
      return;
    case Formula::Kind::atom:
      term_vars(f->lhs);
      term_vars(f->rhs);
      return;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      bool was_bound = bound.count(f->var) > 0;
      bound.insert(f->var);
      collect_free_vars(f->children.front(), bound, out);
      if (!was_bound) bound.erase(f->var);
      return;
    }
    default:
      for (const auto& c : f->children) collect_free_vars(c, bound, out);
  }
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free_vars(f, bound, out);
  return out;
}

// ---- Printing ----

inline std::string term_to_string(const Term& t) {
  std::string out;
  switch (t.base) {
    case Term::Base::variable: out = t.var; break;
    case Term::Base::constant: out = rat_to_string(t.value); break;
    case Term::Base::infinity: out = "inf"; break;
  }
  for (const TermOp& op : t.ops) {
    out += "." + trop_to_string(op.trop);
    if (op.inverse) out += "^-1";
  }
  return out;
}

inline std::string formula_to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f->truth ? "true" : "false";
    case Formula::Kind::atom:
      return term_to_string(f->lhs) + " " + cmp_to_string(f->cmp) + " " +
             term_to_string(f->rhs);
    case Formula::Kind::negation:
      return "!(" + formula_to_string(f->children.front()) + ")";
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      const char* sep = f->kind == Formula::Kind::conjunction ? " & " : " | ";
      std::string out;
      for (const auto& c : f->children) {
        if (!out.empty()) out += sep;
        bool wrap = c->kind == Formula::Kind::exists || c->kind == Formula::Kind::forall ||
                    (f->kind == Formula::Kind::conjunction &&
                     c->kind == Formula::Kind::disjunction);
        out += wrap ? "(" + formula_to_string(c) + ")" : formula_to_string(c);
      }
      return out;
    }
    case Formula::Kind::exists:
      return "E " + f->var + ". " + formula_to_string(f->children.front());
    default:
      return "A " + f->var + ". " + formula_to_string(f->children.front());
  }
}

// ---- Lexer and parser ----

namespace fml_detail {

enum class TokKind {
  ident, number, rational, dot, lbrace, rbrace, lparen, rparen, comma,
  amp, pipe, bang, lt, le, eq, ne, ge, gt, inv, end
};

struct Token {
  TokKind kind;
  std::string text;
  std::size_t index;  // 1-based position in the token stream
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, n = src.size();
  auto push = [&](TokKind k, std::string text) {
    out.push_back(Token{k, std::move(text), out.size() + 1});
  };
  while (i < n) {
    char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(TokKind::ident, src.substr(i, j - i));
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < n && src[j] == '/' && j + 1 < n &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        push(TokKind::rational, src.substr(i, j - i));
      } else {
        push(TokKind::number, src.substr(i, j - i));
      }
      i = j;
      continue;
    }
    switch (ch) {
      case '.': push(TokKind::dot, "."); ++i; break;
      case '{': push(TokKind::lbrace, "{"); ++i; break;
      case '}': push(TokKind::rbrace, "}"); ++i; break;
      case '(': push(TokKind::lparen, "("); ++i; break;
      case ')': push(TokKind::rparen, ")"); ++i; break;
      case ',': push(TokKind::comma, ","); ++i; break;
      case '&': push(TokKind::amp, "&"); ++i; break;
      case '|': push(TokKind::pipe, "|"); ++i; break;
      case '^':
        if (i + 2 < n && src[i + 1] == '-' && src[i + 2] == '1') {
          push(TokKind::inv, "^-1");
          i += 3;
        } else {
          throw std::invalid_argument("lex error at offset " + std::to_string(i) +
                                      ": expected ^-1");
        }
        break;
      case '!':
        if (i + 1 < n && src[i + 1] == '=') {
          push(TokKind::ne, "!=");
          i += 2;
        } else {
          push(TokKind::bang, "!");
          ++i;
        }
        break;
      case '<':
        if (i + 1 < n && src[i + 1] == '=') {
          push(TokKind::le, "<=");
          i += 2;
        } else {
          push(TokKind::lt, "<");
          ++i;
        }
        break;
      case '>':
        if (i + 1 < n && src[i + 1] == '=') {
          push(TokKind::ge, ">=");
          i += 2;
        } else {
          push(TokKind::gt, ">");
          ++i;
        }
        break;
      case '=': push(TokKind::eq, "="); ++i; break;
      default:
        throw std::invalid_argument("lex error at offset " + std::to_string(i) +
                                    ": unexpected character '" + std::string(1, ch) + "'");
    }
  }
  push(TokKind::end, "");
  return out;
}

inline Rat parse_rat_text(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  FormulaPtr parse_formula_all() {
    FormulaPtr f = parse_formula();
    expect_end();
    return f;
  }

  Term parse_term_all() {
    Term t = parse_term();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = cur();
    std::string got = t.kind == TokKind::end ? "end of input" : "'" + t.text + "'";
    throw std::invalid_argument("syntax error at token " + std::to_string(t.index) +
                                ": expected " + expected + ", got " + got);
  }

  bool accept(TokKind k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(TokKind k, const std::string& what) {
    if (!accept(k)) fail(what);
  }

  void expect_end() {
    if (cur().kind != TokKind::end) fail("end of input");
  }

  bool cur_is_quantifier() const {
    return cur().kind == TokKind::ident && (cur().text == "E" || cur().text == "A") &&
           toks_[pos_ + 1].kind == TokKind::ident;
  }

  FormulaPtr parse_formula() {
    if (cur_is_quantifier()) {
      bool exists = cur().text == "E";
      ++pos_;
      std::string var = cur().text;
      expect(TokKind::ident, "a variable name");
      expect(TokKind::dot, "'.'");
      return f_quant(exists ? Formula::Kind::exists : Formula::Kind::forall,
                     std::move(var), parse_formula());
    }
    return parse_disj();
  }

  FormulaPtr parse_disj() {
    std::vector<FormulaPtr> parts{parse_conj()};
    while (accept(TokKind::pipe)) parts.push_back(parse_conj());
    return f_or(std::move(parts));
  }

  FormulaPtr parse_conj() {
    std::vector<FormulaPtr> parts{parse_lit()};
    while (accept(TokKind::amp)) parts.push_back(parse_lit());
    return f_and(std::move(parts));
  }

  FormulaPtr parse_lit() {
    if (accept(TokKind::bang)) {
      if (accept(TokKind::lparen)) {
        FormulaPtr inner = parse_formula();
        expect(TokKind::rparen, "')'");
        return f_not(std::move(inner));
      }
      return f_not(parse_atom());
    }
    if (accept(TokKind::lparen)) {
      FormulaPtr inner = parse_formula();
      expect(TokKind::rparen, "')'");
      return inner;
    }
    if (cur().kind == TokKind::ident && (cur().text == "true" || cur().text == "false")) {
      bool b = cur().text == "true";
      ++pos_;
      return f_truth(b);
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    Term lhs = parse_term();
    Cmp c;
    switch (cur().kind) {
      case TokKind::lt: c = Cmp::lt; break;
      case TokKind::le: c = Cmp::le; break;
      case TokKind::eq: c = Cmp::eq; break;
      case TokKind::ne: c = Cmp::ne; break;
      case TokKind::ge: c = Cmp::ge; break;
      case TokKind::gt: c = Cmp::gt; break;
      default: fail("a comparison operator");
    }
    ++pos_;
    return f_atom(std::move(lhs), c, parse_term());
  }

  Term parse_term() {
    Term t;
    if (cur().kind == TokKind::ident) {
      if (cur().text == "inf") {
        t = Term::make_inf();
      } else if (cur().text == "true" || cur().text == "false") {
        fail("a term");
      } else {
        t = Term::make_var(cur().text);
      }
      ++pos_;
    } else if (cur().kind == TokKind::number || cur().kind == TokKind::rational) {
      t = Term::make_const(parse_rat_text(cur().text));
      ++pos_;
    } else {
      fail("a term");
    }
    while (accept(TokKind::dot)) {
      TermOp op;
      op.trop = parse_trop();
      if (accept(TokKind::inv)) {
        if (op.trop.lines.size() != 1)
          throw std::invalid_argument(
              "syntax error at token " + std::to_string(toks_[pos_ - 1].index) +
              ": ^-1 requires a single-monomial operator");
        op.inverse = true;
      }
      t.ops.push_back(std::move(op));
    }
    return t;
  }

  TropPoly parse_trop() {
    expect(TokKind::lbrace, "'{'");
    TropPoly r;
    do {
      expect(TokKind::lparen, "'('");
      if (cur().kind != TokKind::number || cur().text[0] == '-') fail("a nonnegative degree");
      int deg = std::stoi(cur().text);
      ++pos_;
      expect(TokKind::comma, "','");
      if (cur().kind != TokKind::number && cur().kind != TokKind::rational)
        fail("a rational constant");
      Rat c = parse_rat_text(cur().text);
      ++pos_;
      expect(TokKind::rparen, "')'");
      if (!r.lines.emplace(deg, std::move(c)).second)
        throw std::invalid_argument("syntax error at token " +
                                    std::to_string(toks_[pos_ - 1].index) +
                                    ": duplicate degree in operator");
    } while (accept(TokKind::comma));
    expect(TokKind::rbrace, "'}'");
    return r;
  }
};

}  // namespace fml_detail

inline FormulaPtr parse_formula(const std::string& src) {
  return fml_detail::Parser(src).parse_formula_all();
}

inline Term parse_term_text(const std::string& src) {
  return fml_detail::Parser(src).parse_term_all();
}

// ---- Evaluation ----

using Env = std::map<std::string, ExtRat>;

inline ExtRat eval_term(const Term& t, const Env& env, std::int64_t q) {
  ExtRat val;
  switch (t.base) {
    case Term::Base::variable: {
      auto it = env.find(t.var);
      if (it == env.end())
        throw std::domain_error("eval_term: unbound variable " + t.var);
      val = it->second;
      break;
    }
    case Term::Base::constant:
      val = ExtRat::finite(t.value);
      break;
    case Term::Base::infinity:
      val = ExtRat::infinity();
      break;
  }
  for (const TermOp& op : t.ops)
    val = op.inverse ? chain_inverse(val, op.trop, q) : chain_eval(val, op.trop, q);
  return val;
}

inline bool eval_formula(const FormulaPtr& f, const Env& env, std::int64_t q) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f->truth;
    case Formula::Kind::atom:
      return cmp_holds(f->cmp, eval_term(f->lhs, env, q), eval_term(f->rhs, env, q));
    case Formula::Kind::negation:
      return !eval_formula(f->children.front(), env, q);
    case Formula::Kind::conjunction:
      for (const auto& c : f->children)
        if (!eval_formula(c, env, q)) return false;
      return true;
    case Formula::Kind::disjunction:
      for (const auto& c : f->children)
        if (eval_formula(c, env, q)) return true;
      return false;
    default:
      throw std::domain_error("eval_formula: quantified formula needs decide");
  }
}

// ---- Substitution ----

// Replaces the base of t by s when the base is the variable `var`; the ops
// of t are applied after those of s.
inline Term term_substitute(const Term& t, const std::string& var, const Term& s) {
  if (t.base != Term::Base::variable || t.var != var) return t;
  Term out = s;
  out.ops.insert(out.ops.end(), t.ops.begin(), t.ops.end());
  return out;
}

inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& s) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return f;
    case Formula::Kind::atom:
      return f_atom(term_substitute(f->lhs, var, s), f->cmp,
                    term_substitute(f->rhs, var, s));
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (f->var == var) return f;
      return f_quant(f->kind, f->var, substitute(f->children.front(), var, s));
    }
    default: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(substitute(c, var, s));
      auto out = std::make_shared<Formula>();
      out->kind = f->kind;
      out->children = std::move(parts);
      if (f->kind == Formula::Kind::negation) return out;
      return out;
    }
  }
}

inline Term term_from_extrat(const ExtRat& v) {
  return v.is_inf ? Term::make_inf() : Term::make_const(v.v);
}

}  // namespace valmod

#endif  // VALMOD_FORMULA_HPP_
