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

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "valmod/logic.hpp"
#include "valmod/parse.hpp"
#include "valmod/serialize.hpp"
#include "valmod/valued_module.hpp"

namespace {

using namespace valmod;

// Exit codes: 0 success, 2 input error, 3 domain failure.
constexpr int kInputError = 2;
constexpr int kDomainFailure = 3;

struct Session {
  GroundConfig cfg = GroundConfig::make(2, 1);
  Rat prec = Rat(2);
  int budget = 32;
  bool json = false;
};

GroundConfig parse_ground(const std::string& text) {
  parse_detail::Cursor c{text};
  Int base = c.natural();
  Int exp(1);
  if (c.accept('^')) exp = c.natural();
  if (!c.done()) c.fail("trailing input");
  if (base < 2 || exp < 1 || exp > 16)
    throw std::invalid_argument("--q: need a prime power p^e");
  std::int64_t n = static_cast<std::int64_t>(base);
  int e = static_cast<int>(exp);
  // A bare composite value such as 4 means p^e with p its smallest factor.
  std::int64_t p = n;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      p = f;
      break;
    }
  }
  if (p != n && e != 1) throw std::invalid_argument("--q: base must be prime");
  while (n % p == 0 && n > 1) {
    n /= p;
    if (n > 1) ++e;
  }
  if (n != 1) throw std::invalid_argument("--q: not a prime power");
  return GroundConfig::make(p, e);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

TropPoly trop_input(const Session& s, const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  TropPoly trop;
  if (i < text.size() && text[i] == '{') {
    trop = parse_trop_text(text);
  } else {
    OrePoly r = parse_ore_text(s.cfg, text);
    if (r.is_zero()) throw std::invalid_argument("zero polynomial has no tropical data");
    trop = tropicalize(r);
  }
  if (trop.lines.empty()) throw std::invalid_argument("empty tropical data");
  return trop;
}

int cmd_trop(const Session& s, const std::string& input, const std::string& mode,
             const std::string& arg) {
  TropPoly trop = trop_input(s, input);
  if (mode == "jumps") {
    JumpSet js = potential_jumps(trop, s.cfg.q);
    if (s.json) {
      emit(jumps_to_json(js));
    } else {
      std::cout << (js.jumps.empty() ? "empty" : jumps_to_string(js)) << "\n";
    }
    return 0;
  }
  if (mode == "envelope") {
    EnvelopeProfile env = envelope(trop, s.cfg.q);
    if (s.json) {
      emit(envelope_to_json(env));
    } else {
      std::cout << envelope_to_string(env);
    }
    return 0;
  }
  if (arg.empty()) throw std::invalid_argument(mode + ": missing chain value argument");
  ChainValue g = parse_chain_value(arg);
  ChainValue v = mode == "eval" ? chain_eval(g, trop, s.cfg.q)
                                : chain_inverse(g, trop, s.cfg.q);
  if (s.json) {
    emit(Json{{"value", v.to_string()}});
  } else {
    std::cout << v.to_string() << "\n";
  }
  return 0;
}

int cmd_solve(const Session& s, const std::string& r_text, const std::string& z_text) {
  OrePoly r = parse_ore_text(s.cfg, r_text);
  HahnSeries z = parse_series_text(s.cfg, z_text);
  if (z.is_zero()) throw std::invalid_argument("zero right-hand side, use kernel");
  auto [y, trace] = solve_regular(r, z, s.prec, s.budget);
  if (s.json) {
    emit(solve_to_json(y, trace));
  } else {
    std::cout << "y = " << hs_to_string(y) << "\n";
    std::string vals;
    for (const ChainValue& v : trace.residual_valuations) {
      if (!vals.empty()) vals += ", ";
      vals += v.to_string();
    }
    std::cout << "residuals: " << vals << "\n";
    std::cout << "status: "
              << (trace.status == SolveStatus::precision_reached ? "precision_reached"
                                                                 : "budget_exhausted")
              << "\n";
    std::cout << "tower: " << trace.tower_m << "\n";
  }
  return trace.status == SolveStatus::budget_exhausted ? kDomainFailure : 0;
}

int cmd_kernel(const Session& s, const std::string& r_text) {
  OrePoly r = parse_ore_text(s.cfg, r_text);
  KernelStratification ks = kernel_basis(r, s.prec, s.budget);
  if (s.json) {
    emit(kernel_to_json(ks));
    return 0;
  }
  for (const KernelStratum& st : ks.strata) {
    std::string basis;
    for (const HahnSeries& b : st.basis) {
      if (!basis.empty()) basis += "; ";
      basis += hs_to_string(b);
    }
    std::cout << "stratum gamma=" << rat_to_string(st.gamma) << ": dim " << st.dim_q
              << ", tower " << st.tower_m << ", basis {" << basis << "}\n";
  }
  std::cout << "total " << ks.total_count.str() << "\n";
  std::cout << "threshold " << ks.cert_threshold.to_string() << "\n";
  std::cout << "complete " << (ks.complete ? "yes" : "no") << "\n";
  return 0;
}

int cmd_decompose(const Session& s, const std::string& x_text, const std::string& r_text) {
  HahnSeries x = parse_series_text(s.cfg, x_text);
  OrePoly r = parse_ore_text(s.cfg, r_text);
  DecompositionResult d = regular_decomposition(x, r, s.prec);
  if (s.json) {
    emit(decomposition_to_json(d));
  } else {
    std::cout << "a = " << hs_to_string(d.a) << "\n";
    std::cout << "eps = " << hs_to_string(d.eps) << "\n";
    std::cout << "rounds = " << d.rounds << "\n";
  }
  return 0;
}

int cmd_regular(const Session& s, const std::string& x_text, const std::string& r_text) {
  HahnSeries x = parse_series_text(s.cfg, x_text);
  OrePoly r = parse_ore_text(s.cfg, r_text);
  RegularityVerdict v = regularity(x, r);
  if (s.json) {
    emit(regularity_to_json(v));
  } else {
    std::cout << (v.regular ? "regular" : "irregular") << "\n";
    std::cout << "v(x.r) = " << v.v_image.to_string() << "\n";
    std::cout << "v(x).r = " << v.v_predicted.to_string() << "\n";
  }
  return 0;
}

int cmd_logic(const Session& s, const std::string& mode, const std::string& text) {
  FormulaPtr f = parse_formula(text);
  if (mode == "decide") {
    bool b = decide(f, s.cfg.q);
    if (s.json) {
      emit(Json{{"result", b}});
    } else {
      std::cout << (b ? "true" : "false") << "\n";
    }
    return 0;
  }
  FormulaPtr out;
  if (mode == "qe") {
    // One level of elimination; a quantified matrix is a domain failure.
    if (f->kind == Formula::Kind::exists) {
      out = qe_exists(f->children.front(), f->var, s.cfg.q);
    } else if (f->kind == Formula::Kind::forall) {
      out = simplify(f_not(qe_exists(f_not(f->children.front()), f->var, s.cfg.q)),
                     s.cfg.q);
    } else {
      out = simplify(f, s.cfg.q);
    }
  } else {
    out = simplify(f, s.cfg.q);
  }
  if (s.json) {
    emit(Json{{"text", formula_to_string(out)}, {"ast", formula_to_json(out)}});
  } else {
    std::cout << formula_to_string(out) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valued twisted-polynomial module calculator"};
  app.require_subcommand(1);

  std::string q_text = "2";
  std::string prec_text = "2";
  Session session;
  app.add_option("--q", q_text, "ground field size, p or p^e (default 2)");
  app.add_option("--prec", prec_text, "precision bound, rational a/b (default 2)");
  app.add_option("--budget", session.budget, "term budget (default 32)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", session.json, "emit JSON reports");

  std::string trop_in, trop_mode, trop_arg;
  CLI::App* trop_cmd = app.add_subcommand("trop", "tropical data of a polynomial");
  trop_cmd->add_option("input", trop_in, "polynomial or {(deg,val),...} literal")->required();
  trop_cmd->add_option("mode", trop_mode, "eval | inverse | jumps | envelope")
      ->required()
      ->check(CLI::IsMember({"eval", "inverse", "jumps", "envelope"}));
  trop_cmd->add_option("arg", trop_arg, "chain value for eval/inverse");

  std::string solve_r, solve_z;
  CLI::App* solve_cmd = app.add_subcommand("solve", "approximate y with y.r = z");
  solve_cmd->add_option("r", solve_r, "twisted polynomial")->required();
  solve_cmd->add_option("z", solve_z, "right-hand side series")->required();

  std::string kernel_r;
  CLI::App* kernel_cmd = app.add_subcommand("kernel", "stratified approximate kernel");
  kernel_cmd->add_option("r", kernel_r, "twisted polynomial")->required();

  std::string dec_x, dec_r;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "split x into root part + regular part");
  dec_cmd->add_option("x", dec_x, "series")->required();
  dec_cmd->add_option("r", dec_r, "twisted polynomial")->required();

  std::string reg_x, reg_r;
  CLI::App* reg_cmd = app.add_subcommand("regular", "regularity verdict for x against r");
  reg_cmd->add_option("x", reg_x, "series")->required();
  reg_cmd->add_option("r", reg_r, "twisted polynomial")->required();

  std::string logic_mode, logic_f;
  CLI::App* logic_cmd = app.add_subcommand("logic", "formula tools: decide, qe, simplify");
  logic_cmd->add_option("mode", logic_mode, "decide | qe | simplify")
      ->required()
      ->check(CLI::IsMember({"decide", "qe", "simplify"}));
  logic_cmd->add_option("formula", logic_f, "formula text")->required();

  std::string decide_f, qe_f, simp_f;
  CLI::App* decide_cmd = app.add_subcommand("decide", "truth of a sentence");
  decide_cmd->add_option("formula", decide_f, "sentence text")->required();
  CLI::App* qe_cmd = app.add_subcommand("qe", "eliminate the leading quantifier");
  qe_cmd->add_option("formula", qe_f, "formula text")->required();
  CLI::App* simp_cmd = app.add_subcommand("simplify", "normalize a formula");
  simp_cmd->add_option("formula", simp_f, "formula text")->required();

  for (CLI::App* sub : {trop_cmd, solve_cmd, kernel_cmd, dec_cmd, reg_cmd, logic_cmd,
                        decide_cmd, qe_cmd, simp_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    session.cfg = parse_ground(q_text);
    session.prec = parse_rational(prec_text);
    if (trop_cmd->parsed()) return cmd_trop(session, trop_in, trop_mode, trop_arg);
    if (solve_cmd->parsed()) return cmd_solve(session, solve_r, solve_z);
    if (kernel_cmd->parsed()) return cmd_kernel(session, kernel_r);
    if (dec_cmd->parsed()) return cmd_decompose(session, dec_x, dec_r);
    if (reg_cmd->parsed()) return cmd_regular(session, reg_x, reg_r);
    if (logic_cmd->parsed()) return cmd_logic(session, logic_mode, logic_f);
    if (decide_cmd->parsed()) return cmd_logic(session, "decide", decide_f);
    if (qe_cmd->parsed()) return cmd_logic(session, "qe", qe_f);
    if (simp_cmd->parsed()) return cmd_logic(session, "simplify", simp_f);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return 0;
}
