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

#ifndef VALMOD_SERIALIZE_HPP_
#define VALMOD_SERIALIZE_HPP_

#include <string>

#include "json.hpp"
#include "valmod/chain.hpp"
#include "valmod/formula.hpp"
#include "valmod/hahn_series.hpp"
#include "valmod/interval_set.hpp"
#include "valmod/ore_poly.hpp"
#include "valmod/parse.hpp"
#include "valmod/rational.hpp"
#include "valmod/valued_module.hpp"

namespace valmod {

using Json = nlohmann::json;

inline Json chain_value_to_json(const ChainValue& v) { return v.to_string(); }

inline Json series_to_json(const HahnSeries& s) {
  Json terms = Json::array();
  for (const auto& [g, coeff] : s.terms) {
    Json coords = Json::array();
    for (std::int64_t x : coeff.c) coords.push_back(x);
    terms.push_back({{"exp", rat_to_string(g)}, {"coeff", coords}, {"tower", coeff.m}});
  }
  Json out = {{"terms", terms}};
  out["prec"] = s.prec ? Json(rat_to_string(*s.prec)) : Json(nullptr);
  return out;
}

inline HahnSeries series_from_json(const GroundConfig& cfg, const Json& j) {
  HahnSeries s = HahnSeries::zero(cfg);
  for (const Json& t : j.at("terms")) {
    Rat g = parse_rational(t.at("exp").get<std::string>());
    std::vector<std::int64_t> coords = t.at("coeff").get<std::vector<std::int64_t>>();
    int m = t.contains("tower") ? t.at("tower").get<int>()
                                : static_cast<int>((coords.size() + cfg.e - 1) / cfg.e);
    if (m < 1) m = 1;
    coords.resize(static_cast<std::size_t>(cfg.e) * m, 0);
    s = hs_add(s, HahnSeries::monomial(cfg, FieldElem::from_coords(cfg, m, coords), g));
  }
  if (j.contains("prec") && !j.at("prec").is_null())
    s.prec = parse_rational(j.at("prec").get<std::string>());
  s.normalize();
  return s;
}

inline Json ore_to_json(const OrePoly& r) {
  Json coeffs = Json::array();
  for (const HahnSeries& a : r.coeffs) coeffs.push_back(series_to_json(a));
  return {{"coeffs", coeffs}};
}

inline Json trop_to_json(const TropPoly& r) {
  Json lines = Json::array();
  for (auto it = r.lines.rbegin(); it != r.lines.rend(); ++it)
    lines.push_back({{"deg", it->first}, {"value", rat_to_string(it->second)}});
  return {{"lines", lines}};
}

inline Json envelope_to_json(const EnvelopeProfile& env) {
  Json cells = Json::array();
  for (const EnvelopePiece& p : env.pieces) {
    cells.push_back({{"degree", p.degree},
                     {"lo", p.lo ? Json(rat_to_string(*p.lo)) : Json("-inf")},
                     {"hi", p.hi ? Json(rat_to_string(*p.hi)) : Json("inf")}});
  }
  return {{"cells", cells}};
}

inline Json jumps_to_json(const JumpSet& js) {
  Json out = Json::array();
  for (const Jump& j : js.jumps)
    out.push_back({{"gamma", rat_to_string(j.gamma)},
                   {"deg_hi", j.deg_hi},
                   {"deg_lo", j.deg_lo}});
  return out;
}

inline Json trace_to_json(const ApproximationTrace& tr) {
  Json steps = Json::array();
  for (const SolveStep& st : tr.steps)
    steps.push_back({{"term_added", hs_to_string(st.term)},
                     {"residual_valuation", st.residual_valuation.to_string()},
                     {"tower_degree", st.tower_m}});
  Json residuals = Json::array();
  for (const ChainValue& v : tr.residual_valuations) residuals.push_back(v.to_string());
  return {{"steps", steps},
          {"residual_valuations", residuals},
          {"status", tr.status == SolveStatus::precision_reached ? "precision_reached"
                                                                 : "budget_exhausted"},
          {"tower_degree", tr.tower_m}};
}

inline Json solve_to_json(const HahnSeries& y, const ApproximationTrace& tr) {
  Json out = trace_to_json(tr);
  out["y"] = hs_to_string(y);
  return out;
}

inline Json kernel_to_json(const KernelStratification& ks) {
  Json strata = Json::array();
  for (const KernelStratum& st : ks.strata) {
    Json basis = Json::array();
    for (const HahnSeries& b : st.basis) basis.push_back(hs_to_string(b));
    strata.push_back({{"gamma", rat_to_string(st.gamma)},
                      {"dim", st.dim_q},
                      {"tower_degree", st.tower_m},
                      {"basis", basis},
                      {"complete", st.complete}});
  }
  return {{"strata", strata},
          {"total_count", ks.total_count.str()},
          {"cert_threshold", ks.cert_threshold.to_string()},
          {"complete", ks.complete}};
}

inline Json decomposition_to_json(const DecompositionResult& d) {
  return {{"a", hs_to_string(d.a)}, {"eps", hs_to_string(d.eps)}, {"rounds", d.rounds}};
}

inline Json regularity_to_json(const RegularityVerdict& v) {
  return {{"regular", v.regular},
          {"v_image", v.v_image.to_string()},
          {"v_predicted", v.v_predicted.to_string()}};
}

inline Json term_to_json(const Term& t) {
  Json out;
  switch (t.base) {
    case Term::Base::variable:
      out = {{"base", "variable"}, {"name", t.var}};
      break;
    case Term::Base::constant:
      out = {{"base", "constant"}, {"value", rat_to_string(t.value)}};
      break;
    case Term::Base::infinity:
      out = {{"base", "infinity"}};
      break;
  }
  Json ops = Json::array();
  for (const TermOp& op : t.ops)
    ops.push_back({{"inverse", op.inverse}, {"trop", trop_to_json(op.trop)}});
  out["ops"] = ops;
  return out;
}

inline Json formula_to_json(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::truth:
      return {{"kind", "truth"}, {"value", f->truth}};
    case Formula::Kind::atom:
      return {{"kind", "atom"},
              {"cmp", cmp_to_string(f->cmp)},
              {"lhs", term_to_json(f->lhs)},
              {"rhs", term_to_json(f->rhs)}};
    case Formula::Kind::negation:
      return {{"kind", "negation"}, {"child", formula_to_json(f->children.front())}};
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      Json kids = Json::array();
      for (const FormulaPtr& ch : f->children) kids.push_back(formula_to_json(ch));
      return {{"kind", f->kind == Formula::Kind::conjunction ? "conjunction" : "disjunction"},
              {"children", kids}};
    }
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      return {{"kind", f->kind == Formula::Kind::exists ? "exists" : "forall"},
              {"var", f->var},
              {"child", formula_to_json(f->children.front())}};
  }
  throw std::logic_error("formula_to_json: bad kind");
}

inline Json interval_set_to_json(const IntervalSet& s) {
  Json parts = Json::array();
  for (const Interval& iv : s.parts)
    parts.push_back({{"lo", iv.lo ? Json(rat_to_string(*iv.lo)) : Json("-inf")},
                     {"lo_closed", iv.lo_closed},
                     {"hi", iv.hi ? Json(rat_to_string(*iv.hi)) : Json("inf")},
                     {"hi_closed", iv.hi_closed}});
  return {{"parts", parts}, {"has_inf", s.has_inf}};
}

}  // namespace valmod

#endif  // VALMOD_SERIALIZE_HPP_
