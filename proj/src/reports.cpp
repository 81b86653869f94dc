// Copyright 2026-present the towerlab project
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

#include "towerlab/reports.hpp"

#include <stdexcept>

#include "json.hpp"

namespace towerlab {

namespace {

using ordered_json = nlohmann::ordered_json;

// Coefficient as it appears in a displayed term. Prime-field values print as
// digits, extension elements as a parenthesized coefficient list.
std::string coeff_display(const FieldCtx& ctx, std::uint32_t idx) {
  if (ctx.degree() == 1) return std::to_string(idx);
  return "(" + ctx.to_string(FieldElem{&ctx, idx}) + ")";
}

std::string term_display(const FieldCtx& ctx, std::uint32_t coeff_idx, std::size_t power,
                         bool* negated) {
  const std::uint32_t p = ctx.characteristic();
  std::uint32_t c = coeff_idx;
  *negated = false;
  // render -1 coefficients as subtraction in odd characteristic
  if (ctx.degree() == 1 && p > 2 && c == p - 1) {
    *negated = true;
    c = 1;
  }
  std::string variable;
  if (power == 1) variable = "x";
  if (power >= 2) variable = "x^" + std::to_string(power);
  if (variable.empty()) return coeff_display(ctx, c);
  if (c == 1) return variable;
  return coeff_display(ctx, c) + variable;
}

}  // namespace

std::string poly_display(const Poly& f) {
  if (poly_is_zero(f)) return "0";
  const FieldCtx& ctx = *f.ctx;
  std::string out;
  for (std::size_t i = f.c.size(); i-- > 0;) {
    if (f.c[i] == 0) continue;
    bool negated = false;
    std::string term = term_display(ctx, f.c[i], i, &negated);
    if (out.empty()) {
      out = negated ? "-" + term : term;
    } else {
      out += negated ? " - " + term : " + " + term;
    }
  }
  return out;
}

std::string ratmap_display(const RatMap& F) {
  const FieldCtx& ctx = *F.num.ctx;
  std::string den;
  if (poly_is_zero(F.den)) throw std::logic_error("rational map with zero denominator");
  FieldElem lead = poly_leading(F.den);
  if (lead == ctx.one()) {
    den = poly_display(F.den);
  } else {
    den = coeff_display(ctx, lead.idx) + "(" + poly_display(poly_monic(F.den)) + ")";
  }
  return "(" + poly_display(F.num) + ")/(" + den + ")";
}

namespace {

ordered_json poly_coeff_array(const Poly& f) {
  ordered_json arr = ordered_json::array();
  for (std::uint32_t ci : f.c) arr.push_back(f.ctx->to_string(FieldElem{f.ctx, ci}));
  return arr;
}

}  // namespace

std::string tower_spec_json(const TowerSpec& spec) {
  const FieldCtx& base = spec.tower->base();
  ordered_json j;
  j["p"] = spec.p;
  j["n"] = spec.n;
  j["q"] = spec.q;
  j["modulus"] = spec.modulus_q2;
  j["a"] = base.to_string(spec.a);
  j["b"] = base.to_string(spec.b);
  j["t"] = base.to_string(spec.t);
  j["n_param"] = base.to_string(spec.n_param);
  j["c"] = base.to_string(spec.phi.c);
  j["d"] = base.to_string(spec.phi.d);
  ordered_json psi = ordered_json::array();
  for (int i = 0; i < 4; ++i) psi.push_back(base.to_string(mobius_entry(spec.psi, i)));
  j["psi"] = psi;
  j["f"] = {{"num", poly_coeff_array(spec.f.num)}, {"den", poly_coeff_array(spec.f.den)}};
  j["g"] = {{"num", poly_coeff_array(spec.g.num)}, {"den", poly_coeff_array(spec.g.den)}};
  j["provenance"] = spec.provenance;
  j["f_display"] = ratmap_display(spec.f);
  j["g_display"] = ratmap_display(spec.g);
  return j.dump(2) + "\n";
}

std::string check_report_json(const CheckReport& report) {
  ordered_json j;
  ordered_json checks;
  for (const auto& [name, ok] : report.checks) checks[name] = ok;
  j["checks"] = checks;
  j["all_passed"] = report.all_passed();
  return j.dump(2) + "\n";
}

std::string limit_report_csv(const LimitReport& report) {
  std::string out =
      "m,degree,genus,delta,n_lower,lambda_num,lambda_den,lambda_decimal,"
      "target_num,target_den,weil_ok\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.m);
    out += "," + row.degree.to_string();
    out += "," + row.genus.to_string();
    out += "," + row.delta.to_string();
    out += "," + row.n_lower.to_string();
    if (row.lambda) {
      out += "," + row.lambda->num().to_string();
      out += "," + row.lambda->den().to_string();
      out += "," + row.lambda->to_decimal(6);
    } else {
      out += ",-,-,-";
    }
    out += "," + report.target.num().to_string();
    out += "," + report.target.den().to_string();
    out += row.weil_ok ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

std::string limit_report_json(const LimitReport& report) {
  ordered_json j;
  j["target"] = report.target.to_string();
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["m"] = row.m;
    r["degree"] = row.degree.to_string();
    r["genus"] = row.genus.to_string();
    r["delta"] = row.delta.to_string();
    r["n_lower"] = row.n_lower.to_string();
    r["lambda"] = row.lambda ? row.lambda->to_string() : "-";
    r["lambda_decimal"] = row.lambda ? row.lambda->to_decimal(6) : "-";
    r["weil_ok"] = row.weil_ok;
    rows.push_back(r);
  }
  j["levels"] = rows;
  return j.dump(2) + "\n";
}

std::string graph_dot(const CorrespondenceGraph& graph) {
  std::string out = "digraph tower_correspondence {\n";
  out += "  // x -> y iff g(y) = f(x)\n";
  for (std::uint32_t id = 0; id < graph.nodes.size(); ++id) {
    const char* locus = graph.in_S[id] ? "S" : (graph.in_R[id] ? "R" : "geom");
    out += "  n" + std::to_string(id) + " [label=\"" + p1_to_string(graph.nodes[id]) +
           "\", locus=" + locus;
    if (graph.in_S[id]) out += ", shape=doublecircle";
    out += "];\n";
  }
  std::vector<std::vector<std::uint32_t>> by_gval(graph.nodes.size());
  for (std::uint32_t y = 0; y < graph.nodes.size(); ++y) by_gval[graph.gval[y]].push_back(y);
  for (std::uint32_t x = 0; x < graph.nodes.size(); ++x) {
    for (std::uint32_t y : by_gval[graph.fval[x]]) {
      out += "  n" + std::to_string(x) + " -> n" + std::to_string(y) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace towerlab
