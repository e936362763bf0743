#pragma once

// JSON encodings. Every integer quantity that may exceed 64 bits is written
// as a decimal string.

#include <string>
#include <vector>

#include <json.hpp>

#include "cdgraph/conjecture.hpp"
#include "cdgraph/degrees.hpp"
#include "cdgraph/graph.hpp"
#include "cdgraph/params.hpp"
#include "cdgraph/report.hpp"

namespace cdg {

using Json = nlohmann::ordered_json;

inline Json to_json(const Factored& f) {
  Json factors = Json::object();
  for (const auto& [prime, e] : f.factors) factors[prime.str()] = e;
  Json j;
  j["value"] = f.value.str();
  j["factors"] = factors;
  j["cofactor"] = f.cofactor.str();
  j["complete"] = f.complete();
  j["text"] = format_factored(f);
  return j;
}

inline Json to_json(const std::vector<Nat>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(x.str());
  return arr;
}

inline Json to_json(const PrimeSet& s) { return to_json(std::vector<Nat>(s.begin(), s.end())); }

inline Json to_json(const Params& params) {
  Json j;
  j["p"] = params.p.str();
  j["n"] = std::to_string(params.n);
  j["valid"] = params.valid();
  j["checks"] = {{"p_prime", params.checks.p_prime},   {"n_odd", params.checks.n_odd},
                 {"n3_is_3", params.checks.n3_is_3},   {"n_neq_p", params.checks.n_neq_p},
                 {"coprime", params.checks.coprime}};
  j["n3"] = params.n3.str();
  j["gcd"] = params.coprime_gcd.str();
  j["reasons"] = params.reasons();
  return j;
}

inline Json to_json(const Report& rep) {
  Json arr = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(e);
  }
  return arr;
}

inline Json to_json(const DegreeTable& table) {
  Json j;
  j["p"] = table.params.p.str();
  j["n"] = std::to_string(table.params.n);
  j["group_order"] = table.group_order.value.str();
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json factors = Json::object();
    for (const auto& [prime, e] : row.degree.factors) factors[prime.str()] = e;
    Json r;
    r["degree"] = row.degree.value.str();
    r["degree_factors"] = factors;
    r["multiplicity"] = row.multiplicity.str();
    r["source"] = to_string(row.source);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

inline Json graph_json(const PrimeGraph& g) {
  Json j;
  j["vertices"] = to_json(g.vertices());
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u.str(), v.str()});
  j["edges"] = edges;
  return j;
}

inline Json diameter_json(const Distance& d) {
  return is_finite(d) ? Json(std::get<std::size_t>(d)) : Json("inf");
}

inline Json to_json(const GraphProfile& prof) {
  Json j = graph_json(prof.graph);
  j["pi0"] = to_json(prof.pi0);
  j["pi1"] = to_json(prof.pi1);
  j["alpha"] = to_json(prof.alpha);
  j["beta"] = to_json(prof.beta);
  j["gamma"] = to_json(prof.gamma);
  j["delta"] = to_json(prof.delta);
  j["diameter"] = diameter_json(prof.diameter);
  j["structure"] = {{"pi0_clique", prof.pi0_clique},
                    {"pi1_clique", prof.pi1_clique},
                    {"alpha_delta_at_three", prof.alpha_delta_at_three},
                    {"others_within_two", prof.others_within_two},
                    {"component_bound", prof.bound_ok}};
  if (prof.is_diameter_three()) {
    const auto tb = theorem_b_check(prof);
    j["theorem_b"] = {{"bound", tb.bound.str()}, {"ok", tb.ok}};
  } else {
    j["theorem_b"] = nullptr;
  }
  return j;
}

inline Json to_json(const SearchWitness& w) {
  Json j;
  j["c"] = w.c;
  j["l"] = w.l;
  j["m_list"] = to_json(w.m_list);
  j["q_list"] = to_json(w.q_list);
  j["r_list"] = to_json(w.r_list);
  Json steps = Json::array();
  for (const auto& s : w.r_steps) {
    steps.push_back({{"a", s.a.str()},
                     {"b", s.b.str()},
                     {"alpha", s.alpha.str()},
                     {"beta", s.beta.str()},
                     {"d", s.d.str()},
                     {"modulus", Nat(s.a * s.b).str()},
                     {"prime", s.prime.str()},
                     {"scanned", s.scanned}});
  }
  j["r_steps"] = steps;
  j["crt"] = {{"m", w.m.str()},
              {"Q", w.q_product.str()},
              {"R", w.r_product.str()},
              {"alpha", w.alpha.str()},
              {"beta", w.beta.str()},
              {"f", w.f.str()},
              {"scanned", w.p_scanned}};
  j["p"] = w.p.str();
  j["n"] = w.n.str();
  return j;
}

inline Json to_json(const ScanRow& row) {
  Json j;
  j["n"] = row.n;
  j["l"] = row.l;
  j["parity"] = row.n % 2 == 0 ? "even" : "odd";
  j["coprime_ok"] = row.coprime_ok;
  j["omega"] = row.omega;
  j["omega_complete"] = row.omega_complete;
  j["target"] = row.target.str();
  j["verdict"] = to_string(row.verdict);
  j["certificate"] = to_json(row.certificate);
  return j;
}

}  // namespace cdg
