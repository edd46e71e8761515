#pragma once

// JSON report of a Kovacic run. Polynomial coefficients are strings
// "a" or "(a)+(b)*sqrt(D)", lowest degree first.

#include <json.hpp>
#include <string>

#include "sphgeo/kovacic/run.hpp"
#include "sphgeo/nve/json.hpp"

namespace sphgeo {

inline nlohmann::json poly_json(const PolyQE& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : p.coefficients()) j.push_back(c.to_string());
  return j;
}

inline nlohmann::json ratfunc_json(const RatFuncQE& f) { return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}}; }

inline nlohmann::json candidate_json(const CaseCandidate& c) {
  nlohmann::json sel = nlohmann::json::array();
  for (const auto& x : c.selection) sel.push_back(x.get_str());
  return {{"N", c.N}, {"d", c.d}, {"selection", sel}, {"branch", c.branch}};
}

inline nlohmann::json solution_json(const Solution& s) {
  nlohmann::json rel = nlohmann::json::array();
  for (const auto& c : s.relation.coefficients()) rel.push_back(ratfunc_json(c));
  nlohmann::json j{{"candidate", candidate_json(s.candidate)},
                   {"P", poly_json(s.P)},
                   {"theta", ratfunc_json(s.theta)},
                   {"omega_relation", rel}};
  if (s.relation.degree() == 1) j["omega"] = ratfunc_json(s.omega());
  return j;
}

inline nlohmann::json search_json(const SearchResult& r) {
  nlohmann::json j{{"status", to_string(r.status)},
                   {"unknowns", r.unknowns},
                   {"equations", r.equations},
                   {"rank", r.rank},
                   {"residual_degree", r.residual_degree}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

inline nlohmann::json fuchsian_json(const FuchsianODE& f) {
  nlohmann::json poles = nlohmann::json::array(), beta = nlohmann::json::array(), delta = nlohmann::json::array();
  for (const auto& x : f.poles) poles.push_back(quad_json(x));
  for (const auto& x : f.beta) beta.push_back(quad_json(x));
  for (const auto& x : f.delta) delta.push_back(quad_json(x));
  return {{"poles", poles}, {"beta", beta}, {"delta", delta}, {"beta_inf", quad_json(f.beta_inf)}};
}

inline nlohmann::json kovacic_json(const FuchsianODE& f, const KovacicOutcome& out) {
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& e : out.ledger) {
    nlohmann::json je = candidate_json(e.candidate);
    je["search"] = search_json(e.result);
    ledger.push_back(std::move(je));
  }
  nlohmann::json counts = nlohmann::json::object();
  for (int N : case_labels()) counts[std::to_string(N)] = out.candidates(N);
  nlohmann::json j{{"input", fuchsian_json(f)},
                   {"necessary_conditions",
                    {{"case1", out.conditions.case1}, {"case2", out.conditions.case2}, {"case3", out.conditions.case3}}},
                   {"skipped", out.skipped},
                   {"candidate_counts", counts},
                   {"ledger", ledger},
                   {"verdict", to_string(out.verdict)}};
  if (out.solution) {
    j["case"] = out.case_number;
    j["witness"] = solution_json(*out.solution);
  }
  return j;
}

inline nlohmann::json table1_json(const std::vector<std::pair<int, Table1Row>>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [n, row] : rows) {
    nlohmann::json jr{{"n", n}};
    for (const auto& [N, cell] : row) {
      nlohmann::json jc = nlohmann::json::array();
      for (const auto& [d, count] : cell) jc.push_back({{"d", d}, {"count", count}});
      jr["N=" + std::to_string(N)] = jc;
    }
    j.push_back(std::move(jr));
  }
  return j;
}

}  // namespace sphgeo
