#pragma once

// JSON form of the NVE data. Field elements are {"a", "b", "D"} with value
// a + b sqrt(D); rational functions are integer coefficient lists, lowest
// degree first, for numerator and denominator.

#include <json.hpp>
#include <string>
#include <vector>

#include "sphgeo/nve/nve.hpp"

namespace sphgeo {

inline nlohmann::json quad_json(const QuadExt& x) {
  nlohmann::json j{{"a", x.a().get_str()}, {"b", x.b().get_str()}};
  j["D"] = x.field() ? x.field()->discriminant().get_str() : "1";
  j["approx"] = x.to_double();
  return j;
}

/// Numerator and denominator scaled by a common integer so both have
/// integer coefficients with no common content.
inline std::pair<std::vector<Integer>, std::vector<Integer>> integer_form(const RatFuncQ& f) {
  Integer l = 1;
  for (const auto* p : {&f.num(), &f.den()}) {
    for (const auto& c : p->coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<Integer> num, den;
  Integer g = 0;
  for (const auto& c : f.num().coefficients()) num.push_back(Integer(c * l));
  for (const auto& c : f.den().coefficients()) den.push_back(Integer(c * l));
  for (const auto* v : {&num, &den}) {
    for (const auto& c : *v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g > 1) {
    for (auto* v : {&num, &den}) {
      for (auto& c : *v) c /= g;
    }
  }
  return {num, den};
}

inline nlohmann::json ratfunc_json(const RatFuncQ& f) {
  const auto [num, den] = integer_form(f);
  nlohmann::json jn = nlohmann::json::array(), jd = nlohmann::json::array();
  for (const auto& c : num) jn.push_back(c.get_str());
  for (const auto& c : den) jd.push_back(c.get_str());
  return {{"num", jn}, {"den", jd}};
}

inline nlohmann::json nve_json(const NVEData& d) {
  nlohmann::json poles = nlohmann::json::array(), beta = nlohmann::json::array(), delta = nlohmann::json::array();
  for (const auto& x : d.poles) poles.push_back(quad_json(x));
  for (const auto& x : d.beta) beta.push_back(quad_json(x));
  for (const auto& x : d.delta) delta.push_back(quad_json(x));
  nlohmann::json j{{"n", d.n},
                   {"eps", d.eps.get_str()},
                   {"pole_labels", d.n == 1 ? nlohmann::json{"-1", "eps", "-eps", "rho"}
                                            : nlohmann::json{"-1", "eps", "-eps", "rho+", "rho-"}},
                   {"poles", poles},
                   {"beta", beta},
                   {"delta", delta},
                   {"beta_inf", quad_json(d.beta_inf)},
                   {"regular_at_infinity", d.regular_at_infinity},
                   {"p", ratfunc_json(d.p)},
                   {"q", ratfunc_json(d.q)},
                   {"r", ratfunc_json(d.r)}};
  if (d.n > 1) j["delta_sign_pairing"] = "upper sign: +eps and rho+";
  return j;
}

}  // namespace sphgeo
