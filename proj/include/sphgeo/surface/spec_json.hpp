#pragma once

// JSON form of a surface selection, e.g. {"family": "sectoral", "n": 3, "eps": 0.2}.

#include <json.hpp>

#include "sphgeo/surface/surface.hpp"

namespace sphgeo {

inline void to_json(nlohmann::json& j, const SurfaceSpec& s) {
  j = nlohmann::json{{"family", to_string(s.family)}, {"eps", s.eps}};
  switch (s.family) {
    case Family::sectoral: j["n"] = s.m; break;
    case Family::zonal: j["l"] = s.l; break;
    case Family::tesseral:
      j["l"] = s.l;
      j["m"] = s.m;
      break;
    case Family::custom: break;
  }
}

inline void from_json(const nlohmann::json& j, SurfaceSpec& s) {
  s.family = family_from_string(j.at("family").get<std::string>());
  s.eps = j.at("eps").get<double>();
  switch (s.family) {
    case Family::sectoral: s.l = s.m = j.at("n").get<int>(); break;
    case Family::zonal:
      s.l = j.at("l").get<int>();
      s.m = 0;
      break;
    case Family::tesseral:
      s.l = j.at("l").get<int>();
      s.m = j.at("m").get<int>();
      break;
    case Family::custom: throw std::invalid_argument("custom surfaces have no JSON form");
  }
}

}  // namespace sphgeo
