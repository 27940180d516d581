#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frobtrace/fsplit.hpp"
#include "frobtrace/projective.hpp"

namespace frobtrace {

inline constexpr const char* kJsonSchemaVersion = "1.0";

/// Variable names of the affine chart: the homogeneous names minus the chart one.
inline std::vector<std::string> chart_names(const std::vector<std::string>& vars, std::size_t chart) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (i != chart) out.push_back(vars[i]);
  return out;
}

/// A scalar serializes as its s residues in the power basis.
inline nlohmann::json to_json(const Scalar& c) { return nlohmann::json(c.coeffs()); }

inline nlohmann::json to_json(const DivisorSpec& d, const std::vector<std::string>& vars) {
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : d.hypersurfaces()) hs.push_back({{"f", to_string(h.f, vars)}, {"mult", h.mult}});
  return {{"n", d.n()}, {"hypersurfaces", hs}, {"k", d.k()}, {"text", d.describe(vars)}};
}

inline nlohmann::json to_json(const SectionSpace& space, const std::vector<std::string>& vars) {
  const auto names = chart_names(vars, space.chart());
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& m : space.basis()) basis.push_back(monomial_to_string(m, names));
  return {{"divisor", to_json(space.divisor(), vars)},
          {"bound", space.bound()},
          {"dim", space.dim()},
          {"den", to_string(space.den(), names)},
          {"basis", basis}};
}

inline nlohmann::json to_json(const MapVerdict& v) {
  return {{"rank", v.rank}, {"surjective", v.surjective}, {"zero", v.zero}};
}

/// {p, s, e, chart, src, tgt, matrix, verdict}
inline nlohmann::json to_json(const SemilinearMap& map, const std::vector<std::string>& vars) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < map.matrix().rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < map.matrix().cols(); ++c) row.push_back(to_json(map.matrix()(r, c)));
    rows.push_back(row);
  }
  const auto& field = map.src().divisor().field();
  return {{"p", field->p()},
          {"s", field->s()},
          {"e", map.e()},
          {"chart", vars.at(map.src().chart())},
          {"src", to_json(map.src(), vars)},
          {"tgt", to_json(map.tgt(), vars)},
          {"matrix", rows},
          {"verdict", to_json(map_verdict(map))}};
}

inline nlohmann::json to_json(const FsplitVerdict& v, const std::vector<std::string>& vars) {
  nlohmann::json out{{"split", v.split}};
  if (v.witness) {
    out["witness"] = {{"monomial", monomial_to_string(v.witness->monomial, vars)},
                      {"coefficient", to_json(v.witness->coefficient)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

}  // namespace frobtrace
