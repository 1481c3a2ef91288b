#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "umps/ch_relations.hpp"
#include "umps/span_character.hpp"
#include "umps/trace_calculus.hpp"

namespace umps {

using Json = nlohmann::json;

inline Json words_to_json(const std::vector<Bracelet>& list) {
  Json arr = Json::array();
  for (const auto& b : list) arr.push_back(word_to_string(b.representative));
  return arr;
}

inline Json words_to_json(const std::vector<Necklace>& list) {
  Json arr = Json::array();
  for (const auto& n : list) arr.push_back(word_to_string(n.representative));
  return arr;
}

// {"m":2,"n":2,"d":8,"coords":{"00000011":"<polynomial>", ...}}
inline Json coords_to_json(const UmpsCoordinateVector& v) {
  Json coords = Json::object();
  for (const auto& [w, p] : v.coords) coords[word_to_string(w)] = p.str();
  return Json{{"m", v.m}, {"n", v.n}, {"d", v.d}, {"basis", v.dihedral_basis ? "bracelets" : "necklaces"},
              {"coords", coords}};
}

// {"coeffs":["1","-1",...],"words":["11001010",...],"ambient":"dihedral",
//  "certificate":"symbolic"}
inline Json relation_to_json(const TraceRelation& rel, const std::string& ambient,
                             const std::string& certificate) {
  Json coeffs = Json::array();
  Json words = Json::array();
  for (const auto& t : rel.terms) {
    coeffs.push_back(rational_to_string(t.coeff));
    words.push_back(word_to_string(rel.full_word(t)));
  }
  return Json{{"coeffs", coeffs}, {"words", words}, {"ambient", ambient},
              {"certificate", certificate}};
}

inline Json character_to_json(const Character& chi) {
  Json dims = Json::object();
  for (std::size_t w = 0; w < chi.dims.size(); ++w)
    dims[std::to_string(w)] = chi.dims[w];
  Json j{{"m", chi.m}, {"n", chi.n}, {"d", chi.d}, {"k", chi.k}, {"dims", dims},
         {"total", chi.total}};
  if (chi.ambient != 0) j["ambient"] = chi.ambient.str();
  return j;
}

// Table-layout CSV row for the span character: d, D_0..D_ceil(d/2), total,
// ambient.
inline std::string character_csv_header(int d) {
  std::ostringstream os;
  os << "d";
  for (int w = 0; w <= (d + 1) / 2; ++w) os << ",D" << w;
  os << ",total,ambient";
  return os.str();
}

inline std::string character_csv_row(const Character& chi) {
  std::ostringstream os;
  os << chi.d;
  for (int w = 0; w <= (chi.d + 1) / 2; ++w) os << "," << chi.dims[static_cast<std::size_t>(w)];
  os << "," << chi.total << "," << chi.ambient.str();
  return os.str();
}

// Ideal-table CSV rows: weights 3..d for k=2 and 3..ceil(3d/2) for k=3.
inline std::pair<int, int> ideal_listed_range(int d, int k) {
  if (k == 2) return {3, d};
  if (k == 3) return {3, (3 * d + 1) / 2};
  return {0, k * d};
}

inline std::string ideal_csv_header(int d, int k) {
  auto [lo, hi] = ideal_listed_range(d, k);
  std::ostringstream os;
  os << "d";
  for (int w = lo; w <= hi; ++w) os << ",D" << w;
  return os.str();
}

inline std::string ideal_csv_row(const Character& chi) {
  auto [lo, hi] = ideal_listed_range(chi.d, chi.k);
  std::ostringstream os;
  os << chi.d;
  for (int w = lo; w <= hi; ++w) os << "," << chi.dims[static_cast<std::size_t>(w)];
  return os.str();
}

}  // namespace umps
