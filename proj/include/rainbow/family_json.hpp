#pragma once

// Family file format (JSON):
//   {"universe": N,
//    "partite": {"k": K, "n": n} | null,
//    "families": [{"k": k_i, "edges": [[v, ...], ...]}, ...]}
// Vertices are 1-based. When "partite" is present the canonical labeling
// applies: vertex (q-1)*K + p lies in part p. Parse errors carry the
// offending family and edge indices (0-based, -1 when not applicable).

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/types.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::int64_t family_index = -1,
             std::int64_t edge_index = -1)
      : std::runtime_error(format(msg, family_index, edge_index)),
        family_index_(family_index),
        edge_index_(edge_index) {}

  std::int64_t family_index() const { return family_index_; }
  std::int64_t edge_index() const { return edge_index_; }

 private:
  static std::string format(const std::string& msg, std::int64_t fam, std::int64_t edge) {
    std::ostringstream os;
    os << msg;
    if (fam >= 0) os << " (family " << fam;
    if (edge >= 0) os << ", edge " << edge;
    if (fam >= 0) os << ")";
    return os.str();
  }

  std::int64_t family_index_;
  std::int64_t edge_index_;
};

inline Family family_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("family file must be a JSON object");
  if (!j.contains("universe") || !j["universe"].is_number_unsigned())
    throw ParseError("missing or invalid \"universe\"");
  const std::uint32_t universe = j["universe"].get<std::uint32_t>();

  std::optional<PartiteStructure> partite;
  if (j.contains("partite") && !j["partite"].is_null()) {
    const Json& p = j["partite"];
    if (!p.is_object() || !p.contains("k") || !p.contains("n") ||
        !p["k"].is_number_unsigned() || !p["n"].is_number_unsigned())
      throw ParseError("\"partite\" must be null or {\"k\": K, \"n\": n}");
    partite = PartiteStructure{p["k"].get<std::uint32_t>(), p["n"].get<std::uint32_t>()};
    if (partite->universe() != universe)
      throw ParseError("partite structure covers " + std::to_string(partite->universe()) +
                       " vertices but universe is " + std::to_string(universe));
  }

  if (!j.contains("families") || !j["families"].is_array() || j["families"].empty())
    throw ParseError("\"families\" must be a nonempty array");

  std::vector<Hypergraph> members;
  std::int64_t fam_index = 0;
  for (const Json& jf : j["families"]) {
    if (!jf.is_object() || !jf.contains("k") || !jf["k"].is_number_unsigned())
      throw ParseError("family entry needs an unsigned \"k\"", fam_index);
    const std::uint32_t k = jf["k"].get<std::uint32_t>();
    if (!jf.contains("edges") || !jf["edges"].is_array())
      throw ParseError("family entry needs an \"edges\" array", fam_index);

    std::vector<Edge> edges;
    std::int64_t edge_index = 0;
    for (const Json& je : jf["edges"]) {
      if (!je.is_array()) throw ParseError("edge must be an array", fam_index, edge_index);
      std::vector<VertexId> vs;
      for (const Json& jv : je) {
        if (!jv.is_number_unsigned() || jv.get<std::uint64_t>() == 0)
          throw ParseError("vertex ids are positive integers", fam_index, edge_index);
        vs.push_back(jv.get<VertexId>());
      }
      try {
        edges.emplace_back(std::move(vs));
      } catch (const HypergraphError& e) {
        throw ParseError(e.what(), fam_index, edge_index);
      }
      ++edge_index;
    }
    try {
      members.emplace_back(universe, k, std::move(edges), partite);
    } catch (const HypergraphError& e) {
      throw ParseError(e.what(), fam_index, e.edge_index());
    }
    ++fam_index;
  }

  try {
    return Family(std::move(members));
  } catch (const HypergraphError& e) {
    throw ParseError(e.what());
  }
}

inline Json edge_to_json(const Edge& e) {
  Json out = Json::array();
  for (VertexId v : e.vertices()) out.push_back(v);
  return out;
}

inline Json family_to_json(const Family& f) {
  Json out;
  out["universe"] = f.universe_size();
  if (f.partite())
    out["partite"] = Json{{"k", f.partite()->k}, {"n", f.partite()->n}};
  else
    out["partite"] = nullptr;
  out["families"] = Json::array();
  for (const Hypergraph& h : f.members()) {
    Json jf;
    jf["k"] = h.uniformity();
    jf["edges"] = Json::array();
    for (const Edge& e : h.edges()) jf["edges"].push_back(edge_to_json(e));
    out["families"].push_back(std::move(jf));
  }
  return out;
}

inline Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open family file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return family_from_json(j);
}

inline void save_family(const Family& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write family file: " + path);
  out << family_to_json(f).dump(2) << "\n";
}

inline Json matching_to_json(const RainbowMatching& m) {
  Json out = Json::array();
  for (const Pick& p : m.picks)
    out.push_back(Json{{"family", p.family}, {"edge", edge_to_json(p.edge)}});
  return out;
}

}  // namespace rainbow
