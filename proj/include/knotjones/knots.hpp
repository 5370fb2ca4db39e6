// Copyright 2026 The knotjones developers
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

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotjones/tait.hpp"

namespace knotjones {

// A knot ready for the pipeline: the Tait graph, writhe, and where known
// the exact Jones value at t = i. The PD code is kept when the graph was
// reconstructed from one, so the derivation can be revalidated.
struct KnotRecord {
  std::string name;
  TaitGraph graph;
  int writhe = 0;
  std::optional<PDCode> pd;
  std::optional<std::complex<double>> exact_jones_at_i;
};

inline const char* kTrefoilPD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
inline const char* kTrefoilTwistPD =
    "X[1,6,2,7] X[5,8,6,1] X[7,4,8,5] X[2,3,3,4]";

// Four equivalent knots whose circuits span 2..4 qubits; all have Jones
// value -1 at t = i. The closed forms carry no PD code: they come from
// the dual checkerboard colouring, which the record format cannot pin to
// a diagram.
inline std::vector<KnotRecord> builtin_knots() {
  std::vector<KnotRecord> out;

  KnotRecord trefoil;
  trefoil.name = "trefoil";
  trefoil.graph = {3, {{0, 1, +1}, {0, 2, +1}, {1, 2, +1}}};
  trefoil.writhe = 3;
  trefoil.pd = parse_pd(kTrefoilPD);
  trefoil.exact_jones_at_i = {-1.0, 0.0};
  out.push_back(trefoil);

  KnotRecord closed;
  closed.name = "closed-trefoil";
  closed.graph = {2, {{0, 1, -1}, {0, 1, -1}, {0, 1, -1}}};
  closed.writhe = 3;
  closed.exact_jones_at_i = {-1.0, 0.0};
  out.push_back(closed);

  KnotRecord twist;
  twist.name = "trefoil+twist";
  twist.graph = {4, {{0, 1, +1}, {0, 2, +1}, {1, 2, +1}, {1, 3, -1}}};
  twist.writhe = 4;
  twist.pd = parse_pd(kTrefoilTwistPD);
  twist.exact_jones_at_i = {-1.0, 0.0};
  out.push_back(twist);

  KnotRecord closed_twist;
  closed_twist.name = "closed-trefoil+twist";
  closed_twist.graph = {3, {{0, 1, -1}, {0, 1, -1}, {0, 1, -1}, {1, 2, -1}}};
  closed_twist.writhe = 4;
  closed_twist.exact_jones_at_i = {-1.0, 0.0};
  out.push_back(closed_twist);

  return out;
}

// The 0-crossing unknot: one spin, no interactions, V = 1 everywhere.
inline KnotRecord unknot_record() {
  KnotRecord r;
  r.name = "unknot";
  r.graph = {1, {}};
  r.writhe = 0;
  r.pd = PDCode{};
  r.exact_jones_at_i = {1.0, 0.0};
  return r;
}

inline std::optional<KnotRecord> find_builtin(const std::string& name) {
  if (name == "unknot") return unknot_record();
  for (auto& r : builtin_knots())
    if (r.name == name) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------------
// JSON knot-library format
// ---------------------------------------------------------------------

inline nlohmann::json tait_to_json(const TaitGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.sign});
  return edges;
}

inline TaitGraph tait_from_json(int n, const nlohmann::json& edges) {
  TaitGraph g;
  g.n = n;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3)
      throw MalformedRecord("tait edge must be [u, v, sign]");
    SignedEdge se{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
    if (se.u < 0 || se.u >= n || se.v < 0 || se.v >= n)
      throw MalformedRecord("tait edge endpoint out of range");
    if (se.sign != 1 && se.sign != -1)
      throw MalformedRecord("tait edge sign must be +1 or -1");
    g.edges.push_back(se);
  }
  return g;
}

inline nlohmann::json record_to_json(const KnotRecord& r) {
  nlohmann::json j;
  j["name"] = r.name;
  if (r.pd) j["pd"] = r.pd->str();
  j["tait_edges"] = tait_to_json(r.graph);
  j["writhe"] = r.writhe;
  j["tau"] = r.graph.tau();
  j["n"] = r.graph.n;
  if (r.exact_jones_at_i)
    j["exact_jones_at_i"] = {r.exact_jones_at_i->real(),
                             r.exact_jones_at_i->imag()};
  return j;
}

inline KnotRecord record_from_json(const nlohmann::json& j) {
  KnotRecord r;
  r.name = j.value("name", "unnamed");
  if (!j.contains("tait_edges") || !j.contains("n") || !j.contains("writhe"))
    throw MalformedRecord("knot record needs name, n, tait_edges, writhe");
  r.graph = tait_from_json(j["n"].get<int>(), j["tait_edges"]);
  r.writhe = j["writhe"].get<int>();
  if (j.contains("tau") && j["tau"].get<int>() != r.graph.tau())
    throw MalformedRecord("stored tau disagrees with the edge signs");
  if (j.contains("pd")) {
    r.pd = parse_pd(j["pd"].get<std::string>());
    TaitGraph derived = tait_graph_of(*r.pd);
    if (sorted_edges(derived) != sorted_edges(r.graph))
      throw MalformedRecord("stored Tait graph disagrees with the PD code");
    if (orient_and_sign(*r.pd).writhe != r.writhe)
      throw MalformedRecord("stored writhe disagrees with the PD code");
  }
  if (j.contains("exact_jones_at_i")) {
    auto v = j["exact_jones_at_i"];
    r.exact_jones_at_i =
        std::complex<double>(v[0].get<double>(), v[1].get<double>());
  }
  return r;
}

}  // namespace knotjones
