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

#include <algorithm>
#include <vector>

#include "knotjones/diagram.hpp"

namespace knotjones {

struct SignedEdge {
  int u = 0;
  int v = 0;
  int sign = +1;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

// Signed multigraph on the black regions of a checkerboard-coloured
// diagram: one vertex per black face, one signed edge per crossing.
// Parallel edges and self-loops are allowed.
struct TaitGraph {
  int n = 0;
  std::vector<SignedEdge> edges;

  int tau() const {
    int t = 0;
    for (const auto& e : edges) t += e.sign;
    return t;
  }

  friend bool operator==(const TaitGraph&, const TaitGraph&) = default;
};

// Around every crossing the four corner faces alternate colours, so the
// black pair sits at opposite slots: {1,3} (the over-strand axis) or
// {0,2} (the under-strand axis). The Tait sign is +1 when rotating the
// over-strand counter-clockwise onto the under-strand sweeps the white
// regions, which happens exactly when black is on the over axis.
inline TaitGraph tait_graph(const KnotDiagram& d, const FaceSet& fs,
                            const CheckerboardColoring& col) {
  TaitGraph g;
  std::vector<int> vid(fs.faces.size(), -1);
  for (std::size_t f = 0; f < fs.faces.size(); ++f)
    if (col.black[f]) vid[f] = g.n++;
  for (int x = 0; x < d.pd.crossing_count(); ++x) {
    int f1 = fs.face_of(x, 1), f3 = fs.face_of(x, 3);
    int f0 = fs.face_of(x, 0), f2 = fs.face_of(x, 2);
    SignedEdge e;
    if (col.black[f1] && col.black[f3]) {
      e = {std::min(vid[f1], vid[f3]), std::max(vid[f1], vid[f3]), +1};
    } else if (col.black[f0] && col.black[f2]) {
      e = {std::min(vid[f0], vid[f2]), std::max(vid[f0], vid[f2]), -1};
    } else {
      throw NonPlanarCode("black corners not opposite at crossing " +
                          std::to_string(x));
    }
    g.edges.push_back(e);
  }
  return g;
}

// Derive the Tait graph of a PD code with the default outer face.
inline TaitGraph tait_graph_of(const PDCode& pd) {
  KnotDiagram d = orient_and_sign(pd);
  FaceSet fs = faces(d);
  return tait_graph(d, fs, checkerboard(d, fs));
}

// Canonical form for comparisons: vertex ids kept, edges sorted.
inline TaitGraph sorted_edges(TaitGraph g) {
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v, a.sign) < std::tie(b.u, b.v, b.sign);
  });
  return g;
}

}  // namespace knotjones
