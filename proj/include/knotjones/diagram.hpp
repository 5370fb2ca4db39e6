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
#include <utility>
#include <vector>

#include "knotjones/errors.hpp"
#include "knotjones/pd.hpp"

namespace knotjones {

// Oriented diagram: the PD code plus per-crossing sign data derived from
// the label ordering. A crossing is +1 when rotating the under-strand
// counter-clockwise by a quarter turn aligns it with the over-strand,
// which in slot terms means the incoming over edge sits at slot 1.
struct KnotDiagram {
  PDCode pd;
  std::vector<int> crossing_signs;  // +1 / -1 per crossing
  std::vector<int> over_in;         // slot (1 or 3) of the incoming over edge
  int writhe = 0;
};

inline KnotDiagram orient_and_sign(const PDCode& pd) {
  if (!pd.empty()) validate_pd(pd);
  KnotDiagram d;
  d.pd = pd;
  for (int x = 0; x < pd.crossing_count(); ++x) {
    int oi = detail::over_in_slot(pd, x);
    d.over_in.push_back(oi);
    d.crossing_signs.push_back(oi == 1 ? +1 : -1);
    d.writhe += d.crossing_signs.back();
  }
  return d;
}

// (crossing, slot) corner of a face boundary
using CornerSlot = std::pair<int, int>;

struct Face {
  int id = 0;
  std::vector<CornerSlot> boundary;
};

struct FaceSet {
  std::vector<Face> faces;
  // face id per corner slot, indexed [crossing][slot]
  std::vector<std::array<int, 4>> slot_face;

  int face_of(int crossing, int slot) const {
    return slot_face[crossing][slot];
  }
};

// Face traversal of the 4-valent planar map. From a corner slot, cross to
// the other occurrence of its edge label and rotate one slot counter-
// clockwise; orbits of that permutation are the faces. A connected planar
// code has exactly c+2 of them (Euler); anything else is rejected.
//
// The crossingless unknot is special-cased to its two faces (outer, inner)
// with empty boundaries.
inline FaceSet faces(const KnotDiagram& d) {
  const PDCode& pd = d.pd;
  FaceSet fs;
  if (pd.empty()) {
    fs.faces.resize(2);
    fs.faces[0].id = 0;
    fs.faces[1].id = 1;
    return fs;
  }
  const int c = pd.crossing_count();
  // two slots per edge label
  std::vector<std::array<int, 2>> occ(pd.edge_count() + 1, {-1, -1});
  for (int x = 0; x < c; ++x)
    for (int k = 0; k < 4; ++k) {
      auto& o = occ[pd.crossings[x][k]];
      (o[0] < 0 ? o[0] : o[1]) = 4 * x + k;
    }
  fs.slot_face.assign(c, {-1, -1, -1, -1});
  auto face_at = [&](int s) -> int& { return fs.slot_face[s / 4][s % 4]; };
  for (int start = 0; start < 4 * c; ++start) {
    if (face_at(start) >= 0) continue;
    Face f;
    f.id = static_cast<int>(fs.faces.size());
    int s = start;
    while (face_at(s) < 0) {
      face_at(s) = f.id;
      f.boundary.emplace_back(s / 4, s % 4);
      const auto& o = occ[pd.crossings[s / 4][s % 4]];
      int mate = (o[0] == s) ? o[1] : o[0];
      s = (mate / 4) * 4 + (mate % 4 + 1) % 4;
    }
    fs.faces.push_back(std::move(f));
  }
  if (static_cast<int>(fs.faces.size()) != c + 2)
    throw NonPlanarCode("face traversal found " +
                        std::to_string(fs.faces.size()) + " faces, expected " +
                        std::to_string(c + 2));
  return fs;
}

struct CheckerboardColoring {
  std::vector<bool> black;  // per face id
  int outer_face = 0;       // always white

  int black_count() const {
    return static_cast<int>(std::count(black.begin(), black.end(), true));
  }
};

// Default outer face: the one whose traversal starts at the first corner
// slot of crossing 0. PD codes carry no embedding of the unbounded face,
// so any deterministic choice works; the invariant chain is colour-blind.
inline int default_outer_face(const FaceSet& fs) {
  return fs.slot_face.empty() ? 0 : fs.slot_face[0][0];
}

// Proper 2-colouring of the faces with the outer face white. Adjacency is
// across each strand segment (the two occurrences of an edge label).
inline CheckerboardColoring checkerboard(const KnotDiagram& d,
                                         const FaceSet& fs, int outer_face) {
  const int nf = static_cast<int>(fs.faces.size());
  if (outer_face < 0 || outer_face >= nf)
    throw ValidationError("outer face id out of range");
  CheckerboardColoring col;
  col.outer_face = outer_face;
  col.black.assign(nf, false);
  if (d.pd.empty()) {
    col.black[1 - outer_face] = true;
    return col;
  }
  std::vector<std::vector<int>> adj(nf);
  std::vector<std::array<int, 2>> occ(d.pd.edge_count() + 1, {-1, -1});
  for (int x = 0; x < d.pd.crossing_count(); ++x)
    for (int k = 0; k < 4; ++k) {
      auto& o = occ[d.pd.crossings[x][k]];
      (o[0] < 0 ? o[0] : o[1]) = 4 * x + k;
    }
  for (int l = 1; l <= d.pd.edge_count(); ++l) {
    int f1 = fs.slot_face[occ[l][0] / 4][occ[l][0] % 4];
    int f2 = fs.slot_face[occ[l][1] / 4][occ[l][1] % 4];
    adj[f1].push_back(f2);
    adj[f2].push_back(f1);
  }
  std::vector<int> colour(nf, -1);
  colour[outer_face] = 0;
  std::vector<int> stack{outer_face};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int g : adj[f]) {
      if (colour[g] < 0) {
        colour[g] = 1 - colour[f];
        stack.push_back(g);
      }
    }
  }
  for (int f = 0; f < nf; ++f) col.black[f] = colour[f] == 1;
  return col;
}

inline CheckerboardColoring checkerboard(const KnotDiagram& d,
                                         const FaceSet& fs) {
  return checkerboard(d, fs, default_outer_face(fs));
}

}  // namespace knotjones
