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

#include <array>
#include <vector>

#include "knotjones/diagram.hpp"

namespace knotjones {

enum class KinkSign { positive, negative };

namespace detail {

// True when the label at (crossing, slot) is incoming there.
inline bool incoming_at(const KnotDiagram& d, int crossing, int slot) {
  return slot == 0 || slot == d.over_in[crossing];
}

}  // namespace detail

// Insert a kink on `edge`, turning it into three edges through one new
// crossing of the requested sign. Labels of the tail part stay, the loop
// and continuation take edge+1 and edge+2, and everything above shifts by
// two, so the result is canonically numbered by construction. On the
// empty diagram this produces the 1-crossing unknot.
inline KnotDiagram r1_insert(const KnotDiagram& d, int edge, KinkSign kink) {
  if (d.pd.empty()) {
    PDCode pd;
    if (kink == KinkSign::positive)
      pd.crossings.push_back({1, 2, 2, 1});
    else
      pd.crossings.push_back({1, 1, 2, 2});
    return orient_and_sign(pd);
  }
  if (edge < 1 || edge > d.pd.edge_count())
    throw ValidationError("edge label out of range for r1_insert");
  PDCode out;
  for (int x = 0; x < d.pd.crossing_count(); ++x) {
    std::array<int, 4> tup{};
    for (int k = 0; k < 4; ++k) {
      int l = d.pd.crossings[x][k];
      int nl = l <= edge ? l : l + 2;
      if (l == edge && detail::incoming_at(d, x, k)) nl = edge + 2;
      tup[k] = nl;
    }
    out.crossings.push_back(tup);
  }
  if (kink == KinkSign::positive)
    out.crossings.push_back({edge, edge + 1, edge + 1, edge + 2});
  else
    out.crossings.push_back({edge, edge + 2, edge + 1, edge + 1});
  return orient_and_sign(out);
}

// Push edge_a over edge_b across a face they both bound. Adds one +1 and
// one -1 crossing; the writhe and every invariant of this library are
// unchanged. The two strands may run parallel or anti-parallel along the
// shared face and either may be traversed with or against the boundary
// walk, giving four local gluings; the walk-alignment flags select the
// right one.
inline KnotDiagram r2_insert(const KnotDiagram& d, int edge_a, int edge_b) {
  const PDCode& pd = d.pd;
  if (pd.empty()) throw EdgesNotCoFacial("no edges in the empty diagram");
  const int m = pd.edge_count();
  if (edge_a < 1 || edge_a > m || edge_b < 1 || edge_b > m)
    throw ValidationError("edge label out of range for r2_insert");
  if (edge_a == edge_b)
    throw EdgesNotCoFacial("r2_insert needs two distinct edges");

  FaceSet fs = faces(d);
  bool found = false;
  bool align_a = false, align_b = false;
  for (const Face& f : fs.faces) {
    bool has_a = false, has_b = false, oa = false, ob = false;
    for (const auto& [x, k] : f.boundary) {
      int l = pd.crossings[x][k];
      bool outgoing = !detail::incoming_at(d, x, k);
      if (l == edge_a) {
        has_a = true;
        oa = outgoing;
      }
      if (l == edge_b) {
        has_b = true;
        ob = outgoing;
      }
    }
    if (has_a && has_b) {
      found = true;
      align_a = oa;
      align_b = ob;
      break;
    }
  }
  if (!found)
    throw EdgesNotCoFacial("edges " + std::to_string(edge_a) + " and " +
                           std::to_string(edge_b) +
                           " do not bound a common face");

  const int lo = std::min(edge_a, edge_b), hi = std::max(edge_a, edge_b);
  auto relabel = [&](int l) { return l <= lo ? l : (l <= hi ? l + 2 : l + 4); };
  auto part1 = [&](int e) { return e == lo ? e : hi + 2; };
  const int x1 = part1(edge_a), x2 = x1 + 1, x3 = x1 + 2;
  const int y1 = part1(edge_b), y2 = y1 + 1, y3 = y1 + 2;

  PDCode out;
  for (int x = 0; x < pd.crossing_count(); ++x) {
    std::array<int, 4> tup{};
    for (int k = 0; k < 4; ++k) {
      int l = pd.crossings[x][k];
      int nl = relabel(l);
      if (l == edge_a && detail::incoming_at(d, x, k)) nl = x3;
      if (l == edge_b && detail::incoming_at(d, x, k)) nl = y3;
      tup[k] = nl;
    }
    out.crossings.push_back(tup);
  }
  if (align_a && align_b) {
    out.crossings.push_back({y1, x3, y2, x2});
    out.crossings.push_back({y2, x1, y3, x2});
  } else if (!align_a && !align_b) {
    out.crossings.push_back({y1, x2, y2, x3});
    out.crossings.push_back({y2, x2, y3, x1});
  } else if (align_a && !align_b) {
    out.crossings.push_back({y1, x2, y2, x1});
    out.crossings.push_back({y2, x2, y3, x3});
  } else {
    out.crossings.push_back({y1, x1, y2, x2});
    out.crossings.push_back({y2, x3, y3, x2});
  }
  return orient_and_sign(out);
}

}  // namespace knotjones
