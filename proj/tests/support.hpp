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
#include <vector>

#include "knotjones/diagram.hpp"
#include "knotjones/knots.hpp"
#include "knotjones/moves.hpp"
#include "knotjones/rng.hpp"
#include "knotjones/tait.hpp"

namespace kjtest {

using knotjones::KinkSign;
using knotjones::KnotDiagram;
using knotjones::SignedEdge;
using knotjones::SplitMix64;
using knotjones::TaitGraph;

inline double cdist(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b);
}

// Random signed multigraph, parallel edges and self-loops included.
inline TaitGraph random_signed_graph(SplitMix64& rng, int max_n) {
  TaitGraph g;
  g.n = 1 + static_cast<int>(rng.below(std::uint64_t(max_n)));
  int m = static_cast<int>(rng.below(std::uint64_t(2 * g.n + 3)));
  for (int i = 0; i < m; ++i) {
    int u = static_cast<int>(rng.below(std::uint64_t(g.n)));
    int v = static_cast<int>(rng.below(std::uint64_t(g.n)));
    int s = rng.bernoulli(0.5) ? +1 : -1;
    g.edges.push_back({std::min(u, v), std::max(u, v), s});
  }
  return g;
}

// Apply one random legal R1 or R2 insertion. R2 targets are drawn from
// the co-facial pairs, so the move always succeeds.
inline KnotDiagram random_move(SplitMix64& rng, const KnotDiagram& d,
                               double r1_bias = 0.5) {
  using namespace knotjones;
  if (d.pd.empty() || rng.uniform() < r1_bias) {
    int m = d.pd.edge_count();
    int edge = d.pd.empty() ? 1 : 1 + static_cast<int>(rng.below(m));
    return r1_insert(d, edge,
                     rng.bernoulli(0.5) ? KinkSign::positive
                                        : KinkSign::negative);
  }
  FaceSet fs = faces(d);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& f : fs.faces) {
    std::vector<int> labs;
    for (const auto& [x, k] : f.boundary) {
      int l = d.pd.crossings[x][k];
      if (std::find(labs.begin(), labs.end(), l) == labs.end())
        labs.push_back(l);
    }
    for (std::size_t i = 0; i < labs.size(); ++i)
      for (std::size_t j = 0; j < labs.size(); ++j)
        if (i != j) pairs.emplace_back(labs[i], labs[j]);
  }
  if (pairs.empty()) return random_move(rng, d, 1.0);
  auto [a, b] = pairs[rng.below(pairs.size())];
  return r2_insert(d, a, b);
}

// Random planar diagram: a seed knot (unknot or trefoil) deformed by a
// few random moves. Crossing growth is capped so state sums stay cheap.
inline KnotDiagram random_diagram(SplitMix64& rng, int max_crossings,
                                  int moves) {
  using namespace knotjones;
  KnotDiagram d;
  if (rng.bernoulli(0.5)) {
    d = orient_and_sign(parse_pd(kTrefoilPD));
  } else {
    d = orient_and_sign(PDCode{});
  }
  for (int i = 0; i < moves; ++i) {
    double r1_bias = d.pd.crossing_count() + 2 > max_crossings ? 1.0 : 0.5;
    if (d.pd.crossing_count() + 1 > max_crossings) break;
    d = random_move(rng, d, r1_bias);
  }
  return d;
}

}  // namespace kjtest
