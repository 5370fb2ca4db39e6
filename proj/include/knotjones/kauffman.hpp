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

#include <cmath>
#include <complex>
#include <vector>

#include "knotjones/diagram.hpp"

namespace knotjones {

inline constexpr int kKauffmanCrossingCap = 20;

// Jones value via the Kauffman bracket state sum, exponential in the
// crossing count. This is the library's independent oracle for the Potts
// and circuit paths: it never touches faces, colourings or Tait graphs.
//
// Each of the 2^c smoothings resolves every crossing into one of its two
// planar pairings; with slots (a,b,c,d) the A-smoothing joins a-d and b-c,
// the B-smoothing a-b and c-d. Loops are counted with union-find over
// corner slots. With A = t^{-1/4} on the principal branch,
//   <K> = sum A^(#A - #B) d^(loops-1),  d = -A^2 - A^{-2},
// and V = (-A^3)^{-w} <K>, normalised to 1 on the unknot.
inline std::complex<double> kauffman_jones(const KnotDiagram& d,
                                           std::complex<double> t) {
  const int c = d.pd.crossing_count();
  if (c == 0) return {1.0, 0.0};
  if (c > kKauffmanCrossingCap)
    throw TooManyCrossings("state sum capped at " +
                           std::to_string(kKauffmanCrossingCap) +
                           " crossings, got " + std::to_string(c));

  const double theta = std::arg(t);
  const std::complex<double> A = std::exp(std::complex<double>(0, -theta / 4));
  const std::complex<double> dloop = -A * A - 1.0 / (A * A);

  const int nslots = 4 * c;
  std::vector<int> mate(nslots);
  {
    std::vector<std::array<int, 2>> occ(d.pd.edge_count() + 1, {-1, -1});
    for (int x = 0; x < c; ++x)
      for (int k = 0; k < 4; ++k) {
        auto& o = occ[d.pd.crossings[x][k]];
        (o[0] < 0 ? o[0] : o[1]) = 4 * x + k;
      }
    for (const auto& o : occ)
      if (o[0] >= 0) {
        mate[o[0]] = o[1];
        mate[o[1]] = o[0];
      }
  }

  // powers of d up to the max loop count
  std::vector<std::complex<double>> dpow(2 * c + 2);
  dpow[0] = 1.0;
  for (std::size_t i = 1; i < dpow.size(); ++i) dpow[i] = dpow[i - 1] * dloop;
  std::vector<std::complex<double>> apow(4 * c + 1);  // A^(k-2c)
  for (int k = 0; k <= 4 * c; ++k)
    apow[k] = std::pow(A, std::complex<double>(k - 2 * c, 0));

  std::vector<int> parent(nslots);
  auto find = [&](int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };

  std::complex<double> total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    for (int i = 0; i < nslots; ++i) parent[i] = i;
    auto unite = [&](int i, int j) { parent[find(i)] = find(j); };
    for (int i = 0; i < nslots; ++i) unite(i, mate[i]);
    int na = 0;
    for (int x = 0; x < c; ++x) {
      int s = 4 * x;
      if ((mask >> x) & 1u) {
        ++na;
        unite(s + 0, s + 3);
        unite(s + 1, s + 2);
      } else {
        unite(s + 0, s + 1);
        unite(s + 2, s + 3);
      }
    }
    int loops = 0;
    for (int i = 0; i < nslots; ++i)
      if (find(i) == i) ++loops;
    total += apow[na - (c - na) + 2 * c] * dpow[loops - 1];
  }

  const std::complex<double> mA3 = -A * A * A;
  return std::pow(mA3, std::complex<double>(-d.writhe, 0)) * total;
}

}  // namespace knotjones
