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
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "knotjones/errors.hpp"

namespace knotjones {

// Planar diagram code of a knot. Each crossing lists its four incident
// edge labels counter-clockwise, starting from the incoming under-strand.
// Labels run 1..2c and increase along the strand (mod 2c), so orientation
// is implicit. The empty code denotes the crossingless unknot.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;

  int crossing_count() const { return static_cast<int>(crossings.size()); }
  int edge_count() const { return 2 * crossing_count(); }
  bool empty() const { return crossings.empty(); }

  // label following `l` along the strand
  int next_label(int l) const { return 1 + l % edge_count(); }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      const auto& x = crossings[i];
      if (i) os << ' ';
      os << "X[" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ']';
    }
    return os.str();
  }
};

namespace detail {

// Slot index (1 or 3) of the incoming over-strand edge at crossing x.
// The under-strand consumes the transition a -> next(a); the over-strand
// consumes the remaining one. For the 1-crossing kink both label tests
// hold, and the loop edge (the one equal to the under-out slot) is the
// returning over-in.
inline int over_in_slot(const PDCode& pd, int x) {
  const auto& cr = pd.crossings[x];
  bool b_in = pd.next_label(cr[1]) == cr[3];
  bool d_in = pd.next_label(cr[3]) == cr[1];
  if (b_in && d_in) return cr[1] == cr[2] ? 1 : 3;
  if (b_in) return 1;
  if (d_in) return 3;
  throw MultiComponent("over-strand transition missing at crossing " +
                       std::to_string(x));
}

}  // namespace detail

// Full invariant check: labels are exactly {1..2c} each twice, and the 2c
// strand transitions l -> l+1 are each consumed by exactly one crossing
// passage, i.e. the code describes one closed component.
inline void validate_pd(const PDCode& pd) {
  const int m = pd.edge_count();
  std::vector<int> count(m + 1, 0);
  for (const auto& cr : pd.crossings)
    for (int l : cr) {
      if (l < 1 || l > m)
        throw BadEdgeMultiplicity("edge label " + std::to_string(l) +
                                  " outside 1.." + std::to_string(m));
      ++count[l];
    }
  for (int l = 1; l <= m; ++l)
    if (count[l] != 2)
      throw BadEdgeMultiplicity("edge label " + std::to_string(l) +
                                " occurs " + std::to_string(count[l]) +
                                " times");
  std::vector<int> sources(m + 1, 0);
  for (int x = 0; x < pd.crossing_count(); ++x) {
    const auto& cr = pd.crossings[x];
    if (pd.next_label(cr[0]) != cr[2])
      throw MultiComponent("under-strand does not continue at crossing " +
                           std::to_string(x));
    int oi = detail::over_in_slot(pd, x);
    ++sources[cr[0]];
    ++sources[cr[oi]];
  }
  for (int l = 1; l <= m; ++l)
    if (sources[l] != 1)
      throw MultiComponent("strand traversal does not close through edge " +
                           std::to_string(l));
}

// Parse whitespace-separated records `X[a,b,c,d]`. Empty input is
// rejected; the 0-crossing unknot is the default-constructed PDCode.
inline PDCode parse_pd(const std::string& text) {
  std::istringstream is(text);
  PDCode pd;
  std::string tok;
  bool any = false;
  while (is >> tok) {
    any = true;
    if (tok.size() < 10 || tok.substr(0, 2) != "X[" || tok.back() != ']')
      throw MalformedRecord("bad crossing record '" + tok + "'");
    std::array<int, 4> xs{};
    std::string body = tok.substr(2, tok.size() - 3);
    std::istringstream bs(body);
    for (int k = 0; k < 4; ++k) {
      std::string field;
      if (!std::getline(bs, field, ','))
        throw MalformedRecord("record '" + tok + "' has fewer than 4 labels");
      try {
        std::size_t pos = 0;
        xs[k] = std::stoi(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw MalformedRecord("bad label '" + field + "' in '" + tok + "'");
      }
      if (xs[k] < 1)
        throw MalformedRecord("labels must be positive in '" + tok + "'");
    }
    std::string rest;
    if (std::getline(bs, rest, ','))
      throw MalformedRecord("record '" + tok + "' has more than 4 labels");
    pd.crossings.push_back(xs);
  }
  if (!any) throw MalformedRecord("empty PD text");
  validate_pd(pd);
  return pd;
}

}  // namespace knotjones
