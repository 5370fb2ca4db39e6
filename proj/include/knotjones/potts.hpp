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
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "knotjones/errors.hpp"
#include "knotjones/tait.hpp"

namespace knotjones {
namespace potts {

using cplx = std::complex<double>;

// t(q) = (q + sqrt(q) sqrt(q-4) - 2) / 2, with sqrt(q-4) = i sqrt(4-q)
// below q = 4 (principal branch). q = 2, 3, 4 land on the unit circle at
// arguments pi/2, pi/3, 0.
struct EvaluationPoint {
  int q = 2;
  cplx t{0.0, 1.0};
};

inline EvaluationPoint eval_point(int q) {
  if (q < 2) throw ValidationError("q must be an integer >= 2");
  cplx rad = q >= 4 ? cplx(std::sqrt(double(q - 4)), 0.0)
                    : cplx(0.0, std::sqrt(double(4 - q)));
  return {q, 0.5 * (cplx(q - 2, 0.0) + std::sqrt(double(q)) * rad)};
}

// The tractable evaluation points: t on the unit circle with argument in
// {0, ±pi/3, ±pi/2, ±2pi/3, pi}. (q = 4 maps to argument 0.)
inline bool is_lattice_root(cplx t, double tol = 1e-9) {
  if (std::abs(std::abs(t) - 1.0) > tol) return false;
  static const double args[] = {0.0,           M_PI / 3, M_PI / 2,
                                2 * M_PI / 3,  M_PI,     -M_PI / 3,
                                -M_PI / 2,     -2 * M_PI / 3};
  double a = std::arg(t);
  for (double ref : args)
    if (std::abs(a - ref) < tol) return true;
  return false;
}

// Boltzmann weights for a satisfied edge: e^{J±} = -t^{∓1}.
struct Couplings {
  cplx w_plus;
  cplx w_minus;
};

inline Couplings couplings(cplx t) {
  if (std::abs(t) == 0.0) throw ZeroT("coupling undefined at t = 0");
  return {-1.0 / t, -t};
}

inline cplx edge_weight(const Couplings& cp, int sign) {
  return sign > 0 ? cp.w_plus : cp.w_minus;
}

// Exact sum over all q^n spin assignments. Each edge contributes its
// coupling weight when its endpoint spins agree and 1 otherwise; a
// self-loop always agrees with itself.
inline cplx partition_bruteforce(const TaitGraph& g, int q) {
  const EvaluationPoint ep = eval_point(q);
  const Couplings cp = couplings(ep.t);
  double configs = std::pow(double(q), double(g.n));
  if (configs > double(1 << 24) + 0.5)
    throw TooLarge("q^n exceeds 2^24 configurations");

  cplx loop_factor = 1.0;
  std::vector<SignedEdge> proper;
  for (const auto& e : g.edges) {
    if (e.u == e.v)
      loop_factor *= edge_weight(cp, e.sign);
    else
      proper.push_back(e);
  }

  std::vector<int> sigma(g.n, 0);
  cplx total = 0.0;
  const std::uint64_t count = static_cast<std::uint64_t>(configs + 0.5);
  for (std::uint64_t it = 0;; ++it) {
    cplx w = 1.0;
    for (const auto& e : proper)
      if (sigma[e.u] == sigma[e.v]) w *= edge_weight(cp, e.sign);
    total += w;
    if (it + 1 == count) break;
    for (int v = 0;; ++v) {
      if (++sigma[v] < q) break;
      sigma[v] = 0;
    }
  }
  return total * loop_factor;
}

// ---------------------------------------------------------------------
// Tensor-network contraction
// ---------------------------------------------------------------------

// Factor over a sorted scope of vertices; data is row-major with the
// first scope vertex slowest.
struct Factor {
  std::vector<int> scope;
  std::vector<cplx> data;
};

// The network form of the partition sum: a copy-spider per vertex, a q x q
// +/- matrix per edge (coupling on the diagonal, 1 off it), and the greedy
// min-degree order used to eliminate the spiders.
struct TensorNetwork {
  int q = 2;
  std::vector<int> spider_arity;        // per vertex
  std::vector<Factor> factors;          // one merged factor per vertex pair
  std::vector<int> elimination_order;
  cplx scalar = 1.0;                    // self-loops and q-counting
  int free_vertices = 0;                // vertices with no incident edge
};

inline TensorNetwork build_network(const TaitGraph& g, int q) {
  const EvaluationPoint ep = eval_point(q);
  const Couplings cp = couplings(ep.t);
  TensorNetwork tn;
  tn.q = q;
  tn.spider_arity.assign(g.n, 0);
  std::map<std::pair<int, int>, std::vector<int>> bundles;
  for (const auto& e : g.edges) {
    if (e.u == e.v) {
      tn.scalar *= edge_weight(cp, e.sign);
      continue;
    }
    tn.spider_arity[e.u]++;
    tn.spider_arity[e.v]++;
    bundles[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.sign);
  }
  for (const auto& [uv, signs] : bundles) {
    Factor f;
    f.scope = {uv.first, uv.second};
    f.data.assign(std::size_t(q) * q, 1.0);
    cplx diag = 1.0;
    for (int s : signs) diag *= edge_weight(cp, s);
    for (int i = 0; i < q; ++i) f.data[std::size_t(i) * q + i] = diag;
    tn.factors.push_back(std::move(f));
  }
  for (int v = 0; v < g.n; ++v)
    if (tn.spider_arity[v] == 0) tn.free_vertices++;
  return tn;
}

namespace detail {

// Multiply factors sharing vertex v and sum v out, producing a factor
// over the remaining union scope.
inline Factor eliminate_vertex(std::vector<Factor>& factors, int v, int q) {
  std::vector<Factor> touching;
  for (auto it = factors.begin(); it != factors.end();) {
    if (std::find(it->scope.begin(), it->scope.end(), v) != it->scope.end()) {
      touching.push_back(std::move(*it));
      it = factors.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<int> scope;
  for (const auto& f : touching)
    for (int u : f.scope)
      if (u != v && std::find(scope.begin(), scope.end(), u) == scope.end())
        scope.push_back(u);
  std::sort(scope.begin(), scope.end());

  const std::size_t out_size =
      static_cast<std::size_t>(std::pow(double(q), double(scope.size())) + 0.5);
  Factor out;
  out.scope = scope;
  out.data.assign(out_size, 0.0);

  std::vector<int> assign(scope.size(), 0);
  for (std::size_t idx = 0;; ++idx) {
    cplx acc = 0.0;
    for (int sv = 0; sv < q; ++sv) {
      cplx w = 1.0;
      for (const auto& f : touching) {
        std::size_t fidx = 0;
        for (int u : f.scope) {
          int val;
          if (u == v) {
            val = sv;
          } else {
            auto pos = std::lower_bound(scope.begin(), scope.end(), u);
            val = assign[std::size_t(pos - scope.begin())];
          }
          fidx = fidx * q + std::size_t(val);
        }
        w *= f.data[fidx];
      }
      acc += w;
    }
    out.data[idx] = acc;
    if (idx + 1 == out_size) break;
    for (std::size_t k = scope.size(); k-- > 0;) {
      if (++assign[k] < q) break;
      assign[k] = 0;
    }
  }
  return out;
}

}  // namespace detail

// Greedy min-degree vertex elimination over the factor graph. Agrees with
// partition_bruteforce on every input (that equality is the contraction
// oracle test) but runs in the induced-width cost rather than q^n. The
// chosen elimination order is recorded on the network.
inline cplx contract(TensorNetwork& tn) {
  std::vector<Factor> factors = std::move(tn.factors);
  const int q = tn.q;
  std::vector<int> active;
  for (std::size_t v = 0; v < tn.spider_arity.size(); ++v)
    if (tn.spider_arity[v] > 0) active.push_back(static_cast<int>(v));

  cplx scalar = tn.scalar;
  tn.elimination_order.clear();
  while (!active.empty()) {
    // degree = number of distinct co-scoped vertices; ties by index
    int best = -1;
    std::size_t best_deg = SIZE_MAX;
    for (int v : active) {
      std::vector<int> nbrs;
      for (const auto& f : factors)
        if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end())
          for (int u : f.scope)
            if (u != v &&
                std::find(nbrs.begin(), nbrs.end(), u) == nbrs.end())
              nbrs.push_back(u);
      if (nbrs.size() < best_deg) {
        best_deg = nbrs.size();
        best = v;
      }
    }
    tn.elimination_order.push_back(best);
    Factor f = detail::eliminate_vertex(factors, best, q);
    if (f.scope.empty())
      scalar *= f.data[0];
    else
      factors.push_back(std::move(f));
    active.erase(std::find(active.begin(), active.end(), best));
  }
  for (int k = 0; k < tn.free_vertices; ++k) scalar *= double(q);
  return scalar;
}

inline cplx partition_contract(const TaitGraph& g, int q) {
  TensorNetwork tn = build_network(g, q);
  return contract(tn);
}

// ---------------------------------------------------------------------
// Proportionality factor and the Jones value
// ---------------------------------------------------------------------

// All fractional powers of t use the principal branch: t = e^{i theta}
// with theta in (-pi, pi], and t^p := e^{i p theta}.
inline cplx principal_pow(cplx t, double p) {
  return std::exp(cplx(0.0, p * std::arg(t)));
}

struct JonesFactors {
  cplx t;
  int tau = 0;
  int w = 0;
  int n = 0;
  cplx A{1.0, 0.0};
};

// A = (-t^{1/2} - t^{-1/2})^{-(n+1)} (-t^{3/4})^w t^{tau/4}
inline cplx proportionality(cplx t, int tau, int w, int n) {
  const cplx base = -principal_pow(t, 0.5) - principal_pow(t, -0.5);
  if (std::abs(base) < 1e-9)
    throw SingularPrefactor("prefactor base -t^{1/2}-t^{-1/2} is singular");
  cplx A = std::pow(base, cplx(-(n + 1), 0.0));
  A *= std::pow(-principal_pow(t, 0.75), cplx(w, 0.0));
  A *= std::pow(principal_pow(t, 0.25), cplx(tau, 0.0));
  return A;
}

inline JonesFactors jones_factors(cplx t, int tau, int w, int n) {
  return {t, tau, w, n, proportionality(t, tau, w, n)};
}

// V_K(t(q)) = A(t, tau, w, n) * Z_K(q), with Z by brute force.
inline cplx jones_value(const TaitGraph& g, int w, int q) {
  const EvaluationPoint ep = eval_point(q);
  return proportionality(ep.t, g.tau(), w, g.n) * partition_bruteforce(g, q);
}

// Same value through the contraction path; used for cross-checks and for
// graphs too large to enumerate.
inline cplx jones_value_contracted(const TaitGraph& g, int w, int q) {
  const EvaluationPoint ep = eval_point(q);
  return proportionality(ep.t, g.tau(), w, g.n) * partition_contract(g, q);
}

}  // namespace potts
}  // namespace knotjones
