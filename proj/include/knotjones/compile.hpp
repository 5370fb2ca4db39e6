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
#include <map>
#include <vector>

#include "knotjones/circuit.hpp"

namespace knotjones {
namespace qc {

// Remove adjacent self-inverse CNOT pairs until a fixpoint. Never adds
// gates, so the CNOT count is non-increasing.
inline std::vector<Gate> peephole_cancel(std::vector<Gate> gates) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> out;
    out.reserve(gates.size());
    std::size_t i = 0;
    while (i < gates.size()) {
      if (i + 1 < gates.size() && gates[i].kind == GateKind::CNOT &&
          gates[i + 1] == gates[i]) {
        i += 2;
        changed = true;
      } else {
        out.push_back(gates[i]);
        ++i;
      }
    }
    gates = std::move(out);
  }
  return gates;
}

namespace detail {

// Phase polynomial over parity functions: subset S of qubits -> angle of
// e^{i angle (xor of S)}. Diagonal gates add small local patches:
//   K±(a,b)   phase th [xa = xb], th = ±pi/2
//             -> {c}: th/2, {a,b}: -th/2, {c,a,b}: th/2 once controlled
//   Phase(th) -> {c}: th
//   CPhase(th)(a,b) -> cubic monomial, Fourier-expanded over parities.
struct PhasePoly {
  std::map<std::vector<int>, double> terms;

  void add(std::vector<int> qubits, double angle) {
    std::sort(qubits.begin(), qubits.end());
    terms[std::move(qubits)] += angle;
  }
};

inline PhasePoly controlled_phase_poly(const Circuit& base, int control) {
  PhasePoly poly;
  for (const auto& g : base.gates) {
    switch (g.kind) {
      case GateKind::KPlus:
      case GateKind::KMinus: {
        const double th = (g.kind == GateKind::KPlus ? 1 : -1) * M_PI / 2;
        const int a = g.a + 1, b = g.b + 1;
        poly.add({control}, th / 2);
        poly.add({a, b}, -th / 2);
        poly.add({control, a, b}, th / 2);
        break;
      }
      case GateKind::Phase:
        poly.add({control}, g.angle);
        break;
      case GateKind::CPhase: {
        const double th = g.angle;
        const int a = g.a + 1, b = g.b + 1;
        poly.add({control}, th / 4);
        poly.add({a}, th / 4);
        poly.add({b}, th / 4);
        poly.add({control, a}, -th / 4);
        poly.add({control, b}, -th / 4);
        poly.add({a, b}, -th / 4);
        poly.add({control, a, b}, th / 4);
        break;
      }
      default:
        throw NotDiagonal("compile_controlled_diagonal needs a diagonal base");
    }
  }
  return poly;
}

}  // namespace detail

// Synthesize the H-test into {H, S, Sdg, Rz, CNOT, Phase}. Each parity
// term becomes a CNOT ladder conjugating one Rz on the term's highest
// qubit. Terms are emitted grouped by their non-control support so that
// consecutive ladders share CNOTs, which the peephole pass then cancels;
// that reproduces the redundant-CNOT structure and removes it.
//
// Rz(th) = e^{-i th/2} P(th), so each emitted Rz contributes th/2 to one
// trailing Phase gate. The result equals the H-test unitary exactly, not
// just up to phase.
inline Circuit compile_controlled_diagonal(const HTest& ht) {
  detail::PhasePoly poly = detail::controlled_phase_poly(ht.base, 0);

  Circuit out;
  out.n_qubits = ht.base.n_qubits + 1;
  out.level = CircuitLevel::compiled;
  for (int q = 0; q < ht.base.n_qubits; ++q) out.gates.push_back(Gate::h(q + 1));
  out.gates.push_back(Gate::h(0));
  if (ht.part == Part::imag) out.gates.push_back(Gate::sdg(0));

  struct Term {
    std::vector<int> rest;  // support without the control
    std::vector<int> qubits;
    double angle;
  };
  std::vector<Term> terms;
  for (const auto& [qs, angle] : poly.terms) {
    double th = std::remainder(angle, 2 * M_PI);
    if (std::abs(th) < 1e-15) continue;
    Term t;
    t.qubits = qs;
    for (int q : qs)
      if (q != 0) t.rest.push_back(q);
    t.angle = th;
    terms.push_back(std::move(t));
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.rest != b.rest) return a.rest < b.rest;
    return a.qubits.size() < b.qubits.size();
  });

  std::vector<Gate> body;
  double global = 0.0;
  for (const auto& t : terms) {
    const int target = t.qubits.back();
    std::vector<int> controls(t.qubits.begin(), t.qubits.end() - 1);
    for (auto it = controls.rbegin(); it != controls.rend(); ++it)
      body.push_back(Gate::cnot(*it, target));
    body.push_back(Gate::rz(target, t.angle));
    global += t.angle / 2;
    for (int q : controls) body.push_back(Gate::cnot(q, target));
  }
  body = peephole_cancel(std::move(body));
  for (auto& g : body) out.gates.push_back(g);

  global = std::remainder(global, 2 * M_PI);
  if (std::abs(global) > 1e-15) out.gates.push_back(Gate::phase(global));
  out.gates.push_back(Gate::h(0));
  return out;
}

// Replace each CNOT by an odd number of copies. Noiselessly the pairs
// cancel; under noise this scales the effective CNOT error rate by the
// stretch factor.
inline Circuit stretch_cnots(const Circuit& c, int factor) {
  if (factor < 1 || factor % 2 == 0)
    throw EvenFactor("stretch factor must be an odd integer >= 1");
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.level = c.level;
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::CNOT)
      for (int i = 0; i < factor; ++i) out.gates.push_back(g);
    else
      out.gates.push_back(g);
  }
  return out;
}

}  // namespace qc
}  // namespace knotjones
