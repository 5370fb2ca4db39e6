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
#include <string>
#include <vector>

#include <json.hpp>

#include "knotjones/errors.hpp"
#include "knotjones/tait.hpp"

namespace knotjones {
namespace qc {

using cplx = std::complex<double>;

enum class GateKind { H, S, Sdg, Rz, CNOT, KPlus, KMinus, Phase, CPhase };

// One gate. `a` is the only qubit for single-qubit kinds, the control for
// CNOT, the first qubit for K±/CPhase; Phase is a global phase and uses
// no qubits at all.
struct Gate {
  GateKind kind;
  int a = -1;
  int b = -1;
  double angle = 0.0;

  static Gate h(int q) { return {GateKind::H, q}; }
  static Gate s(int q) { return {GateKind::S, q}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q}; }
  static Gate rz(int q, double th) { return {GateKind::Rz, q, -1, th}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, c, t}; }
  static Gate kplus(int u, int v) { return {GateKind::KPlus, u, v}; }
  static Gate kminus(int u, int v) { return {GateKind::KMinus, u, v}; }
  static Gate phase(double th) { return {GateKind::Phase, -1, -1, th}; }
  static Gate cphase(int u, int v, double th) {
    return {GateKind::CPhase, u, v, th};
  }

  int qubit_count() const {
    switch (kind) {
      case GateKind::Phase:
        return 0;
      case GateKind::CNOT:
      case GateKind::KPlus:
      case GateKind::KMinus:
      case GateKind::CPhase:
        return 2;
      default:
        return 1;
    }
  }

  bool diagonal() const {
    return kind != GateKind::H && kind != GateKind::CNOT;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class CircuitLevel { abstract, compiled };

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  CircuitLevel level = CircuitLevel::abstract;

  int count(GateKind k) const {
    int c = 0;
    for (const auto& g : gates)
      if (g.kind == k) ++c;
    return c;
  }

  void check_indices() const {
    for (const auto& g : gates) {
      int nq = g.qubit_count();
      if (nq >= 1 && (g.a < 0 || g.a >= n_qubits))
        throw ValidationError("gate qubit index out of range");
      if (nq == 2) {
        if (g.b < 0 || g.b >= n_qubits)
          throw ValidationError("gate qubit index out of range");
        if (g.a == g.b)
          throw ValidationError("two-qubit gate needs distinct qubits");
      }
    }
  }
};

// ---------------------------------------------------------------------
// Dense state evolution
// ---------------------------------------------------------------------

inline constexpr int kUnitaryQubitCap = 11;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// Apply one gate in place to a 2^n state vector. Qubit q is bit q of the
// index. Diagonal gates touch only phases; CNOT is a pure permutation, so
// both are exact in floating point.
inline void apply_gate(std::vector<cplx>& state, const Gate& g) {
  const std::size_t N = state.size();
  switch (g.kind) {
    case GateKind::H: {
      const std::size_t step = std::size_t(1) << g.a;
      for (std::size_t i = 0; i < N; ++i)
        if (!(i & step)) {
          cplx x = state[i], y = state[i + step];
          state[i] = (x + y) * kInvSqrt2;
          state[i + step] = (x - y) * kInvSqrt2;
        }
      break;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      const cplx f = g.kind == GateKind::S ? cplx(0, 1) : cplx(0, -1);
      const std::size_t bit = std::size_t(1) << g.a;
      for (std::size_t i = 0; i < N; ++i)
        if (i & bit) state[i] *= f;
      break;
    }
    case GateKind::Rz: {
      const cplx f0 = std::exp(cplx(0, -g.angle / 2));
      const cplx f1 = std::exp(cplx(0, +g.angle / 2));
      const std::size_t bit = std::size_t(1) << g.a;
      for (std::size_t i = 0; i < N; ++i) state[i] *= (i & bit) ? f1 : f0;
      break;
    }
    case GateKind::CNOT: {
      const std::size_t cbit = std::size_t(1) << g.a;
      const std::size_t tbit = std::size_t(1) << g.b;
      for (std::size_t i = 0; i < N; ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(state[i], state[i | tbit]);
      break;
    }
    case GateKind::KPlus:
    case GateKind::KMinus: {
      const cplx f = g.kind == GateKind::KPlus ? cplx(0, 1) : cplx(0, -1);
      const std::size_t abit = std::size_t(1) << g.a;
      const std::size_t bbit = std::size_t(1) << g.b;
      for (std::size_t i = 0; i < N; ++i)
        if (bool(i & abit) == bool(i & bbit)) state[i] *= f;
      break;
    }
    case GateKind::Phase: {
      const cplx f = std::exp(cplx(0, g.angle));
      for (auto& x : state) x *= f;
      break;
    }
    case GateKind::CPhase: {
      const cplx f = std::exp(cplx(0, g.angle));
      const std::size_t abit = std::size_t(1) << g.a;
      const std::size_t bbit = std::size_t(1) << g.b;
      for (std::size_t i = 0; i < N; ++i)
        if ((i & abit) && (i & bbit)) state[i] *= f;
      break;
    }
  }
}

inline std::vector<cplx> run_from_basis(const Circuit& c, std::size_t basis) {
  std::vector<cplx> state(std::size_t(1) << c.n_qubits, cplx(0, 0));
  state[basis] = 1.0;
  for (const auto& g : c.gates) apply_gate(state, g);
  return state;
}

// Square dense matrix, row-major.
struct Matrix {
  std::size_t dim = 0;
  std::vector<cplx> a;

  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

// Exact unitary by applying the circuit to each basis column.
inline Matrix unitary_of(const Circuit& c) {
  if (c.n_qubits > kUnitaryQubitCap)
    throw TooLarge("unitary_of capped at " +
                   std::to_string(kUnitaryQubitCap) + " qubits");
  c.check_indices();
  const std::size_t N = std::size_t(1) << c.n_qubits;
  Matrix U;
  U.dim = N;
  U.a.assign(N * N, cplx(0, 0));
  for (std::size_t col = 0; col < N; ++col) {
    auto st = run_from_basis(c, col);
    for (std::size_t row = 0; row < N; ++row) U.at(row, col) = st[row];
  }
  return U;
}

// max |A - z B| over entries, minimised over a unit phase z (taken from
// the largest entry of B)
inline double distance_up_to_phase(const Matrix& A, const Matrix& B) {
  if (A.dim != B.dim) return 1e300;
  std::size_t ref = 0;
  for (std::size_t i = 0; i < B.a.size(); ++i)
    if (std::abs(B.a[i]) > std::abs(B.a[ref])) ref = i;
  if (std::abs(B.a[ref]) < 1e-300) return 1e300;
  cplx z = A.a[ref] / B.a[ref];
  if (std::abs(z) < 1e-300) return 1e300;
  z /= std::abs(z);
  double worst = 0.0;
  for (std::size_t i = 0; i < A.a.size(); ++i)
    worst = std::max(worst, std::abs(A.a[i] - z * B.a[i]));
  return worst;
}

inline double distance_exact(const Matrix& A, const Matrix& B) {
  if (A.dim != B.dim) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < A.a.size(); ++i)
    worst = std::max(worst, std::abs(A.a[i] - B.a[i]));
  return worst;
}

// ---------------------------------------------------------------------
// IQP circuit from a Tait graph (q = 2)
// ---------------------------------------------------------------------

// One qubit per vertex, one K± per edge in the graph's stored edge order.
// A self-loop of sign s is a global phase of (±i), i.e. Phase(±pi/2).
inline Circuit iqp_from_graph(const TaitGraph& g) {
  Circuit c;
  c.n_qubits = g.n;
  for (const auto& e : g.edges) {
    if (e.u == e.v)
      c.gates.push_back(Gate::phase(e.sign * M_PI / 2));
    else if (e.sign > 0)
      c.gates.push_back(Gate::kplus(e.u, e.v));
    else
      c.gates.push_back(Gate::kminus(e.u, e.v));
  }
  return c;
}

// 2^n <+|^n C |+>^n, evolved as a state vector. Independent of the Potts
// sum: this is what the spider-fusion identity promises equals Z_K(2).
inline cplx scaled_plus_amplitude(const Circuit& c) {
  if (c.n_qubits > kUnitaryQubitCap + 3)
    throw TooLarge("amplitude evaluation too large");
  const std::size_t N = std::size_t(1) << c.n_qubits;
  const double norm = std::sqrt(double(N));
  std::vector<cplx> state(N, cplx(1.0 / norm, 0.0));
  for (const auto& g : c.gates) apply_gate(state, g);
  cplx acc = 0.0;
  for (const auto& x : state) acc += x;
  return acc / norm * double(N);
}

// ---------------------------------------------------------------------
// Hadamard test
// ---------------------------------------------------------------------

enum class Part { real, imag };

inline const char* part_name(Part p) { return p == Part::real ? "real" : "imag"; }

// H-test over a diagonal base circuit. The control is qubit 0 and system
// qubits are shifted up by one. `full` is the executable n+1 qubit
// circuit; the controlled K± factor uses the exact identity
//   cK±(0; a, b) = CNOT(a,b) · S^{±1}(0) · CPhase(∓pi/2)(0,b) · CNOT(a,b)
// so the abstract circuit stays within the gate set.
struct HTest {
  Circuit base;
  Part part = Part::real;
  Circuit full;
};

namespace detail {

// P(theta) = diag(1, e^{i theta}) on one qubit = Phase(theta/2) Rz(theta)
inline void push_p(std::vector<Gate>& gs, int q, double th) {
  gs.push_back(Gate::phase(th / 2));
  gs.push_back(Gate::rz(q, th));
}

}  // namespace detail

inline HTest htest(const Circuit& base, Part part) {
  for (const auto& g : base.gates)
    if (g.kind != GateKind::KPlus && g.kind != GateKind::KMinus &&
        g.kind != GateKind::Phase && g.kind != GateKind::CPhase)
      throw NotDiagonal("H-test base must be a diagonal K±/Phase/CPhase circuit");
  HTest ht;
  ht.base = base;
  ht.part = part;
  Circuit& f = ht.full;
  f.n_qubits = base.n_qubits + 1;
  for (int q = 0; q < base.n_qubits; ++q) f.gates.push_back(Gate::h(q + 1));
  f.gates.push_back(Gate::h(0));
  if (part == Part::imag) f.gates.push_back(Gate::sdg(0));
  for (const auto& g : base.gates) {
    switch (g.kind) {
      case GateKind::KPlus:
      case GateKind::KMinus: {
        const bool plus = g.kind == GateKind::KPlus;
        const int a = g.a + 1, b = g.b + 1;
        f.gates.push_back(Gate::cnot(a, b));
        f.gates.push_back(plus ? Gate::s(0) : Gate::sdg(0));
        f.gates.push_back(Gate::cphase(0, b, plus ? -M_PI / 2 : M_PI / 2));
        f.gates.push_back(Gate::cnot(a, b));
        break;
      }
      case GateKind::Phase:
        detail::push_p(f.gates, 0, g.angle);
        break;
      case GateKind::CPhase: {
        // controlled-CPhase via the cubic parity identity
        //   xyz = (x + y + z - x⊕y - x⊕z - y⊕z + x⊕y⊕z) / 4
        const int a = g.a + 1, b = g.b + 1;
        const double th = g.angle;
        detail::push_p(f.gates, 0, th / 4);
        detail::push_p(f.gates, a, th / 4);
        detail::push_p(f.gates, b, th / 4);
        auto parity_p = [&f](std::vector<int> qs, double ang) {
          int t = qs.back();
          qs.pop_back();
          for (auto it = qs.rbegin(); it != qs.rend(); ++it)
            f.gates.push_back(Gate::cnot(*it, t));
          detail::push_p(f.gates, t, ang);
          for (int q : qs) f.gates.push_back(Gate::cnot(q, t));
        };
        parity_p({0, a}, -th / 4);
        parity_p({0, b}, -th / 4);
        parity_p({a, b}, -th / 4);
        parity_p({0, a, b}, th / 4);
        break;
      }
      default:
        break;
    }
  }
  f.gates.push_back(Gate::h(0));
  return ht;
}

// Noiseless control-qubit <Z> of a circuit, with the control at qubit 0.
inline double control_z_expectation(const Circuit& c) {
  auto st = run_from_basis(c, 0);
  double p0 = 0.0, p1 = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i)
    ((i & 1u) ? p1 : p0) += std::norm(st[i]);
  return p0 - p1;
}

// ---------------------------------------------------------------------
// JSON circuit format
// ---------------------------------------------------------------------

inline const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::Rz: return "rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::KPlus: return "kplus";
    case GateKind::KMinus: return "kminus";
    case GateKind::Phase: return "phase";
    case GateKind::CPhase: return "cphase";
  }
  return "?";
}

inline GateKind kind_from_name(const std::string& s) {
  if (s == "h") return GateKind::H;
  if (s == "s") return GateKind::S;
  if (s == "sdg") return GateKind::Sdg;
  if (s == "rz") return GateKind::Rz;
  if (s == "cnot") return GateKind::CNOT;
  if (s == "kplus") return GateKind::KPlus;
  if (s == "kminus") return GateKind::KMinus;
  if (s == "phase") return GateKind::Phase;
  if (s == "cphase") return GateKind::CPhase;
  throw MalformedRecord("unknown gate kind '" + s + "'");
}

inline bool kind_has_angle(GateKind k) {
  return k == GateKind::Rz || k == GateKind::Phase || k == GateKind::CPhase;
}

inline nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  j["level"] = c.level == CircuitLevel::abstract ? "abstract" : "compiled";
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json jg;
    jg["kind"] = kind_name(g.kind);
    nlohmann::json qs = nlohmann::json::array();
    if (g.qubit_count() >= 1) qs.push_back(g.a);
    if (g.qubit_count() == 2) qs.push_back(g.b);
    jg["qubits"] = qs;
    if (kind_has_angle(g.kind)) jg["angle"] = g.angle;
    gs.push_back(jg);
  }
  j["gates"] = gs;
  return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  c.n_qubits = j.at("n_qubits").get<int>();
  c.level = j.value("level", "abstract") == "compiled" ? CircuitLevel::compiled
                                                       : CircuitLevel::abstract;
  for (const auto& jg : j.at("gates")) {
    Gate g{kind_from_name(jg.at("kind").get<std::string>())};
    const auto& qs = jg.at("qubits");
    if (static_cast<int>(qs.size()) != g.qubit_count())
      throw MalformedRecord("gate qubit list has the wrong arity");
    if (g.qubit_count() >= 1) g.a = qs[0].get<int>();
    if (g.qubit_count() == 2) g.b = qs[1].get<int>();
    if (kind_has_angle(g.kind)) g.angle = jg.at("angle").get<double>();
    c.gates.push_back(g);
  }
  c.check_indices();
  return c;
}

}  // namespace qc
}  // namespace knotjones
