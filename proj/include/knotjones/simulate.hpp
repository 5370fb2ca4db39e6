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

#include <cstdint>
#include <thread>
#include <vector>

#include "knotjones/circuit.hpp"
#include "knotjones/noise.hpp"
#include "knotjones/rng.hpp"

namespace knotjones {
namespace sim {

using qc::Circuit;
using qc::Gate;
using qc::GateKind;
using qc::cplx;

inline constexpr int kDensityQubitCap = 7;
inline constexpr int kSamplerQubitCap = 16;

struct ShotCounts {
  long long shots = 0;
  long long k0 = 0;
  long long k1 = 0;
};

struct Estimate {
  double value = 0.0;
  double std = 0.0;
  long long shots = 0;
  std::uint64_t seed = 0;
};

inline Estimate estimate_from_counts(const ShotCounts& sc,
                                     std::uint64_t seed) {
  Estimate e;
  e.shots = sc.shots;
  e.seed = seed;
  e.value = double(sc.k0 - sc.k1) / double(sc.shots);
  double var = (1.0 - e.value * e.value) / double(sc.shots);
  e.std = var > 0 ? std::sqrt(var) : 0.0;
  return e;
}

namespace detail {

inline Gate conj_gate(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::S: out.kind = GateKind::Sdg; break;
    case GateKind::Sdg: out.kind = GateKind::S; break;
    case GateKind::KPlus: out.kind = GateKind::KMinus; break;
    case GateKind::KMinus: out.kind = GateKind::KPlus; break;
    case GateKind::Rz:
    case GateKind::Phase:
    case GateKind::CPhase: out.angle = -g.angle; break;
    default: break;
  }
  return out;
}

// 0 = X, 1 = Y, 2 = Z on qubit q; `conj` applies the complex conjugate
// (only Y changes, by a sign).
inline void apply_pauli(std::vector<cplx>& state, int axis, int q,
                        bool conj = false) {
  const std::size_t N = state.size();
  const std::size_t bit = std::size_t(1) << q;
  switch (axis) {
    case 0:
      for (std::size_t i = 0; i < N; ++i)
        if (!(i & bit)) std::swap(state[i], state[i | bit]);
      break;
    case 1: {
      const cplx up = conj ? cplx(0, -1) : cplx(0, 1);
      for (std::size_t i = 0; i < N; ++i)
        if (!(i & bit)) {
          cplx lo = state[i], hi = state[i | bit];
          state[i] = -up * hi;
          state[i | bit] = up * lo;
        }
      break;
    }
    default:
      for (std::size_t i = 0; i < N; ++i)
        if (i & bit) state[i] = -state[i];
      break;
  }
}

}  // namespace detail

// Density matrix under the gate + stochastic-Pauli channel model. Row
// major; applying a unitary hits the columns with U and the rows with
// conj(U).
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits) : n_(n_qubits) {
    if (n_ > kDensityQubitCap)
      throw TooLarge("density-matrix evolution capped at " +
                     std::to_string(kDensityQubitCap) + " qubits");
    N_ = std::size_t(1) << n_;
    rho_.assign(N_ * N_, cplx(0, 0));
    rho_[0] = 1.0;
  }

  int n_qubits() const { return n_; }
  const std::vector<cplx>& data() const { return rho_; }

  void apply_unitary(const Gate& g) {
    for_columns([&](std::vector<cplx>& col) { qc::apply_gate(col, g); });
    Gate cg = detail::conj_gate(g);
    for_rows([&](std::vector<cplx>& row) { qc::apply_gate(row, cg); });
  }

  void apply_pauli_sandwich(const std::vector<std::pair<int, int>>& ops) {
    // ops: (axis, qubit) pairs forming a Pauli string P; rho -> P rho P
    for_columns([&](std::vector<cplx>& col) {
      for (auto [axis, q] : ops) detail::apply_pauli(col, axis, q, false);
    });
    for_rows([&](std::vector<cplx>& row) {
      for (auto [axis, q] : ops) detail::apply_pauli(row, axis, q, true);
    });
  }

  // (1-p) rho + p/3 sum_P P rho P over X, Y, Z on one qubit
  void depolarize_1q(int q, double p) {
    if (p <= 0) return;
    std::vector<cplx> acc(rho_);
    for (auto& x : acc) x *= (1.0 - p);
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<cplx> tmp(rho_);
      std::swap(tmp, rho_);
      apply_pauli_sandwich({{axis, q}});
      for (std::size_t i = 0; i < rho_.size(); ++i)
        acc[i] += (p / 3.0) * rho_[i];
      std::swap(tmp, rho_);
    }
    rho_ = std::move(acc);
  }

  // (1-p) rho + p/15 sum over the 15 non-identity two-qubit Paulis
  void depolarize_2q(int a, int b, double p) {
    if (p <= 0) return;
    std::vector<cplx> acc(rho_);
    for (auto& x : acc) x *= (1.0 - p);
    for (int k = 1; k < 16; ++k) {
      int ka = k & 3, kb = (k >> 2) & 3;
      std::vector<std::pair<int, int>> ops;
      if (ka) ops.emplace_back(ka - 1, a);
      if (kb) ops.emplace_back(kb - 1, b);
      std::vector<cplx> tmp(rho_);
      std::swap(tmp, rho_);
      apply_pauli_sandwich(ops);
      for (std::size_t i = 0; i < rho_.size(); ++i)
        acc[i] += (p / 15.0) * rho_[i];
      std::swap(tmp, rho_);
    }
    rho_ = std::move(acc);
  }

  void apply_gate_with_noise(const Gate& g, const NoiseModel& nm) {
    apply_unitary(g);
    if (g.kind == GateKind::CNOT) {
      depolarize_2q(g.a, g.b, nm.p_cnot);
    } else if (g.qubit_count() == 1) {
      depolarize_1q(g.a, nm.p_1q);
    } else if (g.qubit_count() == 2) {
      depolarize_2q(g.a, g.b, nm.p_1q);
    }
  }

  double prob0(int qubit) const {
    const std::size_t bit = std::size_t(1) << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < N_; ++i)
      if (!(i & bit)) p += rho_[i * N_ + i].real();
    return p;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < N_; ++i) t += rho_[i * N_ + i].real();
    return t;
  }

  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < N_; ++r)
      for (std::size_t c = r; c < N_; ++c)
        worst = std::max(worst,
                         std::abs(rho_[r * N_ + c] -
                                  std::conj(rho_[c * N_ + r])));
    return worst;
  }

  // PSD up to `tol` via Cholesky of rho + tol I
  bool is_psd(double tol = 1e-10) const {
    std::vector<cplx> m(rho_);
    for (std::size_t i = 0; i < N_; ++i) m[i * N_ + i] += tol;
    for (std::size_t k = 0; k < N_; ++k) {
      cplx d = m[k * N_ + k];
      for (std::size_t j = 0; j < k; ++j) d -= m[k * N_ + j] * std::conj(m[k * N_ + j]);
      if (d.real() <= 0) return false;
      double lkk = std::sqrt(d.real());
      m[k * N_ + k] = lkk;
      for (std::size_t i = k + 1; i < N_; ++i) {
        cplx v = m[i * N_ + k];
        for (std::size_t j = 0; j < k; ++j)
          v -= m[i * N_ + j] * std::conj(m[k * N_ + j]);
        m[i * N_ + k] = v / lkk;
      }
    }
    return true;
  }

 private:
  template <class F>
  void for_columns(F&& f) {
    std::vector<cplx> buf(N_);
    for (std::size_t c = 0; c < N_; ++c) {
      for (std::size_t r = 0; r < N_; ++r) buf[r] = rho_[r * N_ + c];
      f(buf);
      for (std::size_t r = 0; r < N_; ++r) rho_[r * N_ + c] = buf[r];
    }
  }

  template <class F>
  void for_rows(F&& f) {
    std::vector<cplx> buf(N_);
    for (std::size_t r = 0; r < N_; ++r) {
      for (std::size_t c = 0; c < N_; ++c) buf[c] = rho_[r * N_ + c];
      f(buf);
      for (std::size_t c = 0; c < N_; ++c) rho_[r * N_ + c] = buf[c];
    }
  }

  int n_;
  std::size_t N_;
  std::vector<cplx> rho_;
};

// Exact noisy control-qubit <Z>: channel evolution then the readout
// confusion applied to the control's measurement distribution. This is
// the deterministic oracle the shot sampler is tested against.
inline double expectation_exact(const Circuit& c, const NoiseModel& nm) {
  nm.validate();
  c.check_indices();
  DensityMatrix rho(c.n_qubits);
  for (const auto& g : c.gates) rho.apply_gate_with_noise(g, nm);
  double p0 = rho.prob0(0);
  double p1 = 1.0 - p0;
  double q0 = nm.readout[0][0] * p0 + nm.readout[0][1] * p1;
  double q1 = nm.readout[1][0] * p0 + nm.readout[1][1] * p1;
  return q0 - q1;
}

// One Pauli-trajectory shot: unitary evolution with sampled Pauli
// insertions, a projective measurement of the control, then a readout
// flip drawn from the confusion matrix. Returns the read bit.
inline int sample_one_shot(const Circuit& c, const NoiseModel& nm,
                           std::vector<cplx>& state, SplitMix64& rng) {
  const std::size_t N = std::size_t(1) << c.n_qubits;
  state.assign(N, cplx(0, 0));
  state[0] = 1.0;
  for (const auto& g : c.gates) {
    qc::apply_gate(state, g);
    if (g.kind == GateKind::CNOT) {
      if (nm.p_cnot > 0 && rng.bernoulli(nm.p_cnot)) {
        int k = 1 + static_cast<int>(rng.below(15));
        int ka = k & 3, kb = (k >> 2) & 3;
        if (ka) detail::apply_pauli(state, ka - 1, g.a);
        if (kb) detail::apply_pauli(state, kb - 1, g.b);
      }
    } else if (g.qubit_count() == 1) {
      if (nm.p_1q > 0 && rng.bernoulli(nm.p_1q))
        detail::apply_pauli(state, static_cast<int>(rng.below(3)), g.a);
    } else if (g.qubit_count() == 2) {
      if (nm.p_1q > 0 && rng.bernoulli(nm.p_1q)) {
        int k = 1 + static_cast<int>(rng.below(15));
        int ka = k & 3, kb = (k >> 2) & 3;
        if (ka) detail::apply_pauli(state, ka - 1, g.a);
        if (kb) detail::apply_pauli(state, kb - 1, g.b);
      }
    }
  }
  double p0 = 0.0;
  for (std::size_t i = 0; i < N; i += 2) p0 += std::norm(state[i]);
  int truth = rng.uniform() < p0 ? 0 : 1;
  double flip = nm.readout[1 - truth][truth];
  return rng.bernoulli(flip) ? 1 - truth : truth;
}

// Seeded shot sampling. Shot k draws from an independent stream seeded by
// hash(seed, k), so results do not depend on execution order; threads
// partition the shot range and counts merge by addition.
inline ShotCounts sample_shots(const Circuit& c, const NoiseModel& nm,
                               long long shots, std::uint64_t seed,
                               int max_threads = 0) {
  nm.validate();
  c.check_indices();
  if (shots < 1) throw ValidationError("shots must be >= 1");
  if (c.n_qubits > kSamplerQubitCap)
    throw TooLarge("shot sampler capped at " +
                   std::to_string(kSamplerQubitCap) + " qubits");

  unsigned hw = std::thread::hardware_concurrency();
  int threads = max_threads > 0 ? max_threads : (hw ? static_cast<int>(hw) : 1);
  threads = static_cast<int>(
      std::min<long long>({shots, threads, 8}));

  std::vector<long long> ones(static_cast<std::size_t>(threads), 0);
  auto worker = [&](int tid) {
    std::vector<cplx> state;
    long long lo = shots * tid / threads;
    long long hi = shots * (tid + 1) / threads;
    long long k1 = 0;
    for (long long k = lo; k < hi; ++k) {
      SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
      k1 += sample_one_shot(c, nm, state, rng);
    }
    ones[static_cast<std::size_t>(tid)] = k1;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  ShotCounts sc;
  sc.shots = shots;
  for (long long v : ones) sc.k1 += v;
  sc.k0 = shots - sc.k1;
  return sc;
}

// Empirical confusion matrix from readout-only calibration shots on the
// prepared |0> and |1> control states; columns normalised.
inline std::array<std::array<double, 2>, 2> calibrate_readout(
    const NoiseModel& nm, long long shots, std::uint64_t seed) {
  nm.validate();
  if (shots < 1) throw ValidationError("shots must be >= 1");
  std::array<std::array<double, 2>, 2> mhat{{{0.0, 0.0}, {0.0, 0.0}}};
  for (int prepared = 0; prepared < 2; ++prepared) {
    long long flipped = 0;
    double pflip = nm.readout[1 - prepared][prepared];
    for (long long k = 0; k < shots; ++k) {
      SplitMix64 rng(derive_seed(
          seed, {static_cast<std::uint64_t>(prepared),
                 static_cast<std::uint64_t>(k)}));
      if (rng.bernoulli(pflip)) ++flipped;
    }
    double f = double(flipped) / double(shots);
    mhat[1 - prepared][prepared] = f;
    mhat[prepared][prepared] = 1.0 - f;
  }
  return mhat;
}

// Invert the calibrated confusion matrix on the outcome distribution,
// clip to [0,1], renormalise and recompute <Z>. The shot-noise std is
// propagated through the (affine) correction slope.
inline Estimate mitigate_readout(const Estimate& e,
                                 const std::array<std::array<double, 2>, 2>& m) {
  double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (std::abs(det) < 1e-6)
    throw SingularConfusion("confusion matrix is numerically singular");
  double inv00 = m[1][1] / det, inv01 = -m[0][1] / det;
  double inv10 = -m[1][0] / det, inv11 = m[0][0] / det;
  double p0 = (1.0 + e.value) / 2.0, p1 = (1.0 - e.value) / 2.0;
  double q0 = inv00 * p0 + inv01 * p1;
  double q1 = inv10 * p0 + inv11 * p1;
  q0 = std::min(1.0, std::max(0.0, q0));
  q1 = std::min(1.0, std::max(0.0, q1));
  double sum = q0 + q1;
  Estimate out = e;
  out.value = sum > 0 ? (q0 - q1) / sum : 0.0;
  double slope = (inv00 - inv10 - inv01 + inv11) / 2.0;
  out.std = e.std * std::abs(slope);
  return out;
}

}  // namespace sim
}  // namespace knotjones
