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
#include <cmath>
#include <optional>

#include <json.hpp>

#include "knotjones/errors.hpp"

namespace knotjones {
namespace sim {

// Stochastic Pauli noise plus readout confusion. p_cnot is a two-qubit
// depolarizing probability after each CNOT; p_1q a single-qubit one after
// each other (non-global-phase) gate. readout[r][s] = P(read r | true s),
// columns sum to 1. jitter_pct, when set, scales p_cnot per run by a
// uniform factor in ±jitter_pct% to emulate day-to-day drift.
struct NoiseModel {
  double p_cnot = 0.0;
  double p_1q = 0.0;
  std::array<std::array<double, 2>, 2> readout{{{1.0, 0.0}, {0.0, 1.0}}};
  std::optional<double> jitter_pct;

  void validate() const {
    if (p_cnot < 0 || p_cnot > 1 || p_1q < 0 || p_1q > 1)
      throw ValidationError("noise probabilities must lie in [0,1]");
    for (int s = 0; s < 2; ++s) {
      double colsum = readout[0][s] + readout[1][s];
      if (readout[0][s] < 0 || readout[1][s] < 0 ||
          std::abs(colsum - 1.0) > 1e-9)
        throw ValidationError("confusion matrix columns must sum to 1");
    }
    if (jitter_pct && (*jitter_pct < 0 || *jitter_pct > 100))
      throw ValidationError("jitter_pct must lie in [0,100]");
  }

  NoiseModel with_jitter_applied(double u) const {
    NoiseModel nm = *this;
    if (jitter_pct) nm.p_cnot = p_cnot * (1.0 + *jitter_pct / 100.0 * u);
    nm.jitter_pct.reset();
    return nm;
  }
};

inline NoiseModel ideal_noise() { return NoiseModel{}; }

// Defaults sized so that the raw c=1 bias is visible but ZNE-correctable:
// 1% CNOT depolarizing, 0.1% single-qubit, 2%/3% asymmetric readout.
inline NoiseModel default_noise() {
  NoiseModel nm;
  nm.p_cnot = 0.01;
  nm.p_1q = 0.001;
  nm.readout = {{{0.98, 0.03}, {0.02, 0.97}}};
  return nm;
}

inline nlohmann::json noise_to_json(const NoiseModel& nm) {
  nlohmann::json j;
  j["p_cnot"] = nm.p_cnot;
  j["p_1q"] = nm.p_1q;
  j["readout"] = {{nm.readout[0][0], nm.readout[0][1]},
                  {nm.readout[1][0], nm.readout[1][1]}};
  if (nm.jitter_pct) j["jitter_pct"] = *nm.jitter_pct;
  return j;
}

inline NoiseModel noise_from_json(const nlohmann::json& j) {
  NoiseModel nm;
  nm.p_cnot = j.value("p_cnot", 0.0);
  nm.p_1q = j.value("p_1q", 0.0);
  if (j.contains("readout")) {
    const auto& r = j["readout"];
    if (!r.is_array() || r.size() != 2 || r[0].size() != 2 || r[1].size() != 2)
      throw MalformedRecord("readout must be a 2x2 matrix");
    nm.readout = {{{r[0][0].get<double>(), r[0][1].get<double>()},
                   {r[1][0].get<double>(), r[1][1].get<double>()}}};
  }
  if (j.contains("jitter_pct")) nm.jitter_pct = j["jitter_pct"].get<double>();
  nm.validate();
  return nm;
}

}  // namespace sim
}  // namespace knotjones
