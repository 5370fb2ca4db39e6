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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "knotjones/compile.hpp"
#include "knotjones/knots.hpp"
#include "knotjones/simulate.hpp"
#include "support.hpp"

using namespace knotjones;
using namespace knotjones::sim;
using namespace knotjones::qc;
using Catch::Matchers::WithinAbs;

namespace {

Circuit compiled_htest(const TaitGraph& g, Part part) {
  return compile_controlled_diagonal(htest(iqp_from_graph(g), part));
}

}  // namespace

TEST_CASE("expectation_exact at zero noise equals the pure H-test value") {
  for (const auto& rec : builtin_knots()) {
    for (Part part : {Part::real, Part::imag}) {
      HTest ht = htest(iqp_from_graph(rec.graph), part);
      Circuit compiled = compile_controlled_diagonal(ht);
      double pure = control_z_expectation(ht.full);
      CHECK_THAT(expectation_exact(compiled, ideal_noise()),
                 WithinAbs(pure, 1e-12));
    }
  }
}

TEST_CASE("fully randomizing readout kills every signal") {
  NoiseModel nm;
  nm.readout = {{{0.5, 0.5}, {0.5, 0.5}}};
  for (const auto& rec : builtin_knots()) {
    Circuit c = compiled_htest(rec.graph, Part::imag);
    CHECK_THAT(expectation_exact(c, nm), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("density matrix cap") {
  Circuit c;
  c.n_qubits = 8;
  CHECK_THROWS_AS(expectation_exact(c, ideal_noise()), TooLarge);
}

TEST_CASE("stretching under noise shrinks the trefoil signal") {
  NoiseModel nm = default_noise();
  nm.readout = {{{1.0, 0.0}, {0.0, 1.0}}};
  Circuit c1 = compiled_htest(builtin_knots()[0].graph, Part::imag);
  double v1 = expectation_exact(c1, nm);
  double v3 = expectation_exact(stretch_cnots(c1, 3), nm);
  CHECK(std::abs(v3) < std::abs(v1));
  CHECK(std::abs(v1) <= 0.5 + 1e-12);
}

TEST_CASE("noisy |<Z>| decays with the stretch factor") {
  // Monotone decay holds for the signal-bearing channels. A channel whose
  // noiseless value is zero instead picks up a small depolarizing-induced
  // bias that grows with c, so there we only pin its size.
  for (const auto& rec : builtin_knots()) {
    for (double p : {0.005, 0.01, 0.02}) {
      NoiseModel nm;
      nm.p_cnot = p;
      nm.p_1q = 0.001;
      for (Part part : {Part::real, Part::imag}) {
        Circuit base = compiled_htest(rec.graph, part);
        HTest ht = htest(iqp_from_graph(rec.graph), part);
        double noiseless = std::abs(control_z_expectation(ht.full));
        double prev = 1e9;
        for (int c : {1, 3, 5, 7}) {
          double v = std::abs(expectation_exact(stretch_cnots(base, c), nm));
          if (noiseless > 0.05)
            CHECK(v <= prev + 1e-9);
          else
            CHECK(v < 0.12);
          prev = v;
        }
      }
    }
  }
}

TEST_CASE("channel keeps the state physical") {
  NoiseModel nm = default_noise();
  Circuit c = compiled_htest(builtin_knots()[0].graph, Part::imag);
  DensityMatrix rho(c.n_qubits);
  for (const auto& g : c.gates) {
    rho.apply_gate_with_noise(g, nm);
    REQUIRE_THAT(rho.trace(), WithinAbs(1.0, 1e-10));
    REQUIRE(rho.hermiticity_defect() < 1e-12);
    REQUIRE(rho.is_psd(1e-10));
  }
}

TEST_CASE("single CNOT under pure depolarizing decays exactly as kappa^c") {
  // <Z0> of |00> with CNOT(1,0) applied c times: each application leaves
  // the pulled-back observable a non-identity Pauli, so the two-qubit
  // depolarizing contributes exactly (1 - 16p/15) per CNOT.
  const double p = 0.01;
  const double kappa = 1.0 - 16.0 * p / 15.0;
  NoiseModel nm;
  nm.p_cnot = p;
  Circuit c;
  c.n_qubits = 2;
  c.gates = {Gate::cnot(1, 0)};
  for (int f : {1, 3, 5, 7}) {
    double v = expectation_exact(stretch_cnots(c, f), nm);
    CHECK_THAT(v, WithinAbs(std::pow(kappa, f), 1e-12));
  }
}

TEST_CASE("noiseless identity H-test never reads 1") {
  Circuit id;
  id.n_qubits = 2;
  Circuit c = compile_controlled_diagonal(htest(id, Part::real));
  for (std::uint64_t seed : {1ull, 77ull, 123456ull}) {
    auto sc = sample_shots(c, ideal_noise(), 512, seed);
    CHECK(sc.k1 == 0);
    CHECK(sc.k0 == 512);
  }
}

TEST_CASE("noiseless trefoil real part concentrates around zero") {
  Circuit c = compiled_htest(builtin_knots()[0].graph, Part::real);
  const long long shots = 100000;
  auto est = estimate_from_counts(sample_shots(c, ideal_noise(), shots, 42), 42);
  CHECK(std::abs(est.value) < 4.0 / std::sqrt(double(shots)));
}

TEST_CASE("sampler matches the exact oracle across a seed battery") {
  NoiseModel nm = default_noise();
  Circuit c = compiled_htest(builtin_knots()[0].graph, Part::imag);
  double exact = expectation_exact(c, nm);
  const long long shots = 4096;
  int outliers = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto est = estimate_from_counts(sample_shots(c, nm, shots, seed), seed);
    double sigma = std::sqrt((1.0 - exact * exact) / double(shots));
    if (std::abs(est.value - exact) > 5.0 * sigma) ++outliers;
  }
  CHECK(outliers == 0);
}

TEST_CASE("shot sampling is deterministic and thread-count independent") {
  NoiseModel nm = default_noise();
  Circuit c = compiled_htest(builtin_knots()[1].graph, Part::real);
  auto a = sample_shots(c, nm, 3000, 99, 1);
  auto b = sample_shots(c, nm, 3000, 99, 2);
  auto d = sample_shots(c, nm, 3000, 99, 7);
  CHECK(a.k0 == b.k0);
  CHECK(a.k0 == d.k0);
  auto again = sample_shots(c, nm, 3000, 99);
  CHECK(a.k0 == again.k0);
  auto other = sample_shots(c, nm, 3000, 100);
  CHECK(other.k0 != a.k0);  // overwhelmingly likely for distinct seeds
}

TEST_CASE("estimates carry the binomial shot-noise std") {
  ShotCounts sc{1000, 700, 300};
  Estimate e = estimate_from_counts(sc, 5);
  CHECK_THAT(e.value, WithinAbs(0.4, 1e-15));
  CHECK_THAT(e.std, WithinAbs(std::sqrt((1 - 0.16) / 1000.0), 1e-15));
  ShotCounts all0{100, 100, 0};
  CHECK(estimate_from_counts(all0, 5).std == 0.0);
}

TEST_CASE("readout calibration estimates the confusion matrix") {
  NoiseModel ideal = ideal_noise();
  auto m = calibrate_readout(ideal, 1000, 7);
  CHECK(m[0][0] == 1.0);
  CHECK(m[1][1] == 1.0);

  NoiseModel nm;
  nm.readout = {{{0.98, 0.03}, {0.02, 0.97}}};
  auto mh = calibrate_readout(nm, 100000, 11);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      CHECK_THAT(mh[r][s], WithinAbs(nm.readout[r][s], 0.01));

  auto m1 = calibrate_readout(nm, 1, 3);
  for (int s = 0; s < 2; ++s) {
    CHECK(m1[0][s] + m1[1][s] == 1.0);
    CHECK((m1[0][s] == 0.0 || m1[0][s] == 1.0));
  }
}

TEST_CASE("readout mitigation inverts a known confusion matrix") {
  std::array<std::array<double, 2>, 2> identity{{{1.0, 0.0}, {0.0, 1.0}}};
  Estimate e{0.37, 0.01, 1000, 1};
  Estimate same = mitigate_readout(e, identity);
  CHECK_THAT(same.value, WithinAbs(0.37, 1e-15));
  CHECK_THAT(same.std, WithinAbs(0.01, 1e-15));

  // noiseless gates, known confusion: mitigation recovers the signal
  NoiseModel nm;
  nm.readout = {{{0.98, 0.03}, {0.02, 0.97}}};
  Circuit c = compiled_htest(builtin_knots()[0].graph, Part::imag);
  const long long shots = 100000;
  auto raw = estimate_from_counts(sample_shots(c, nm, shots, 21), 21);
  auto fixed = mitigate_readout(raw, nm.readout);
  double sigma = std::sqrt((1.0 - 0.25) / double(shots));
  CHECK(std::abs(fixed.value - 0.5) < 4.0 * sigma);

  std::array<std::array<double, 2>, 2> singular{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK_THROWS_AS(mitigate_readout(e, singular), SingularConfusion);
}

TEST_CASE("mitigated values stay in [-1, 1] after clipping") {
  std::array<std::array<double, 2>, 2> m{{{0.9, 0.1}, {0.1, 0.9}}};
  Estimate e{0.99, 0.01, 1000, 1};
  Estimate out = mitigate_readout(e, m);
  CHECK(out.value <= 1.0);
  CHECK(out.value >= -1.0);
}
