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
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotjones/circuit.hpp"
#include "knotjones/errors.hpp"
#include "knotjones/potts.hpp"
#include "knotjones/rng.hpp"
#include "knotjones/simulate.hpp"

namespace knotjones {
namespace zne {

using potts::cplx;
using qc::Part;
using sim::Estimate;

// Pooled repeated estimates y_{c,t} of one observable, keyed by stretch
// factor c. All samples must come from the same circuit identity; run
// index t is the position in the list.
struct ZNEDataset {
  Part part = Part::real;
  std::map<int, std::vector<double>> samples;

  void add(int c, double value) { samples[c].push_back(value); }

  std::vector<int> stretch_factors() const {
    std::vector<int> cs;
    for (const auto& [c, v] : samples)
      if (!v.empty()) cs.push_back(c);
    return cs;
  }
};

enum class FitModel { linear, exponential };

inline const char* model_name(FitModel m) {
  return m == FitModel::linear ? "linear" : "exponential";
}

inline FitModel model_from_name(const std::string& s) {
  if (s == "linear") return FitModel::linear;
  if (s == "exp" || s == "exponential") return FitModel::exponential;
  throw ValidationError("unknown fit model '" + s + "'");
}

// Fit output. For linear, params = (intercept a, slope b) and f(0) = a;
// for exponential f(c) = mu e^{lambda c}, params = (mu, lambda) and
// f(0) = mu. Bootstrap fills the means/stds and the failure count.
struct FitResult {
  FitModel model = FitModel::linear;
  std::array<double, 2> params{0.0, 0.0};
  double zero_noise = 0.0;
  std::vector<int> cs_used;
  std::array<double, 2> param_means{0.0, 0.0};
  std::array<double, 2> param_stds{0.0, 0.0};
  long long resamples = 0;
  long long failed_resamples = 0;

  double eval(double c) const {
    return model == FitModel::linear ? params[0] + params[1] * c
                                     : params[0] * std::exp(params[1] * c);
  }
};

namespace detail {

struct Points {
  std::vector<double> c;
  std::vector<double> y;
  std::vector<int> cs;
};

inline Points pool(const ZNEDataset& ds, const std::vector<int>& cs_used) {
  Points p;
  for (int c : cs_used) {
    auto it = ds.samples.find(c);
    if (it == ds.samples.end() || it->second.empty())
      throw ValidationError("no samples for stretch factor " +
                            std::to_string(c));
    for (double y : it->second) {
      p.c.push_back(double(c));
      p.y.push_back(y);
    }
    p.cs.push_back(c);
  }
  std::sort(p.cs.begin(), p.cs.end());
  if (p.cs.size() < 2)
    throw ValidationError("fit needs at least two distinct stretch factors");
  return p;
}

inline std::array<double, 2> linear_ols(const Points& p) {
  double n = double(p.c.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    sx += p.c[i];
    sy += p.y[i];
    sxx += p.c[i] * p.c[i];
    sxy += p.c[i] * p.y[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  return {intercept, slope};
}

// mu e^{lambda c} by Gauss-Newton with a Levenberg damping fallback,
// initialised from the log-linear fit of the per-c mean magnitudes. The
// paper-mirroring failure mode: means of mixed sign (no log-linear seed)
// or a diverging iteration both raise NonConvergent.
inline std::array<double, 2> exp_fit(const Points& p) {
  std::map<double, std::pair<double, int>> acc;
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    acc[p.c[i]].first += p.y[i];
    acc[p.c[i]].second += 1;
  }
  double sign = 0.0;
  std::vector<double> cs, logm;
  for (const auto& [c, sv] : acc) {
    double mean = sv.first / sv.second;
    double s = mean > 0 ? 1.0 : (mean < 0 ? -1.0 : 0.0);
    if (s == 0.0 || (sign != 0.0 && s != sign))
      throw NonConvergent(
          "exponential fit needs pooled per-c means of one sign");
    sign = s;
    cs.push_back(c);
    logm.push_back(std::log(std::abs(mean)));
  }
  Points lp;
  lp.c = cs;
  lp.y = logm;
  auto [lnmu, lam] = linear_ols(lp);
  double mu = sign * std::exp(lnmu);
  double lambda = lam;

  double damping = 0.0;
  double prev_ss = 1e300;
  for (int iter = 0; iter < 200; ++iter) {
    double j00 = 0, j01 = 0, j11 = 0, g0 = 0, g1 = 0, ss = 0;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
      double e = std::exp(lambda * p.c[i]);
      double r = p.y[i] - mu * e;
      double d0 = -e;
      double d1 = -mu * p.c[i] * e;
      j00 += d0 * d0;
      j01 += d0 * d1;
      j11 += d1 * d1;
      g0 += d0 * r;
      g1 += d1 * r;
      ss += r * r;
    }
    if (!std::isfinite(ss)) throw NonConvergent("exponential fit diverged");
    double det = (j00 + damping) * (j11 + damping) - j01 * j01;
    if (std::abs(det) < 1e-300) {
      damping = damping == 0.0 ? 1e-8 : damping * 10;
      if (damping > 1e8) throw NonConvergent("exponential fit is singular");
      continue;
    }
    double dmu = -((j11 + damping) * g0 - j01 * g1) / det;
    double dl = -(-j01 * g0 + (j00 + damping) * g1) / det;
    mu += dmu;
    lambda += dl;
    if (std::abs(dmu) + std::abs(dl) < 1e-14 * (1.0 + std::abs(mu))) break;
    if (ss > prev_ss * (1.0 + 1e-12)) damping = std::max(damping * 10, 1e-10);
    prev_ss = ss;
    if (iter == 199 && std::abs(dmu) + std::abs(dl) > 1e-6)
      throw NonConvergent("exponential fit did not converge");
  }
  if (!std::isfinite(mu) || !std::isfinite(lambda))
    throw NonConvergent("exponential fit diverged");
  return {mu, lambda};
}

}  // namespace detail

// Unweighted least squares over all pooled points (not per-c means).
inline FitResult fit(const ZNEDataset& ds, FitModel model,
                     const std::vector<int>& cs_used) {
  detail::Points p = detail::pool(ds, cs_used);
  FitResult r;
  r.model = model;
  r.cs_used = p.cs;
  r.params = model == FitModel::linear ? detail::linear_ols(p)
                                       : detail::exp_fit(p);
  r.zero_noise = r.params[0];
  r.param_means = r.params;
  return r;
}

enum class ResampleScheme { independent, tuple };

// Bootstrap: redraw the per-c sample lists with replacement at their
// original sizes, refit, and report parameter means and stds over the
// resamples. The reported uncertainty convention is 2 x std. Resamples
// whose fit fails (exponential sign flips) are dropped and counted.
// The tuple scheme redraws whole runs (y_{c t} tuples over t) instead of
// independently per c; it needs equal sample counts per stretch factor.
inline FitResult bootstrap(const ZNEDataset& ds, FitModel model,
                           const std::vector<int>& cs_used,
                           long long resamples, std::uint64_t seed,
                           ResampleScheme scheme = ResampleScheme::independent) {
  if (resamples < 2) throw ValidationError("bootstrap needs >= 2 resamples");
  FitResult base = fit(ds, model, cs_used);

  std::vector<const std::vector<double>*> lists;
  for (int c : base.cs_used) lists.push_back(&ds.samples.at(c));
  if (scheme == ResampleScheme::tuple)
    for (const auto* l : lists)
      if (l->size() != lists[0]->size())
        throw ValidationError(
            "tuple resampling needs equal run counts per stretch factor");

  ZNEDataset rs;
  rs.part = ds.part;
  std::vector<double> p0s, p1s;
  long long failed = 0;
  for (long long i = 0; i < resamples; ++i) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    rs.samples.clear();
    if (scheme == ResampleScheme::independent) {
      for (std::size_t k = 0; k < lists.size(); ++k) {
        auto& dst = rs.samples[base.cs_used[k]];
        const auto& src = *lists[k];
        dst.resize(src.size());
        for (auto& v : dst) v = src[rng.below(src.size())];
      }
    } else {
      std::size_t runs = lists[0]->size();
      for (std::size_t k = 0; k < lists.size(); ++k)
        rs.samples[base.cs_used[k]].reserve(runs);
      for (std::size_t t = 0; t < runs; ++t) {
        std::size_t pick = rng.below(runs);
        for (std::size_t k = 0; k < lists.size(); ++k)
          rs.samples[base.cs_used[k]].push_back((*lists[k])[pick]);
      }
    }
    try {
      FitResult fr = fit(rs, model, base.cs_used);
      p0s.push_back(fr.params[0]);
      p1s.push_back(fr.params[1]);
    } catch (const NonConvergent&) {
      ++failed;
    }
  }
  if (p0s.size() < 2)
    throw NonConvergent("bootstrap: almost all resample fits failed");

  auto mean_std = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= double(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair<double, double>(m, std::sqrt(ss / double(v.size() - 1)));
  };
  auto [m0, s0] = mean_std(p0s);
  auto [m1, s1] = mean_std(p1s);
  base.param_means = {m0, m1};
  base.param_stds = {s0, s1};
  base.zero_noise = m0;  // f(0) is the first parameter for both models
  base.resamples = resamples;
  base.failed_resamples = failed;
  return base;
}

// Half-width of the reported 2 sigma error bar on f(0).
inline double zero_noise_err2(const FitResult& r) {
  return 2.0 * r.param_stds[0];
}

// ---------------------------------------------------------------------
// Jones assembly
// ---------------------------------------------------------------------

struct JonesEstimate {
  cplx value{0.0, 0.0};
  double err_re = 0.0;  // 2 sigma half-widths
  double err_im = 0.0;
  double distance_to_exact = -1.0;  // negative when no exact value known
  std::string knot;
  std::string backend;
  std::string model;
  std::vector<int> cs_used;
};

// V = A * 2^n (f_re(0) + i f_im(0)); the 2 sigma bars rotate and scale
// through the complex multiplication assuming independent components.
inline JonesEstimate assemble_jones(const FitResult& fit_re,
                                    const FitResult& fit_im,
                                    const potts::JonesFactors& factors,
                                    std::optional<cplx> exact = std::nullopt) {
  const double scale = std::pow(2.0, double(factors.n));
  const cplx z(fit_re.zero_noise * scale, fit_im.zero_noise * scale);
  JonesEstimate est;
  est.value = factors.A * z;
  const double r = std::abs(factors.A) * scale;
  const double phi = std::arg(factors.A);
  const double exr = zero_noise_err2(fit_re), exi = zero_noise_err2(fit_im);
  const double c2 = std::cos(phi) * std::cos(phi);
  const double s2 = std::sin(phi) * std::sin(phi);
  est.err_re = r * std::sqrt(c2 * exr * exr + s2 * exi * exi);
  est.err_im = r * std::sqrt(s2 * exr * exr + c2 * exi * exi);
  if (exact) est.distance_to_exact = std::abs(est.value - *exact);
  est.model = model_name(fit_re.model);
  est.cs_used = fit_re.cs_used;
  return est;
}

inline nlohmann::json jones_to_json(const JonesEstimate& e) {
  nlohmann::json j;
  j["value"] = {e.value.real(), e.value.imag()};
  j["err_re"] = e.err_re;
  j["err_im"] = e.err_im;
  if (e.distance_to_exact >= 0) j["distance_to_exact"] = e.distance_to_exact;
  j["knot"] = e.knot;
  j["backend"] = e.backend;
  j["model"] = e.model;
  j["cs_used"] = e.cs_used;
  return j;
}

inline nlohmann::json fit_to_json(const FitResult& r) {
  nlohmann::json j;
  j["model"] = model_name(r.model);
  j["params"] = {r.params[0], r.params[1]};
  j["zero_noise"] = r.zero_noise;
  j["cs_used"] = r.cs_used;
  j["param_means"] = {r.param_means[0], r.param_means[1]};
  j["param_stds"] = {r.param_stds[0], r.param_stds[1]};
  j["resamples"] = r.resamples;
  j["failed_resamples"] = r.failed_resamples;
  return j;
}

}  // namespace zne
}  // namespace knotjones
