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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "knotjones/compile.hpp"
#include "knotjones/io.hpp"
#include "knotjones/kauffman.hpp"
#include "knotjones/knots.hpp"
#include "knotjones/moves.hpp"
#include "knotjones/potts.hpp"
#include "knotjones/simulate.hpp"
#include "knotjones/zne.hpp"

namespace knotjones {
namespace pipeline {

using nlohmann::json;
using potts::cplx;
using qc::Circuit;
using qc::Part;
using sim::NoiseModel;
using zne::FitModel;
using zne::FitResult;
using zne::JonesEstimate;
using zne::ZNEDataset;

struct RunConfig {
  std::string knot = "trefoil";        // builtin name, .pd file or .json file
  int q = 2;
  std::vector<Part> parts{Part::real, Part::imag};
  std::vector<int> stretches{1, 3, 5, 7};
  long long shots = 8192;
  int runs = 150;
  NoiseModel noise = sim::default_noise();
  FitModel fit_model = FitModel::linear;
  std::vector<int> cs_used{1, 3};
  long long resamples = 50000;
  std::uint64_t seed = 7;
  std::string backend_label = "simulated";
  int benchmark_variants = 4;
  int benchmark_moves = 2;
  int max_threads = 0;

  void validate() const {
    for (int c : stretches)
      if (c < 1 || c % 2 == 0)
        throw ValidationError("stretch factors must be odd and >= 1");
    if (runs < 1) throw ValidationError("runs must be >= 1");
    if (shots < 1) throw ValidationError("shots must be >= 1");
    if (parts.empty()) throw ValidationError("no parts selected");
    noise.validate();
  }
};

// ---------------------------------------------------------------------
// Knot resolution
// ---------------------------------------------------------------------

inline KnotRecord resolve_knot(const std::string& source) {
  if (auto builtin = find_builtin(source)) return *builtin;
  if (source.size() > 3 && source.substr(source.size() - 3) == ".pd") {
    KnotRecord r;
    r.name = source;
    r.pd = parse_pd(io::read_file(source));
    r.graph = tait_graph_of(*r.pd);
    r.writhe = orient_and_sign(*r.pd).writhe;
    return r;
  }
  if (source.size() > 5 && source.substr(source.size() - 5) == ".json") {
    KnotRecord r = record_from_json(json::parse(io::read_file(source)));
    return r;
  }
  throw ValidationError("unknown knot source '" + source +
                        "' (builtin name, .pd file or .json file)");
}

// ---------------------------------------------------------------------
// exact: the classical evaluation chain
// ---------------------------------------------------------------------

inline json complex_json(cplx z) { return {z.real(), z.imag()}; }

inline json exact_report(const KnotRecord& rec, int q) {
  const auto ep = potts::eval_point(q);
  const int tau = rec.graph.tau();
  json j;
  j["knot"] = rec.name;
  j["q"] = q;
  j["t"] = complex_json(ep.t);
  j["n"] = rec.graph.n;
  j["tau"] = tau;
  j["writhe"] = rec.writhe;
  const cplx zb = potts::partition_bruteforce(rec.graph, q);
  const cplx zc = potts::partition_contract(rec.graph, q);
  const cplx A = potts::proportionality(ep.t, tau, rec.writhe, rec.graph.n);
  j["A"] = complex_json(A);
  j["Z_bruteforce"] = complex_json(zb);
  j["Z_contract"] = complex_json(zc);
  j["V"] = complex_json(A * zb);
  if (rec.pd) {
    KnotDiagram d = orient_and_sign(*rec.pd);
    j["V_kauffman"] = complex_json(kauffman_jones(d, ep.t));
  }
  if (rec.exact_jones_at_i && q == 2)
    j["exact"] = complex_json(*rec.exact_jones_at_i);
  return j;
}

// ---------------------------------------------------------------------
// simulate: seeded noisy H-test executions
// ---------------------------------------------------------------------

struct DatasetRow {
  std::string knot;
  std::string backend;
  Part part = Part::real;
  int stretch = 1;
  int run_index = 0;
  double value = 0.0;
  double std = 0.0;
  long long shots = 0;
  std::uint64_t seed = 0;
};

inline std::string rows_to_csv(const std::vector<DatasetRow>& rows) {
  std::ostringstream os;
  os << "knot,backend_label,part,stretch,run_index,value,std,shots,seed\n";
  for (const auto& r : rows) {
    os << r.knot << ',' << r.backend << ',' << qc::part_name(r.part) << ','
       << r.stretch << ',' << r.run_index << ',' << io::fmt_double(r.value)
       << ',' << io::fmt_double(r.std) << ',' << r.shots << ',' << r.seed
       << '\n';
  }
  return os.str();
}

// Single run record as JSON, the row-level exchange format.
inline json row_to_json(const DatasetRow& r) {
  json j;
  j["label"] = r.backend;
  j["knot"] = r.knot;
  j["part"] = qc::part_name(r.part);
  j["stretch"] = r.stretch;
  j["run_index"] = r.run_index;
  j["shots"] = r.shots;
  j["seed"] = r.seed;
  j["value"] = r.value;
  j["std"] = r.std;
  return j;
}

inline DatasetRow row_from_json(const json& j) {
  DatasetRow r;
  r.backend = j.at("label").get<std::string>();
  r.knot = j.value("knot", "");
  std::string part = j.at("part").get<std::string>();
  if (part != "real" && part != "imag")
    throw MalformedRecord("bad part '" + part + "'");
  r.part = part == "real" ? Part::real : Part::imag;
  r.stretch = j.at("stretch").get<int>();
  r.run_index = j.value("run_index", 0);
  r.shots = j.at("shots").get<long long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.value = j.at("value").get<double>();
  r.std = j.at("std").get<double>();
  return r;
}

inline std::vector<DatasetRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("knot,", 0) != 0)
    throw MalformedRecord("dataset CSV missing header");
  std::vector<DatasetRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f;
    DatasetRow r;
    auto next = [&]() {
      if (!std::getline(ls, f, ','))
        throw MalformedRecord("short dataset row: " + line);
      return f;
    };
    r.knot = next();
    r.backend = next();
    std::string part = next();
    if (part != "real" && part != "imag")
      throw MalformedRecord("bad part '" + part + "'");
    r.part = part == "real" ? Part::real : Part::imag;
    r.stretch = std::stoi(next());
    r.run_index = std::stoi(next());
    r.value = std::stod(next());
    r.std = std::stod(next());
    r.shots = std::stoll(next());
    r.seed = std::stoull(next());
    rows.push_back(r);
  }
  return rows;
}

// Compiled H-test circuits for one knot, per part, at stretch 1.
inline std::vector<std::pair<Part, Circuit>> compiled_htests(
    const TaitGraph& g, const std::vector<Part>& parts) {
  std::vector<std::pair<Part, Circuit>> out;
  Circuit base = qc::iqp_from_graph(g);
  for (Part p : parts)
    out.emplace_back(p, qc::compile_controlled_diagonal(qc::htest(base, p)));
  return out;
}

// Seed derivation tags; the leading constant keeps the stream families
// disjoint.
namespace seeds {
inline std::uint64_t row(std::uint64_t master, int run, int part_idx, int c) {
  return derive_seed(master, {1, std::uint64_t(run), std::uint64_t(part_idx),
                              std::uint64_t(c)});
}
inline std::uint64_t calibration(std::uint64_t master, int run) {
  return derive_seed(master, {2, std::uint64_t(run)});
}
inline std::uint64_t jitter(std::uint64_t master, int run) {
  return derive_seed(master, {3, std::uint64_t(run)});
}
inline std::uint64_t variant(std::uint64_t master, int v) {
  return derive_seed(master, {4, std::uint64_t(v)});
}
inline std::uint64_t variant_master(std::uint64_t master, int v) {
  return derive_seed(master, {5, std::uint64_t(v)});
}
inline std::uint64_t bootstrap(std::uint64_t master, int part_idx) {
  return derive_seed(master, {6, std::uint64_t(part_idx)});
}
}  // namespace seeds

// One emulated execution campaign: for every run (an emulated "day"),
// draw the per-run noise jitter, calibrate readout once, then sample and
// mitigate every (part, stretch) point of that run.
inline std::vector<DatasetRow> simulate_dataset(const RunConfig& cfg,
                                                const KnotRecord& rec) {
  cfg.validate();
  if (cfg.q != 2)
    throw ValidationError("the simulated pipeline runs at q = 2 only");
  auto circuits = compiled_htests(rec.graph, cfg.parts);
  std::vector<DatasetRow> rows;
  for (int run = 0; run < cfg.runs; ++run) {
    NoiseModel nm = cfg.noise;
    if (cfg.noise.jitter_pct) {
      SplitMix64 jrng(seeds::jitter(cfg.seed, run));
      nm = cfg.noise.with_jitter_applied(jrng.uniform(-1.0, 1.0));
    }
    auto mhat =
        sim::calibrate_readout(nm, cfg.shots, seeds::calibration(cfg.seed, run));
    for (std::size_t pi = 0; pi < circuits.size(); ++pi) {
      for (int c : cfg.stretches) {
        Circuit stretched = qc::stretch_cnots(circuits[pi].second, c);
        std::uint64_t rs = seeds::row(cfg.seed, run, static_cast<int>(pi), c);
        auto counts =
            sim::sample_shots(stretched, nm, cfg.shots, rs, cfg.max_threads);
        auto est = sim::mitigate_readout(
            sim::estimate_from_counts(counts, rs), mhat);
        DatasetRow r;
        r.knot = rec.name;
        r.backend = cfg.backend_label;
        r.part = circuits[pi].first;
        r.stretch = c;
        r.run_index = run;
        r.value = est.value;
        r.std = est.std;
        r.shots = cfg.shots;
        r.seed = rs;
        rows.push_back(r);
      }
    }
  }
  return rows;
}

inline ZNEDataset dataset_for(const std::vector<DatasetRow>& rows, Part part) {
  ZNEDataset ds;
  ds.part = part;
  for (const auto& r : rows)
    if (r.part == part) ds.add(r.stretch, r.value);
  return ds;
}

// ---------------------------------------------------------------------
// zne: fits, bootstrap, Jones assembly and plot data
// ---------------------------------------------------------------------

// Nested quantile ladder describing a distribution: the median, then
// pairs of quantiles each containing half of the remaining data, down to
// boxes of fewer than five points.
inline json boxen_ladder(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    if (v.empty()) return 0.0;
    double idx = p * double(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(idx);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double w = idx - double(lo);
    return v[lo] * (1.0 - w) + v[hi] * w;
  };
  json j;
  j["n"] = v.size();
  j["median"] = quantile(0.5);
  json levels = json::array();
  double tail = 0.25;
  for (int level = 0; level < 6; ++level) {
    if (double(v.size()) * 2.0 * tail < 5.0) break;
    levels.push_back({quantile(tail), quantile(1.0 - tail)});
    tail /= 2.0;
  }
  j["levels"] = levels;
  return j;
}

struct ZneOutput {
  JonesEstimate estimate;
  FitResult fit_re;
  FitResult fit_im;
  json plot_data;
};

inline potts::JonesFactors factors_for(const KnotRecord& rec, int q) {
  const auto ep = potts::eval_point(q);
  return potts::jones_factors(ep.t, rec.graph.tau(), rec.writhe, rec.graph.n);
}

inline ZneOutput run_zne(const std::vector<DatasetRow>& rows,
                         const RunConfig& cfg, const KnotRecord& rec) {
  ZNEDataset ds_re = dataset_for(rows, Part::real);
  ZNEDataset ds_im = dataset_for(rows, Part::imag);
  if (ds_re.samples.empty() || ds_im.samples.empty())
    throw MissingPart("zne needs both the real and imaginary datasets");

  ZneOutput out;
  out.fit_re = zne::bootstrap(ds_re, cfg.fit_model, cfg.cs_used,
                              cfg.resamples, seeds::bootstrap(cfg.seed, 0));
  out.fit_im = zne::bootstrap(ds_im, cfg.fit_model, cfg.cs_used,
                              cfg.resamples, seeds::bootstrap(cfg.seed, 1));
  out.estimate = zne::assemble_jones(out.fit_re, out.fit_im,
                                     factors_for(rec, 2),
                                     rec.exact_jones_at_i);
  out.estimate.knot = rec.name;
  out.estimate.backend = cfg.backend_label;

  json plot;
  for (const auto* dsp : {&ds_re, &ds_im}) {
    const FitResult& fr = dsp->part == Part::real ? out.fit_re : out.fit_im;
    json part;
    part["part"] = qc::part_name(dsp->part);
    json per_c = json::array();
    for (const auto& [c, vals] : dsp->samples) {
      json e = boxen_ladder(vals);
      e["c"] = c;
      per_c.push_back(e);
    }
    part["distributions"] = per_c;
    json curve = json::array();
    for (double c = 0.0; c <= 7.0 + 1e-9; c += 0.1)
      curve.push_back({c, fr.eval(c)});
    part["fit_curve"] = curve;
    part["extrapolated"] = {{"value", fr.zero_noise},
                            {"err2", zne::zero_noise_err2(fr)}};
    part["fit"] = zne::fit_to_json(fr);
    plot["parts"].push_back(part);
  }
  out.plot_data = plot;
  return out;
}

// Raw (no extrapolation) Jones estimate from the c = 1 rows: per part the
// pooled mean with a 2 x standard-error bar.
inline JonesEstimate raw_c1_estimate(const std::vector<DatasetRow>& rows,
                                     const RunConfig& cfg,
                                     const KnotRecord& rec) {
  auto pooled = [&](Part p) {
    std::vector<double> v;
    for (const auto& r : rows)
      if (r.part == p && r.stretch == 1) v.push_back(r.value);
    if (v.empty()) throw MissingPart("no c=1 rows for a part");
    double m = 0;
    for (double x : v) m += x;
    m /= double(v.size());
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    double sem = v.size() > 1 ? std::sqrt(ss / double(v.size() - 1) /
                                          double(v.size()))
                              : 0.0;
    return std::pair<double, double>(m, sem);
  };
  auto [mre, sre] = pooled(Part::real);
  auto [mim, sim_] = pooled(Part::imag);
  FitResult fr, fi;
  fr.zero_noise = mre;
  fr.param_stds = {sre, 0.0};
  fi.zero_noise = mim;
  fi.param_stds = {sim_, 0.0};
  JonesEstimate est = zne::assemble_jones(fr, fi, factors_for(rec, 2),
                                          rec.exact_jones_at_i);
  est.knot = rec.name;
  est.backend = cfg.backend_label;
  est.model = "raw-c1";
  est.cs_used = {1};
  return est;
}

// ---------------------------------------------------------------------
// benchmark: the random-Reidemeister equivalence protocol
// ---------------------------------------------------------------------

struct BenchmarkVariant {
  std::string name;
  KnotDiagram diagram;
  TaitGraph graph;
  JonesEstimate estimate;
  bool invariance_ok = false;
  bool covers_exact = false;
};

struct BenchmarkReport {
  std::vector<BenchmarkVariant> variants;
  std::vector<std::vector<bool>> pairwise_overlap;
  double mean_distance = 0.0;
  double covered_fraction = 0.0;
  bool invariance_all_ok = false;
};

inline KnotDiagram random_variant(const KnotDiagram& base, int moves,
                                  std::uint64_t seed, int max_crossings = 12) {
  KnotDiagram d = base;
  SplitMix64 rng(seed);
  for (int mv = 0; mv < moves; ++mv) {
    bool force_r1 = d.pd.crossing_count() + 2 > max_crossings;
    if (d.pd.crossing_count() + 1 > max_crossings) break;
    if (d.pd.empty() || force_r1 || rng.bernoulli(0.5)) {
      int m = d.pd.edge_count();
      int edge = d.pd.empty() ? 1 : 1 + static_cast<int>(rng.below(m));
      d = r1_insert(d, edge, rng.bernoulli(0.5) ? KinkSign::positive
                                                : KinkSign::negative);
    } else {
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
      if (pairs.empty()) continue;
      auto [a, b] = pairs[rng.below(pairs.size())];
      d = r2_insert(d, a, b);
    }
  }
  return d;
}

inline BenchmarkReport run_benchmark(const RunConfig& cfg,
                                     const KnotRecord& rec) {
  cfg.validate();
  if (!rec.pd)
    throw ValidationError("benchmark needs a knot with a PD source");
  KnotDiagram base = orient_and_sign(*rec.pd);
  const cplx exact = rec.exact_jones_at_i
                         ? *rec.exact_jones_at_i
                         : potts::jones_value(rec.graph, rec.writhe, 2);

  BenchmarkReport report;
  for (int v = 0; v < cfg.benchmark_variants; ++v) {
    BenchmarkVariant var;
    var.name = rec.name + "#v" + std::to_string(v);
    var.diagram = v == 0 ? base
                         : random_variant(base, cfg.benchmark_moves,
                                          seeds::variant(cfg.seed, v));
    FaceSet fs = faces(var.diagram);
    var.graph = tait_graph(var.diagram, fs, checkerboard(var.diagram, fs));

    // classical invariance through both oracles; independent of noise
    cplx kj = kauffman_jones(var.diagram, potts::eval_point(2).t);
    cplx pj = potts::jones_value(var.graph, var.diagram.writhe, 2);
    var.invariance_ok =
        std::abs(kj - exact) < 1e-9 && std::abs(pj - exact) < 1e-9;

    KnotRecord vrec;
    vrec.name = var.name;
    vrec.graph = var.graph;
    vrec.writhe = var.diagram.writhe;
    vrec.exact_jones_at_i = exact;
    RunConfig vcfg = cfg;
    vcfg.seed = seeds::variant_master(cfg.seed, v);
    auto rows = simulate_dataset(vcfg, vrec);
    auto out = run_zne(rows, vcfg, vrec);
    var.estimate = out.estimate;
    var.covers_exact =
        std::abs(var.estimate.value.real() - exact.real()) <=
            var.estimate.err_re &&
        std::abs(var.estimate.value.imag() - exact.imag()) <=
            var.estimate.err_im;
    report.variants.push_back(std::move(var));
  }

  const std::size_t k = report.variants.size();
  report.pairwise_overlap.assign(k, std::vector<bool>(k, true));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& a = report.variants[i].estimate;
      const auto& b = report.variants[j].estimate;
      bool re_ok = std::abs(a.value.real() - b.value.real()) <=
                   a.err_re + b.err_re;
      bool im_ok = std::abs(a.value.imag() - b.value.imag()) <=
                   a.err_im + b.err_im;
      report.pairwise_overlap[i][j] = re_ok && im_ok;
    }

  report.invariance_all_ok = true;
  double dist = 0.0;
  int covered = 0;
  for (const auto& v : report.variants) {
    report.invariance_all_ok = report.invariance_all_ok && v.invariance_ok;
    dist += v.estimate.distance_to_exact;
    covered += v.covers_exact ? 1 : 0;
  }
  report.mean_distance = k ? dist / double(k) : 0.0;
  report.covered_fraction = k ? double(covered) / double(k) : 0.0;
  return report;
}

inline json benchmark_to_json(const BenchmarkReport& r) {
  json j;
  json vars = json::array();
  for (const auto& v : r.variants) {
    json jv = zne::jones_to_json(v.estimate);
    jv["crossings"] = v.diagram.pd.crossing_count();
    jv["writhe"] = v.diagram.writhe;
    jv["n"] = v.graph.n;
    jv["tau"] = v.graph.tau();
    jv["invariance_ok"] = v.invariance_ok;
    jv["covers_exact"] = v.covers_exact;
    vars.push_back(jv);
  }
  j["variants"] = vars;
  j["pairwise_overlap"] = r.pairwise_overlap;
  j["mean_distance_to_exact"] = r.mean_distance;
  j["covered_fraction"] = r.covered_fraction;
  j["invariance_all_ok"] = r.invariance_all_ok;
  return j;
}

}  // namespace pipeline
}  // namespace knotjones
