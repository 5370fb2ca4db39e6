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

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "knotjones/pipeline.hpp"

using namespace knotjones;
using nlohmann::json;
using pipeline::RunConfig;

namespace {

// Options shared by the pipeline verbs. Everything is optional on the
// command line; unset options fall back to the --config file, then to the
// RunConfig defaults. The config file is flat JSON keyed by flag name.
struct CliOptions {
  std::string config_path;
  std::optional<std::string> knot;
  std::optional<int> q;
  std::optional<std::string> parts;
  std::optional<std::string> stretch;
  std::optional<long long> shots;
  std::optional<int> runs;
  std::optional<std::string> noise_path;
  std::optional<std::string> fit;
  std::optional<std::string> cs;
  std::optional<long long> resamples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  std::optional<int> variants;
  std::optional<int> moves;
  std::optional<int> threads;
  std::string out;
  std::string dataset;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "flat JSON config file");
  cmd->add_option("--knot", o.knot, "builtin name, .pd file or .json file");
  cmd->add_option("--q", o.q, "spin dimension q >= 2");
  cmd->add_option("--parts", o.parts, "real,imag subset");
  cmd->add_option("--stretch", o.stretch, "odd stretch factors, e.g. 1,3,5,7");
  cmd->add_option("--shots", o.shots, "shots per point");
  cmd->add_option("--runs", o.runs, "emulated repeated executions");
  cmd->add_option("--noise", o.noise_path, "noise model JSON file");
  cmd->add_option("--fit", o.fit, "linear|exp");
  cmd->add_option("--cs", o.cs, "stretch subset used by the fit, e.g. 1,3");
  cmd->add_option("--resamples", o.resamples, "bootstrap resamples");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--backend-label", o.backend, "label recorded in outputs");
  cmd->add_option("--variants", o.variants, "benchmark variants");
  cmd->add_option("--moves", o.moves, "Reidemeister moves per variant");
  cmd->add_option("--threads", o.threads, "sampler threads (0 = auto)");
  cmd->add_option("--out", o.out, "output file");
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw ValidationError("empty integer list");
  return out;
}

std::vector<qc::Part> parse_parts(const std::string& s) {
  std::vector<qc::Part> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok == "real")
      out.push_back(qc::Part::real);
    else if (tok == "imag")
      out.push_back(qc::Part::imag);
    else
      throw ValidationError("parts must be from {real, imag}");
  }
  if (out.empty()) throw ValidationError("no parts given");
  return out;
}

// CLI flag > config file > default.
template <class T, class U>
void merge(const std::optional<T>& flag, const json& cfg, const char* key,
           U& dst) {
  if (flag) {
    dst = static_cast<U>(*flag);
  } else if (cfg.contains(key)) {
    dst = cfg[key].get<U>();
  }
}

RunConfig build_config(const CliOptions& o, bool benchmark_defaults = false) {
  json cfg = json::object();
  if (!o.config_path.empty()) cfg = json::parse(io::read_file(o.config_path));

  RunConfig rc;
  if (benchmark_defaults) {
    // benchmark mirrors pooled multi-day campaigns on a smaller budget:
    // drift jitter on, fewer runs, linear c=1,3 extrapolation
    rc.noise.jitter_pct = 20.0;
    rc.runs = 30;
    rc.shots = 2048;
    rc.stretches = {1, 3};
    rc.resamples = 2000;
  }

  merge(o.knot, cfg, "knot", rc.knot);
  merge(o.q, cfg, "q", rc.q);
  merge(o.shots, cfg, "shots", rc.shots);
  merge(o.runs, cfg, "runs", rc.runs);
  merge(o.resamples, cfg, "resamples", rc.resamples);
  merge(o.seed, cfg, "seed", rc.seed);
  merge(o.backend, cfg, "backend_label", rc.backend_label);
  merge(o.variants, cfg, "variants", rc.benchmark_variants);
  merge(o.moves, cfg, "moves", rc.benchmark_moves);
  merge(o.threads, cfg, "threads", rc.max_threads);

  std::optional<std::string> parts = o.parts;
  if (!parts && cfg.contains("parts")) parts = cfg["parts"].get<std::string>();
  if (parts) rc.parts = parse_parts(*parts);

  std::optional<std::string> stretch = o.stretch;
  if (!stretch && cfg.contains("stretch"))
    stretch = cfg["stretch"].get<std::string>();
  if (stretch) rc.stretches = parse_int_list(*stretch);

  std::optional<std::string> fitname = o.fit;
  if (!fitname && cfg.contains("fit")) fitname = cfg["fit"].get<std::string>();
  if (fitname) rc.fit_model = zne::model_from_name(*fitname);

  std::optional<std::string> cs = o.cs;
  if (!cs && cfg.contains("cs")) cs = cfg["cs"].get<std::string>();
  if (cs) rc.cs_used = parse_int_list(*cs);

  std::optional<std::string> noise = o.noise_path;
  if (!noise && cfg.contains("noise")) noise = cfg["noise"].get<std::string>();
  if (noise)
    rc.noise = sim::noise_from_json(json::parse(io::read_file(*noise)));

  rc.validate();
  return rc;
}

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    io::write_file_atomic(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knot -> Potts -> circuit pipeline for Jones polynomial "
               "estimation under simulated noise"};
  app.require_subcommand(1);

  CliOptions exact_o, sim_o, zne_o, bench_o, info_o;

  CLI::App* exact = app.add_subcommand(
      "exact", "classical evaluation: t(q), Z (two ways), A, V");
  add_common(exact, exact_o);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the seeded noisy H-test campaign, write dataset CSV");
  add_common(simulate, sim_o);

  CLI::App* znecmd = app.add_subcommand(
      "zne", "fit a dataset, extrapolate to zero noise, assemble V_K");
  add_common(znecmd, zne_o);
  znecmd->add_option("--dataset", zne_o.dataset, "dataset CSV from simulate")
      ->required();
  std::string plot_out;
  znecmd->add_option("--plot-out", plot_out, "plot-data JSON output");

  CLI::App* bench = app.add_subcommand(
      "benchmark", "random-Reidemeister equivalence benchmark");
  add_common(bench, bench_o);

  CLI::App* knot = app.add_subcommand("knot", "knot utilities");
  CLI::App* info = knot->add_subcommand("info", "inspect a knot source");
  add_common(info, info_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) {
      RunConfig rc = build_config(exact_o);
      KnotRecord rec = pipeline::resolve_knot(rc.knot);
      emit(pipeline::exact_report(rec, rc.q), exact_o.out);
    } else if (simulate->parsed()) {
      RunConfig rc = build_config(sim_o);
      KnotRecord rec = pipeline::resolve_knot(rc.knot);
      auto rows = pipeline::simulate_dataset(rc, rec);
      std::string csv = pipeline::rows_to_csv(rows);
      if (sim_o.out.empty())
        std::cout << csv;
      else
        io::write_file_atomic(sim_o.out, csv);
    } else if (znecmd->parsed()) {
      RunConfig rc = build_config(zne_o);
      KnotRecord rec = pipeline::resolve_knot(rc.knot);
      auto rows = pipeline::rows_from_csv(io::read_file(zne_o.dataset));
      auto out = pipeline::run_zne(rows, rc, rec);
      json j = zne::jones_to_json(out.estimate);
      j["fit_re"] = zne::fit_to_json(out.fit_re);
      j["fit_im"] = zne::fit_to_json(out.fit_im);
      emit(j, zne_o.out);
      if (!plot_out.empty()) emit(out.plot_data, plot_out);
    } else if (bench->parsed()) {
      RunConfig rc = build_config(bench_o, /*benchmark_defaults=*/true);
      KnotRecord rec = pipeline::resolve_knot(rc.knot);
      auto report = pipeline::run_benchmark(rc, rec);
      emit(pipeline::benchmark_to_json(report), bench_o.out);
    } else if (info->parsed()) {
      RunConfig rc = build_config(info_o);
      KnotRecord rec = pipeline::resolve_knot(rc.knot);
      json j = record_to_json(rec);
      if (rec.pd) {
        KnotDiagram d = orient_and_sign(*rec.pd);
        j["crossings"] = d.pd.crossing_count();
        j["faces"] = faces(d).faces.size();
      }
      emit(j, info_o.out);
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
