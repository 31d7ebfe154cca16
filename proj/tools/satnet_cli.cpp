// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the multi-satellite cooperative downlink
// simulator.  Output files never contain timestamps, so a fixed seed gives
// byte-identical re-runs.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "satnet/scenario_io.hpp"
#include "satnet/testbed.hpp"

namespace fs = std::filesystem;
using namespace satnet;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("SATNET_OUT");
  return env != nullptr ? env : "results";
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

ScenarioConfig load_with_overrides(const std::string& path, long long seed) {
  ScenarioConfig cfg = load_scenario(path);
  if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
  return cfg;
}

void write_run_outputs(const ExperimentResult& result, const Scenario& sc,
                       const fs::path& dir) {
  {
    auto out = open_out(dir, "results.csv");
    write_results_csv(result, out);
  }
  {
    auto out = open_out(dir, "links.csv");
    write_links_csv(result, out);
  }
  {
    auto out = open_out(dir, "summary.json");
    write_summary_json(result, sc.gus, out);
  }
}

int cmd_constellation(const std::string& walker, double inclination,
                      double altitude, int samples, double spacing,
                      const std::string& out_dir) {
  ConstellationConfig cfg;
  if (std::sscanf(walker.c_str(), "%d/%d/%d", &cfg.total_sats, &cfg.planes,
                  &cfg.phasing) != 3) {
    std::cerr << "expected --walker T/P/F\n";
    return 1;
  }
  cfg.inclination_deg = inclination;
  cfg.altitude_km = altitude;
  const auto elements = generate_walker(cfg);
  auto out = open_out(out_dir, "ephemeris.csv");
  write_ephemeris_csv(elements, samples, spacing, cfg.epoch_s, out);
  std::cout << "wrote " << (fs::path(out_dir) / "ephemeris.csv").string() << " ("
            << elements.size() << " satellites, " << samples << " samples)\n";
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            long long seed, int threads) {
  const ScenarioConfig cfg = load_with_overrides(scenario_path, seed);
  const Scenario sc = build_scenario(cfg);
  const ExperimentResult result = run(sc, threads);
  write_run_outputs(result, sc, out_dir);
  std::cout << "coverage ratio " << result.coverage_ratio << "\n";
  for (Scheme scheme : cfg.schemes)
    std::cout << std::left << std::setw(6) << scheme_name(scheme)
              << " mean total SE " << result.mean_total_se.at(scheme)
              << " bps/Hz, service ratio " << result.service_ratio.at(scheme)
              << "\n";
  return 0;
}

int cmd_sweep_inclination(const std::string& scenario_path,
                          const std::string& out_dir, long long seed,
                          double from, double to, double step, int threads) {
  const ScenarioConfig cfg = load_with_overrides(scenario_path, seed);
  std::vector<double> grid;
  for (double inc = from; inc <= to + 1e-9; inc += step) grid.push_back(inc);
  const auto rows = inclination_sweep(cfg, grid, threads);
  auto out = open_out(out_dir, "inclination_sweep.csv");
  out << "inclination_deg,scheme,mean_total_se_bpshz,coverage_ratio,service_ratio\n"
      << std::setprecision(12);
  for (const SweepRow& r : rows)
    out << r.parameter << ',' << scheme_name(r.scheme) << ',' << r.mean_total_se
        << ',' << r.coverage_ratio << ',' << r.service_ratio << '\n';
  std::cout << "wrote inclination_sweep.csv (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_sweep_hpbw(const std::string& scenario_path, const std::string& out_dir,
                   long long seed, std::vector<double> hpbws, int threads) {
  const ScenarioConfig cfg = load_with_overrides(scenario_path, seed);
  if (hpbws.empty()) hpbws = {2.0, 8.0, 32.0, 128.0};
  const auto rows = hpbw_sweep(cfg, hpbws, threads);
  auto out = open_out(out_dir, "hpbw_sweep.csv");
  out << "hpbw_deg,mean_se_sjhu,mean_se_mjhu,improvement\n"
      << std::setprecision(12);
  for (const HpbwRow& r : rows)
    out << r.hpbw_deg << ',' << r.mean_se_sjhu << ',' << r.mean_se_mjhu << ','
        << r.improvement << '\n';
  std::cout << "wrote hpbw_sweep.csv (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir,
                long long seed, int threads) {
  ScenarioConfig cfg = load_with_overrides(scenario_path, seed);
  cfg.schemes = {Scheme::AU, Scheme::SHU, Scheme::SJHU, Scheme::MJHU};
  const Scenario sc = build_scenario(cfg);
  const ExperimentResult result = run(sc, threads);
  write_run_outputs(result, sc, out_dir);
  std::cout << "scheme  mean_total_SE[bps/Hz]  service_ratio\n";
  for (Scheme scheme : cfg.schemes)
    std::cout << std::left << std::setw(8) << scheme_name(scheme)
              << std::setw(22) << result.mean_total_se.at(scheme)
              << result.service_ratio.at(scheme) << "\n";
  return 0;
}

int cmd_oracle_check(int instances, long long seed, int n_b) {
  SmallInstanceSpec spec;
  SchedulingParams params;
  params.n_b = n_b;
  const std::uint64_t master = seed >= 0 ? seed : 1;

  std::vector<double> ratios;
  for (int i = 0; i < instances; ++i) {
    const ChannelSet ch = make_small_instance(spec, derive_seed(master, i));
    const Codebook cb = dft_codebook(spec.elements_x, spec.elements_y);
    const AnalogSet fa = analog_vectors(ch, cb, params.codebook_k);
    const SchemeResult heur = jhu(ch, fa, params, false);
    const auto [links, best] = exhaustive_oracle(ch, fa, params, true);
    if (best <= 0.0) continue;
    ratios.push_back(heur.report.total / best);
  }
  std::sort(ratios.begin(), ratios.end());
  auto pct = [&](double p) {
    return ratios[std::min(ratios.size() - 1,
                           static_cast<std::size_t>(p * ratios.size()))];
  };
  std::cout << "instances: " << ratios.size() << "\n"
            << "SE ratio heuristic/optimal: min " << ratios.front() << ", p5 "
            << pct(0.05) << ", median " << pct(0.5) << ", max " << ratios.back()
            << "\n";
  const bool dominated = ratios.back() <= 1.0 + 1e-9;
  std::cout << (dominated ? "oracle dominance holds" : "DOMINANCE VIOLATION")
            << "\n";
  return dominated ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-satellite cooperative downlink simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = default_out_dir();
  long long seed = -1;
  int threads = 1;
  std::string walker = "48/6/1";
  double inclination = 45.0, altitude = 1200.0;
  int samples = 24;
  double spacing = 3600.0;
  double from = 30.0, to = 60.0, step = 5.0;
  std::vector<double> hpbws;
  int instances = 100, n_b = 2;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario file")
          ->required()
          ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the scenario seed");
    cmd->add_option("--threads", threads, "parallel sample workers");
  };

  auto* c_const = app.add_subcommand("constellation", "export Walker ephemeris");
  c_const->add_option("--walker", walker, "T/P/F")->required();
  c_const->add_option("--inclination", inclination, "degrees");
  c_const->add_option("--altitude", altitude, "km");
  c_const->add_option("--samples", samples, "time samples");
  c_const->add_option("--spacing", spacing, "seconds between samples");
  c_const->add_option("--out", out_dir, "output directory");

  auto* c_run = app.add_subcommand("run", "run the configured experiment");
  add_common(c_run, true);

  auto* c_incl = app.add_subcommand("sweep-inclination", "inclination sweep");
  add_common(c_incl, true);
  c_incl->add_option("--from", from, "first inclination (deg)");
  c_incl->add_option("--to", to, "last inclination (deg)");
  c_incl->add_option("--step", step, "grid step (deg)");

  auto* c_hpbw = app.add_subcommand("sweep-hpbw", "GU antenna HPBW sweep");
  add_common(c_hpbw, true);
  c_hpbw->add_option("--hpbw", hpbws, "HPBW grid in degrees");

  auto* c_cmp = app.add_subcommand("compare-schemes",
                                   "run AU/SHU/S-JHU/M-JHU on one scenario");
  add_common(c_cmp, true);

  auto* c_oracle = app.add_subcommand(
      "oracle-check", "heuristic vs exhaustive optimum on small instances");
  c_oracle->add_option("--instances", instances, "number of random instances");
  c_oracle->add_option("--seed", seed, "master seed");
  c_oracle->add_option("--beams", n_b, "beams per satellite (N_b)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_const->parsed())
      return cmd_constellation(walker, inclination, altitude, samples, spacing,
                               out_dir);
    if (c_run->parsed()) return cmd_run(scenario_path, out_dir, seed, threads);
    if (c_incl->parsed())
      return cmd_sweep_inclination(scenario_path, out_dir, seed, from, to, step,
                                   threads);
    if (c_hpbw->parsed())
      return cmd_sweep_hpbw(scenario_path, out_dir, seed, hpbws, threads);
    if (c_cmp->parsed()) return cmd_compare(scenario_path, out_dir, seed, threads);
    if (c_oracle->parsed()) return cmd_oracle_check(instances, seed, n_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
