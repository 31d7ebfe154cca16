// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "satnet/channel.hpp"
#include "satnet/geometry.hpp"
#include "satnet/scheduling.hpp"

namespace satnet {

struct GuPlacement {
  std::vector<GroundUser> explicit_list;  // wins over synthetic when non-empty
  std::string csv_path;                   // optional source of explicit_list
  int count = 80;
  double lat_min_deg = 0.0;
  double lat_max_deg = 54.0;
  double lon_min_deg = 75.0;
  double lon_max_deg = 150.0;
  double min_separation_km = 0.0;
  double max_gain_dbi = 40.0;
  double hpbw_deg = 1.7;  // gamma_3dB is half of this
};

struct ScenarioConfig {
  ConstellationConfig constellation;
  GuPlacement gus;
  LinkBudgetParams budget;
  FadingParams fading;
  int sub_arrays_x = 8;  // N_x^sub
  int sub_arrays_y = 4;  // N_y^sub; N_b = sub_arrays_x * sub_arrays_y
  int elements_x = 8;    // N_x per sub-array
  int elements_y = 8;
  double power_w = 80.0;
  int codebook_k = 4;
  double theta_min_deg = 10.0;
  int samples = 24;
  double spacing_s = 3600.0;
  std::vector<Scheme> schemes = {Scheme::AU, Scheme::SHU, Scheme::SJHU,
                                 Scheme::MJHU};
  std::uint64_t seed = 1;

  int n_b() const { return sub_arrays_x * sub_arrays_y; }
};

struct Scenario {
  ScenarioConfig config;
  std::vector<OrbitalElements> elements;
  std::vector<GroundUser> gus;
};

struct GuSampleResult {
  double sinr_db = 0.0;
  double se = 0.0;
  bool served = false;
  int boresight_sat = -1;  // global satellite id
};

struct SchemeSampleResult {
  Scheme scheme = Scheme::AU;
  double total_se = 0.0;
  EvalCounters counters;
  bool infeasible = false;
  std::vector<GuSampleResult> gus;
  std::vector<std::pair<int, int>> links;  // (global sat id, gu id)
};

struct SampleResult {
  int sample = 0;
  double time_s = 0.0;
  std::vector<bool> covered;  // per GU: at least one visible satellite
  int visible_sats = 0;       // satellites visible to at least one GU
  std::vector<SchemeSampleResult> schemes;
};

struct ExperimentResult {
  ScenarioConfig config;
  std::vector<SampleResult> samples;
  std::map<Scheme, double> mean_total_se;
  std::map<Scheme, double> service_ratio;  // served GU-samples fraction
  double coverage_ratio = 0.0;
};

Scenario build_scenario(const ScenarioConfig& config);

ExperimentResult run(const Scenario& scenario, int threads = 1);

// (coverage ratio, service ratio of the first configured scheme).
std::pair<double, double> ratios(const ExperimentResult& result);

struct SweepRow {
  double parameter = 0.0;  // inclination in degrees, or HPBW in degrees
  Scheme scheme = Scheme::AU;
  double mean_total_se = 0.0;
  double coverage_ratio = 0.0;
  double service_ratio = 0.0;
};

std::vector<SweepRow> inclination_sweep(const ScenarioConfig& base,
                                        const std::vector<double>& inclinations_deg,
                                        int threads = 1);

struct HpbwRow {
  double hpbw_deg = 0.0;
  double mean_se_sjhu = 0.0;
  double mean_se_mjhu = 0.0;
  double improvement = 0.0;  // (M-JHU - S-JHU) / S-JHU
};

// G_max follows the inverse-square beamwidth rule from the (1.7 deg, 40 dBi)
// reference point.
std::vector<HpbwRow> hpbw_sweep(const ScenarioConfig& base,
                                const std::vector<double>& hpbw_deg,
                                int threads = 1);

// Returns (dense, sparse) GU index lists; sparse GUs have a nearest-
// neighbour great-circle distance greater than the threshold.
std::pair<std::vector<int>, std::vector<int>> density_split(
    const std::vector<GroundUser>& gus, double threshold_km);

struct DensityStats {
  double dense_mean = 0.0, dense_var = 0.0;
  double sparse_mean = 0.0, sparse_var = 0.0;
  int dense_count = 0, sparse_count = 0;
};

DensityStats density_stats(const ExperimentResult& result, Scheme scheme,
                           const std::vector<GroundUser>& gus,
                           double threshold_km);

}  // namespace satnet
