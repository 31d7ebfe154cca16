// SPDX-License-Identifier: Apache-2.0
#include "satnet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace satnet {

namespace {

double great_circle_km(const GroundUser& a, const GroundUser& b) {
  const double la1 = deg2rad(a.latitude_deg), lo1 = deg2rad(a.longitude_deg);
  const double la2 = deg2rad(b.latitude_deg), lo2 = deg2rad(b.longitude_deg);
  const double c = std::sin(la1) * std::sin(la2) +
                   std::cos(la1) * std::cos(la2) * std::cos(lo1 - lo2);
  return kEarthRadiusKm * std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<GroundUser> synthetic_gus(const GuPlacement& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xfacade));
  std::uniform_real_distribution<double> lat(p.lat_min_deg, p.lat_max_deg);
  std::uniform_real_distribution<double> lon(p.lon_min_deg, p.lon_max_deg);
  std::vector<GroundUser> gus;
  int attempts = 0;
  while (static_cast<int>(gus.size()) < p.count) {
    GroundUser gu;
    gu.gu_id = static_cast<int>(gus.size());
    gu.latitude_deg = lat(rng);
    gu.longitude_deg = lon(rng);
    gu.max_gain_dbi = p.max_gain_dbi;
    gu.gamma_3db_deg = p.hpbw_deg / 2.0;
    bool ok = true;
    if (p.min_separation_km > 0.0)
      for (const auto& other : gus)
        if (great_circle_km(gu, other) < p.min_separation_km) ok = false;
    if (ok) {
      gus.push_back(gu);
      attempts = 0;
    } else if (++attempts > 10000) {
      throw std::runtime_error("build_scenario: min_separation_km unsatisfiable");
    }
  }
  return gus;
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& config) {
  Scenario sc;
  sc.config = config;
  sc.elements = generate_walker(config.constellation);
  if (sc.elements.empty()) throw std::invalid_argument("build_scenario: no satellites");

  if (!config.gus.explicit_list.empty()) {
    sc.gus = config.gus.explicit_list;
    for (std::size_t i = 0; i < sc.gus.size(); ++i) {
      if (sc.gus[i].gu_id < 0) sc.gus[i].gu_id = static_cast<int>(i);
      if (sc.gus[i].gamma_3db_deg <= 0.0)
        sc.gus[i].gamma_3db_deg = config.gus.hpbw_deg / 2.0;
    }
  } else {
    if (config.gus.count <= 0) throw std::invalid_argument("build_scenario: no GUs");
    sc.gus = synthetic_gus(config.gus, config.seed);
  }
  return sc;
}

namespace {

SampleResult run_sample(const Scenario& sc, int sample) {
  const ScenarioConfig& cfg = sc.config;
  SampleResult out;
  out.sample = sample;
  out.time_s = cfg.constellation.epoch_s + sample * cfg.spacing_s;

  std::vector<SatelliteState> all;
  all.reserve(sc.elements.size());
  for (std::size_t i = 0; i < sc.elements.size(); ++i)
    all.push_back(propagate(sc.elements[i], static_cast<int>(i), out.time_s));

  const VisibilityMap full = visibility(all, sc.gus, cfg.theta_min_deg);
  out.covered.resize(sc.gus.size());
  for (std::size_t g = 0; g < sc.gus.size(); ++g)
    out.covered[g] = !full.sats_of_gu[g].empty();
  out.visible_sats = static_cast<int>(full.active_sats.size());

  // Satellites visible to no GU are dropped; indices are compacted.
  std::vector<SatelliteState> active;
  for (int s : full.active_sats) active.push_back(all[s]);

  const int n_gus = static_cast<int>(sc.gus.size());
  if (active.empty()) {
    for (Scheme scheme : cfg.schemes) {
      SchemeSampleResult sr;
      sr.scheme = scheme;
      sr.gus.resize(n_gus);
      out.schemes.push_back(std::move(sr));
    }
    return out;
  }

  const VisibilityMap vis = visibility(active, sc.gus, cfg.theta_min_deg);
  const std::uint64_t sample_seed =
      derive_seed(cfg.seed, static_cast<std::uint64_t>(sample) + 1);
  const ChannelSet ch =
      assemble_channels(active, sc.gus, vis, cfg.budget, cfg.fading,
                        cfg.elements_x, cfg.elements_y, sample_seed);
  const Codebook cb = dft_codebook(cfg.elements_x, cfg.elements_y);
  SchedulingParams params;
  params.n_b = cfg.n_b();
  params.power_w = cfg.power_w;
  params.codebook_k = cfg.codebook_k;

  for (Scheme scheme : cfg.schemes) {
    const SchemeResult res = run_scheme(scheme, ch, cb, params);
    SchemeSampleResult sr;
    sr.scheme = scheme;
    sr.total_se = res.report.total;
    sr.counters = res.counters;
    sr.infeasible = res.infeasible;
    sr.gus.resize(n_gus);
    for (int g = 0; g < n_gus; ++g) {
      GuSampleResult& gr = sr.gus[g];
      gr.served = res.report.served[g];
      gr.se = res.report.se(g);
      gr.sinr_db = gr.served && res.report.sinr(g) > 0.0
                       ? lin2db(res.report.sinr(g))
                       : 0.0;
      gr.boresight_sat = res.links.boresight[g] >= 0
                             ? active[res.links.boresight[g]].satellite_id
                             : -1;
    }
    for (int s = 0; s < ch.n_sats; ++s)
      for (int g = 0; g < n_gus; ++g)
        if (res.links.alpha(s, g) == 1)
          sr.links.emplace_back(active[s].satellite_id, g);
    out.schemes.push_back(std::move(sr));
  }
  return out;
}

}  // namespace

ExperimentResult run(const Scenario& scenario, int threads) {
  const ScenarioConfig& cfg = scenario.config;
  if (cfg.samples < 1) throw std::invalid_argument("run: samples must be >= 1");

  ExperimentResult result;
  result.config = cfg;
  result.samples.resize(cfg.samples);

  if (threads <= 1) {
    for (int k = 0; k < cfg.samples; ++k)
      result.samples[k] = run_sample(scenario, k);
  } else {
    // Samples are independent; ordered writes keep the result deterministic.
    std::vector<std::future<SampleResult>> futs;
    int next = 0;
    while (next < cfg.samples || !futs.empty()) {
      while (next < cfg.samples && static_cast<int>(futs.size()) < threads) {
        futs.push_back(std::async(std::launch::async, run_sample,
                                  std::cref(scenario), next));
        ++next;
      }
      SampleResult sr = futs.front().get();
      futs.erase(futs.begin());
      result.samples[sr.sample] = std::move(sr);
    }
  }

  const double denom = static_cast<double>(cfg.samples) * scenario.gus.size();
  double covered = 0.0;
  std::map<Scheme, double> served, se_sum;
  for (const SampleResult& sr : result.samples) {
    covered += std::count(sr.covered.begin(), sr.covered.end(), true);
    for (const SchemeSampleResult& sc : sr.schemes) {
      se_sum[sc.scheme] += sc.total_se;
      for (const GuSampleResult& gr : sc.gus) served[sc.scheme] += gr.served;
    }
  }
  result.coverage_ratio = covered / denom;
  for (Scheme scheme : cfg.schemes) {
    result.mean_total_se[scheme] = se_sum[scheme] / cfg.samples;
    result.service_ratio[scheme] = served[scheme] / denom;
  }
  return result;
}

std::pair<double, double> ratios(const ExperimentResult& result) {
  if (result.config.schemes.empty())
    throw std::invalid_argument("ratios: no schemes in result");
  return {result.coverage_ratio,
          result.service_ratio.at(result.config.schemes.front())};
}

std::vector<SweepRow> inclination_sweep(const ScenarioConfig& base,
                                        const std::vector<double>& inclinations_deg,
                                        int threads) {
  std::vector<SweepRow> rows;
  for (double inc : inclinations_deg) {
    ScenarioConfig cfg = base;
    cfg.constellation.inclination_deg = inc;
    const ExperimentResult res = run(build_scenario(cfg), threads);
    for (Scheme scheme : cfg.schemes) {
      SweepRow row;
      row.parameter = inc;
      row.scheme = scheme;
      row.mean_total_se = res.mean_total_se.at(scheme);
      row.coverage_ratio = res.coverage_ratio;
      row.service_ratio = res.service_ratio.at(scheme);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<HpbwRow> hpbw_sweep(const ScenarioConfig& base,
                                const std::vector<double>& hpbw_deg,
                                int threads) {
  constexpr double kRefHpbwDeg = 1.7;
  constexpr double kRefGainDbi = 40.0;
  std::vector<HpbwRow> rows;
  for (double hpbw : hpbw_deg) {
    ScenarioConfig cfg = base;
    cfg.gus.hpbw_deg = hpbw;
    cfg.gus.max_gain_dbi = kRefGainDbi + 20.0 * std::log10(kRefHpbwDeg / hpbw);
    cfg.schemes = {Scheme::SJHU, Scheme::MJHU};
    const ExperimentResult res = run(build_scenario(cfg), threads);
    HpbwRow row;
    row.hpbw_deg = hpbw;
    row.mean_se_sjhu = res.mean_total_se.at(Scheme::SJHU);
    row.mean_se_mjhu = res.mean_total_se.at(Scheme::MJHU);
    row.improvement = row.mean_se_sjhu > 0.0
                          ? (row.mean_se_mjhu - row.mean_se_sjhu) / row.mean_se_sjhu
                          : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::pair<std::vector<int>, std::vector<int>> density_split(
    const std::vector<GroundUser>& gus, double threshold_km) {
  if (threshold_km <= 0.0)
    throw std::invalid_argument("density_split: threshold must be > 0");
  std::vector<int> dense, sparse;
  for (std::size_t i = 0; i < gus.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < gus.size(); ++j)
      if (i != j) nearest = std::min(nearest, great_circle_km(gus[i], gus[j]));
    if (nearest > threshold_km)
      sparse.push_back(static_cast<int>(i));
    else
      dense.push_back(static_cast<int>(i));
  }
  return {dense, sparse};
}

DensityStats density_stats(const ExperimentResult& result, Scheme scheme,
                           const std::vector<GroundUser>& gus,
                           double threshold_km) {
  const auto [dense, sparse] = density_split(gus, threshold_km);
  auto collect = [&](const std::vector<int>& ids, double& mean, double& var) {
    std::vector<double> values;
    for (const SampleResult& sr : result.samples)
      for (const SchemeSampleResult& sc : sr.schemes)
        if (sc.scheme == scheme)
          for (int g : ids) values.push_back(sc.gus[g].se);
    if (values.empty()) return;
    double sum = 0.0;
    for (double v : values) sum += v;
    mean = sum / values.size();
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    var = values.size() > 1 ? sq / (values.size() - 1) : 0.0;
  };
  DensityStats st;
  st.dense_count = static_cast<int>(dense.size());
  st.sparse_count = static_cast<int>(sparse.size());
  collect(dense, st.dense_mean, st.dense_var);
  collect(sparse, st.sparse_mean, st.sparse_var);
  return st;
}

}  // namespace satnet
