// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite.  Each numbered check prints exactly one
// pass/fail line; the process exits nonzero if any check fails.  Tolerances
// and regression floors are pinned in the constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "satnet/experiment.hpp"
#include "satnet/scenario_io.hpp"
#include "satnet/scheduling.hpp"
#include "satnet/testbed.hpp"

using namespace satnet;
using Cd = std::complex<double>;

namespace {

// Pinned tolerances and regression floors.
constexpr double kCoverageAngleDeg = 24.0;
constexpr double kCoverageAngleTolDeg = 0.5;
constexpr double kUnitarityTol = 1e-10;
constexpr double kEntryMagTol = 1e-12;
constexpr double kGainPeakTol = 1e-6;
constexpr double kHalfPowerRelTol = 0.02;
constexpr double kZfInvTol = 1e-8;
constexpr double kZfSuppressionDb = 20.0;
constexpr double kPowerRelTol = 1e-9;
constexpr double kLooRelTol = 0.02;
// Observed 5th-percentile heuristic/optimal SE ratio (0.6838 on the fixed
// instance set), frozen with a small margin as a regression floor.
constexpr double kOracleRatioFloor = 0.68;
constexpr double kOrderingGapFactor = 1.5;
// Counter envelopes: growth factor slack over the quadratic-in-users fit.
constexpr double kCounterSlack = 1.6;

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "pass" : "FAIL", idx,
              what.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::MatrixXcd random_h(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd h(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) h(r, c) = Cd(nd(rng), nd(rng));
  return h;
}

void check_geometry() {
  const auto t0 = std::chrono::steady_clock::now();
  const double angle = coverage_angle(1200.0, 10.0);
  const auto t1 = std::chrono::steady_clock::now();
  const double us =
      std::chrono::duration<double, std::micro>(t1 - t0).count();
  const bool ok =
      std::abs(angle - kCoverageAngleDeg) <= kCoverageAngleTolDeg && us < 1000.0;
  report(1, "coverage angle at 1200 km / 10 deg", ok,
         "angle=" + fmt(angle) + " deg, eval=" + fmt(us) + " us");
}

void check_codebook() {
  double worst_gram = 0.0, worst_entry = 0.0;
  for (const auto [nx, ny] : {std::pair{4, 4}, std::pair{8, 8}}) {
    const auto cb = dft_codebook(nx, ny);
    const int n = nx * ny;
    worst_gram = std::max(
        worst_gram, (cb.D.adjoint() * cb.D - Eigen::MatrixXcd::Identity(n, n))
                        .cwiseAbs()
                        .maxCoeff());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst_entry = std::max(
            worst_entry, std::abs(std::abs(cb.D(i, j)) - 1.0 / std::sqrt(n)));
  }
  const bool ok = worst_gram <= kUnitarityTol && worst_entry <= kEntryMagTol;
  report(2, "DFT codebook unitarity and entry magnitudes", ok,
         "max|D^H D - I|=" + fmt(worst_gram) + ", entry dev=" + fmt(worst_entry));
}

void check_gu_pattern() {
  const double g_max = db2lin(40.0);
  const double peak = gu_antenna_gain(0.0, 0.85, 40.0) / g_max;
  const double half = gu_antenna_gain(0.85, 0.85, 40.0) / g_max;
  const bool ok = std::abs(peak - 1.0) <= kGainPeakTol &&
                  std::abs(half - 0.5) <= kHalfPowerRelTol * 0.5;
  report(3, "GU antenna peak and half-power point", ok,
         "peak=" + fmt(peak) + ", at 3dB angle=" + fmt(half));
}

void check_regularized_zf() {
  Rng rng(2024);
  const double beta = beta_opt(4, 1.3872134e-12, 80.0);
  double worst_inv = 0.0;
  double worst_margin_db = 1e9;
  int trials = 0;
  while (trials < 100) {
    const Eigen::MatrixXcd h = random_h(rng, 4, 4);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    if (svd.singularValues()(0) / svd.singularValues()(3) > 1e3) continue;
    ++trials;
    worst_inv = std::max(
        worst_inv, (h * regularized_zf(h, 0.0) - Eigen::MatrixXcd::Identity(4, 4))
                       .cwiseAbs()
                       .maxCoeff());
    const Eigen::MatrixXcd prod = h * regularized_zf(h, beta);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j && std::abs(prod(i, j)) > 0.0)
          worst_margin_db = std::min(
              worst_margin_db, 10.0 * std::log10(std::norm(prod(i, i)) /
                                                 std::norm(prod(i, j))));
  }
  const bool ok = worst_inv <= kZfInvTol && worst_margin_db >= kZfSuppressionDb;
  report(4, "regularized ZF inversion and leakage suppression", ok,
         "max|HF-I|=" + fmt(worst_inv) +
             ", min diag/offdiag=" + fmt(worst_margin_db) + " dB");
}

void check_power_constraint() {
  SmallInstanceSpec spec;
  spec.n_sats = 4;
  spec.n_gus = 6;
  SchedulingParams params;
  params.n_b = 4;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ch = make_small_instance(spec, seed);
    for (Scheme s : {Scheme::AU, Scheme::SHU, Scheme::SJHU, Scheme::MJHU}) {
      const auto res = run_scheme(s, ch, cb, params);
      for (int sat = 0; sat < ch.n_sats; ++sat)
        if (res.links.row_sum(sat) > 0)
          worst = std::max(worst, std::abs(res.beams.per_sat[sat].F_HY.squaredNorm() -
                                           params.power_w));
    }
  }
  const bool ok = worst <= kPowerRelTol * 80.0;
  report(5, "per-satellite transmit power equals the 80 W budget", ok,
         "max deviation=" + fmt(worst) + " W");
}

void check_loo_normalization() {
  FadingParams fp;
  LookGeometry geom;
  geom.sat_elevation_rad = 1.2;
  geom.sat_azimuth_rad = 0.3;
  Rng rng(99);
  double sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    sum += loo_fading(fp, geom, 4, 4, rng).h.squaredNorm();
  const double mean = sum / draws;
  const bool ok = std::abs(mean - 1.0) <= kLooRelTol;
  report(6, "Loo fading ensemble channel-power normalization", ok,
         "mean ||h||^2 over 1e4 draws=" + fmt(mean));
}

void check_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  SchedulingParams params;
  params.n_b = 2;
  std::vector<double> ratios;
  bool dominance = true;
  Rng pick(31337);
  for (int i = 0; i < 100; ++i) {
    SmallInstanceSpec spec;
    spec.n_sats = 2 + static_cast<int>(pick() % 2);   // 2..3
    spec.n_gus = 2 + static_cast<int>(pick() % 3);    // 2..4
    const auto ch = make_small_instance(spec, 1000 + i);
    const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
    const auto fa = analog_vectors(ch, cb, params.codebook_k);
    const auto [links, best] =
        exhaustive_oracle(ch, fa, params, true, BeamRule::Hybrid);
    const auto heur = run_scheme(Scheme::SJHU, ch, cb, params);
    if (heur.report.total > best + 1e-9) dominance = false;
    if (best > 0.0) ratios.push_back(heur.report.total / best);
  }
  std::sort(ratios.begin(), ratios.end());
  const double p5 = ratios[ratios.size() / 20];
  const double median = ratios[ratios.size() / 2];
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  const bool ok = dominance && p5 >= kOracleRatioFloor && secs < 60.0;
  report(7, "greedy SE never beats the exhaustive optimum; quality floor", ok,
         "p5 ratio=" + fmt(p5) + ", median=" + fmt(median) +
             ", min=" + fmt(ratios.front()) + ", time=" + fmt(secs) + " s");
}

void check_scheme_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  SmallInstanceSpec spec;
  spec.n_sats = 8;
  spec.n_gus = 16;
  SchedulingParams params;
  params.n_b = 4;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  double au = 0.0, shu = 0.0, sjhu = 0.0, mjhu = 0.0;
  const int seeds = 20;
  for (int i = 0; i < seeds; ++i) {
    const auto ch = make_small_instance(spec, 500 + i);
    au += run_scheme(Scheme::AU, ch, cb, params).report.total;
    shu += run_scheme(Scheme::SHU, ch, cb, params).report.total;
    sjhu += run_scheme(Scheme::SJHU, ch, cb, params).report.total;
    mjhu += run_scheme(Scheme::MJHU, ch, cb, params).report.total;
  }
  au /= seeds; shu /= seeds; sjhu /= seeds; mjhu /= seeds;
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  const bool ok = mjhu >= sjhu && sjhu >= shu && shu >= au &&
                  sjhu >= kOrderingGapFactor * au && secs < 600.0;
  report(8, "mean SE ordering M-JHU >= S-JHU >= SHU >= AU with margin", ok,
         "AU=" + fmt(au) + ", SHU=" + fmt(shu) + ", S-JHU=" + fmt(sjhu) +
             ", M-JHU=" + fmt(mjhu) + ", time=" + fmt(secs) + " s");
}

void check_counters() {
  SmallInstanceSpec spec;
  spec.n_sats = 4;
  SchedulingParams params;
  params.n_b = 16;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);

  // Fit the quadratic-in-users constant at N_u = 8 and demand the larger
  // instances stay inside the scaled envelope.
  double c_r = 0.0, c_hy = 0.0;
  bool ok = true;
  std::string detail;
  for (int nu : {8, 16, 32}) {
    spec.n_gus = nu;
    const auto ch = make_small_instance(spec, 4242);
    const auto res = run_scheme(Scheme::SJHU, ch, cb, params);
    const double envelope = static_cast<double>(nu) * nu * spec.n_sats;
    if (nu == 8) {
      c_r = res.counters.m_r / envelope;
      c_hy = res.counters.m_hy / envelope;
    } else {
      ok = ok && res.counters.m_r <= kCounterSlack * c_r * envelope;
      ok = ok && res.counters.m_hy <= kCounterSlack * c_hy * envelope;
    }
    detail += "Nu=" + std::to_string(nu) + ":R=" +
              std::to_string(res.counters.m_r) + ",HY=" +
              std::to_string(res.counters.m_hy) + " ";
  }

  // SHU computes exactly one hybrid beamformer per link-bearing satellite.
  spec.n_gus = 8;
  const auto ch = make_small_instance(spec, 4242);
  const auto shu = run_scheme(Scheme::SHU, ch, cb, params);
  int active = 0;
  for (int s = 0; s < ch.n_sats; ++s)
    if (shu.links.row_sum(s) > 0) ++active;
  ok = ok && shu.counters.m_hy == active;
  detail += "SHU HY=" + std::to_string(shu.counters.m_hy) + "/" +
            std::to_string(active);
  report(9, "evaluation counters stay inside the quadratic envelope", ok, detail);
}

ScenarioConfig acceptance_scenario() {
  ScenarioConfig cfg;
  cfg.constellation.total_sats = 48;
  cfg.constellation.planes = 6;
  cfg.constellation.phasing = 1;
  cfg.gus.count = 12;
  cfg.sub_arrays_x = 2;
  cfg.sub_arrays_y = 2;
  cfg.elements_x = 4;
  cfg.elements_y = 4;
  cfg.samples = 4;
  cfg.spacing_s = 1200.0;
  cfg.schemes = {Scheme::AU};
  cfg.seed = 11;
  return cfg;
}

void check_ratio_semantics() {
  auto cfg = acceptance_scenario();
  const auto rows = inclination_sweep(cfg, {30.0, 37.5, 45.0});
  bool ok = rows.size() == 3;
  double prev = -1.0;
  std::string detail;
  for (const auto& r : rows) {
    ok = ok && r.coverage_ratio >= prev;             // non-decreasing
    ok = ok && r.service_ratio <= r.coverage_ratio + 1e-12;
    prev = r.coverage_ratio;
    detail += fmt(r.parameter) + ":cov=" + fmt(r.coverage_ratio) +
              ",srv=" + fmt(r.service_ratio) + " ";
  }
  report(10, "coverage ratio rises with inclination; service <= coverage", ok,
         detail);
}

void check_determinism() {
  const auto cfg = acceptance_scenario();
  const Scenario sc = build_scenario(cfg);

  auto serialize = [&] {
    const ExperimentResult res = run(sc, 2);
    std::ostringstream out;
    write_results_csv(res, out);
    write_links_csv(res, out);
    write_summary_json(res, sc.gus, out);
    return out.str();
  };
  const std::string a = serialize();
  const std::string b = serialize();
  report(11, "fixed-seed run serializes byte-identically", a == b,
         "bytes=" + std::to_string(a.size()));
}

}  // namespace

int main() {
  check_geometry();
  check_codebook();
  check_gu_pattern();
  check_regularized_zf();
  check_power_constraint();
  check_loo_normalization();
  check_oracle();
  check_scheme_ordering();
  check_counters();
  check_ratio_semantics();
  check_determinism();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
