// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "satnet/geometry.hpp"
#include "satnet/rng.hpp"

namespace satnet {

struct LinkBudgetParams {
  double carrier_ghz = 20.0;
  double bandwidth_hz = 400e6;
  double satellite_gain_dbi = 21.5;   // G_S
  double noise_temp_dbk = 24.0;
  double shadow_std_db = 1.2;         // SF
  double zenith_gas_db = 0.5;         // PL_g at 90 deg elevation
  double scint_std_db = 0.1;          // tropospheric PL_s
  double elevation_floor_deg = 5.0;   // gas-loss clamp
};

struct FadingParams {
  int clusters = 2;                   // N_cl
  int rays_per_cluster = 10;          // N_ray
  double direct_mean_db = -0.5;       // Loo GOOD state, amplitude in dB
  double direct_std_db = 1.0;
  double multipath_power = 0.056;     // total E[sum |m_li|^2], linear
  double angular_spread_deg = 1.0;
};

struct PathLossResult {
  double total_db = 0.0;
  double fspl_db = 0.0;
  double gas_db = 0.0;
  bool elevation_clamped = false;
};

struct SmallScaleChannel {
  Eigen::VectorXcd h;  // length N = N_x * N_y
  std::uint64_t seed = 0;
};

// Per-(satellite, GU) channel with the GU-side antenna gain left out; the
// gain depends on the GU boresight which is fixed only during scheduling.
struct LinkChannel {
  Eigen::VectorXcd small_scale;
  double amplitude = 0.0;            // xi'_sg = sqrt(G_S) * 10^(-PL/20), linear
  LookGeometry geom;
  Eigen::Vector3d dir_from_gu = Eigen::Vector3d::Zero();  // unit GU->satellite
  bool elevation_clamped = false;
};

struct ChannelSet {
  int n_sats = 0;
  int n_gus = 0;
  int n_elements = 0;
  double noise_w = 0.0;  // sigma_s^2
  std::vector<GroundUser> gus;
  VisibilityMap vis;
  std::unordered_map<std::int64_t, LinkChannel> links;

  static std::int64_t key(int s, int g) {
    return static_cast<std::int64_t>(s) * 1000000 + g;
  }
  const LinkChannel* link(int s, int g) const {
    auto it = links.find(key(s, g));
    return it == links.end() ? nullptr : &it->second;
  }
};

double fspl(double d0_km, double carrier_ghz);

PathLossResult path_loss(const LookGeometry& geom, const LinkBudgetParams& params,
                         Rng& rng);

// GU antenna pattern: G_max * (J1(u)/(2u) + 36*J3(u)/u^3)^2 with
// u = 2.07123 * sin(gamma) / sin(gamma_3dB).  Returns linear gain.
double gu_antenna_gain(double gamma_deg, double gamma_3db_deg, double g_max_dbi);

// UPA steering vector, element order p * N_y + q (row-major in (p, q)),
// half-wavelength spacing.
Eigen::VectorXcd steering_vector(double phi_rad, double theta_rad, int n_x, int n_y);

SmallScaleChannel loo_fading(const FadingParams& params, const LookGeometry& geom,
                             int n_x, int n_y, Rng& rng);

double noise_power(const LinkBudgetParams& params);

ChannelSet assemble_channels(const std::vector<SatelliteState>& states,
                             const std::vector<GroundUser>& gus,
                             const VisibilityMap& vis,
                             const LinkBudgetParams& budget,
                             const FadingParams& fading, int n_x, int n_y,
                             std::uint64_t seed);

}  // namespace satnet
