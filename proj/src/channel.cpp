// SPDX-License-Identifier: Apache-2.0
#include "satnet/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "satnet/bessel.hpp"

namespace satnet {

double fspl(double d0_km, double carrier_ghz) {
  if (d0_km <= 0.0) throw std::invalid_argument("fspl: distance must be > 0");
  const double lambda_m = kSpeedOfLightMS / (carrier_ghz * 1e9);
  return 20.0 * std::log10(4.0 * kPi * d0_km * 1000.0 / lambda_m);
}

PathLossResult path_loss(const LookGeometry& geom, const LinkBudgetParams& params,
                         Rng& rng) {
  PathLossResult out;
  out.fspl_db = fspl(geom.range_km, params.carrier_ghz);

  double elevation = geom.elevation_deg;
  if (elevation < params.elevation_floor_deg) {
    elevation = params.elevation_floor_deg;
    out.elevation_clamped = true;
  }
  // Cosecant scaling of the zenith gas attenuation.
  out.gas_db = params.zenith_gas_db / std::sin(deg2rad(elevation));

  std::normal_distribution<double> shadow(0.0, 1.0);
  const double sf_db = params.shadow_std_db > 0.0
                           ? params.shadow_std_db * shadow(rng)
                           : 0.0;
  const double scint_db = params.scint_std_db > 0.0
                              ? params.scint_std_db * shadow(rng)
                              : 0.0;

  out.total_db = out.fspl_db + sf_db + out.gas_db + scint_db;  // CL = 0 (LoS)
  return out;
}

double gu_antenna_gain(double gamma_deg, double gamma_3db_deg, double g_max_dbi) {
  if (gamma_3db_deg <= 0.0)
    throw std::invalid_argument("gu_antenna_gain: gamma_3dB must be > 0");
  const double g_max = db2lin(g_max_dbi);
  const double u = 2.07123 * std::abs(std::sin(deg2rad(gamma_deg))) /
                   std::sin(deg2rad(gamma_3db_deg));
  double f;
  if (u < 1e-3) {
    // Series limit: J1(u)/(2u) -> 1/4, 36*J3(u)/u^3 -> 3/4.
    f = 1.0 - 0.10625 * u * u;
  } else {
    f = bessel_j(1, u) / (2.0 * u) + 36.0 * bessel_j(3, u) / (u * u * u);
  }
  return g_max * f * f;
}

Eigen::VectorXcd steering_vector(double phi_rad, double theta_rad, int n_x, int n_y) {
  if (n_x < 1 || n_y < 1)
    throw std::invalid_argument("steering_vector: array dims must be >= 1");
  const int n = n_x * n_y;
  const double ct = std::cos(theta_rad);
  const double cx = ct * std::cos(phi_rad);
  const double cy = ct * std::sin(phi_rad);
  Eigen::VectorXcd a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int p = 0; p < n_x; ++p)
    for (int q = 0; q < n_y; ++q) {
      const double phase = -kPi * (p * cx + q * cy);  // d = lambda/2
      a(p * n_y + q) = std::polar(scale, phase);
    }
  return a;
}

SmallScaleChannel loo_fading(const FadingParams& params, const LookGeometry& geom,
                             int n_x, int n_y, Rng& rng) {
  if (params.clusters < 0 || (params.clusters > 0 && params.rays_per_cluster < 1))
    throw std::invalid_argument("loo_fading: invalid cluster/ray counts");

  const double ln10_20 = std::log(10.0) / 20.0;
  // E[|m_0|^2] for a log-normal amplitude with dB-domain mean/std.
  const double mu = params.direct_mean_db * ln10_20;
  const double sg = params.direct_std_db * ln10_20;
  const double direct_power = std::exp(2.0 * mu + 2.0 * sg * sg);
  const int n_rays = params.clusters * params.rays_per_cluster;
  const double delta =
      1.0 / std::sqrt(direct_power + (n_rays > 0 ? params.multipath_power : 0.0));

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);

  const double m0_amp = std::pow(
      10.0, (params.direct_mean_db + params.direct_std_db * gauss(rng)) / 20.0);
  const std::complex<double> m0 = std::polar(m0_amp, uniform(rng));

  Eigen::VectorXcd h =
      m0 * steering_vector(geom.sat_azimuth_rad, geom.sat_elevation_rad, n_x, n_y);

  if (n_rays > 0) {
    // Rayleigh rays, each with mean power multipath_power / (N_cl * N_ray).
    const double ray_sigma = std::sqrt(params.multipath_power / n_rays / 2.0);
    const double spread = deg2rad(params.angular_spread_deg);
    for (int l = 0; l < params.clusters; ++l)
      for (int i = 0; i < params.rays_per_cluster; ++i) {
        const double amp = ray_sigma *
            std::hypot(gauss(rng), gauss(rng));  // Rayleigh amplitude
        const std::complex<double> mli = std::polar(amp, uniform(rng));
        const double phi = geom.sat_azimuth_rad + spread * gauss(rng);
        const double theta = geom.sat_elevation_rad + spread * gauss(rng);
        h += mli * steering_vector(phi, theta, n_x, n_y);
      }
  }

  SmallScaleChannel out;
  out.h = delta * h;
  return out;
}

double noise_power(const LinkBudgetParams& params) {
  return kBoltzmannJK * db2lin(params.noise_temp_dbk) * params.bandwidth_hz;
}

ChannelSet assemble_channels(const std::vector<SatelliteState>& states,
                             const std::vector<GroundUser>& gus,
                             const VisibilityMap& vis,
                             const LinkBudgetParams& budget,
                             const FadingParams& fading, int n_x, int n_y,
                             std::uint64_t seed) {
  ChannelSet set;
  set.n_sats = static_cast<int>(states.size());
  set.n_gus = static_cast<int>(gus.size());
  set.n_elements = n_x * n_y;
  set.noise_w = noise_power(budget);
  set.gus = gus;
  set.vis = vis;

  const double sqrt_gs = std::sqrt(db2lin(budget.satellite_gain_dbi));

  for (int g = 0; g < set.n_gus; ++g) {
    const Eigen::Vector3d r_gu = geodetic_to_ecef(
        gus[g].latitude_deg, gus[g].longitude_deg, gus[g].altitude_km);
    for (int s : vis.sats_of_gu[g]) {
      // Per-pair seed derivation keeps generation order-independent.
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s),
                          static_cast<std::uint64_t>(g)));
      LinkChannel lc;
      lc.geom = look_angles(states[s], gus[g]);
      const PathLossResult pl = path_loss(lc.geom, budget, rng);
      lc.amplitude = sqrt_gs * std::pow(10.0, -pl.total_db / 20.0);
      lc.elevation_clamped = pl.elevation_clamped;
      lc.small_scale = loo_fading(fading, lc.geom, n_x, n_y, rng).h;
      lc.dir_from_gu = (states[s].position_km - r_gu).normalized();
      set.links.emplace(ChannelSet::key(s, g), std::move(lc));
    }
  }
  return set;
}

}  // namespace satnet
