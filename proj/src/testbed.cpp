// SPDX-License-Identifier: Apache-2.0
#include "satnet/testbed.hpp"

#include <cmath>

namespace satnet {

ChannelSet make_small_instance(const SmallInstanceSpec& spec, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x5e7u));
  std::uniform_real_distribution<double> lat(10.0, 40.0);
  std::uniform_real_distribution<double> lon(60.0, 120.0);
  std::uniform_real_distribution<double> offset(-12.0, 12.0);

  const double lat0 = lat(rng);
  const double lon0 = lon(rng);

  std::vector<GroundUser> gus(spec.n_gus);
  for (int g = 0; g < spec.n_gus; ++g) {
    gus[g].gu_id = g;
    gus[g].latitude_deg = lat0 + 0.25 * offset(rng);
    gus[g].longitude_deg = lon0 + 0.25 * offset(rng);
  }

  std::vector<SatelliteState> states(spec.n_sats);
  for (int s = 0; s < spec.n_sats; ++s) {
    const double slat = lat0 + offset(rng);
    const double slon = lon0 + offset(rng);
    states[s].satellite_id = s;
    states[s].position_km = geodetic_to_ecef(slat, slon, spec.altitude_km);
    // Roughly eastward orbital motion; only the direction matters.
    const Eigen::Vector3d up = states[s].position_km.normalized();
    const Eigen::Vector3d east =
        Eigen::Vector3d(-up.y(), up.x(), 0.0).normalized();
    states[s].velocity_kms = 7.1 * east;
  }

  const VisibilityMap vis = visibility(states, gus, spec.theta_min_deg);
  return assemble_channels(states, gus, vis, spec.budget, spec.fading,
                           spec.elements_x, spec.elements_y,
                           derive_seed(seed, 0xcafe));
}

}  // namespace satnet
