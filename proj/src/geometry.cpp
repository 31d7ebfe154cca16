// SPDX-License-Identifier: Apache-2.0
#include "satnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satnet {

std::vector<OrbitalElements> generate_walker(const ConstellationConfig& cfg) {
  if (cfg.planes < 1) throw std::invalid_argument("walker: planes must be >= 1");
  if (cfg.total_sats < 1 || cfg.total_sats % cfg.planes != 0)
    throw std::invalid_argument("walker: total_sats must be a positive multiple of planes");
  if (cfg.phasing < 0) throw std::invalid_argument("walker: phasing must be >= 0");
  if (cfg.altitude_km <= 0.0) throw std::invalid_argument("walker: altitude must be > 0");
  if (cfg.inclination_deg < 0.0 || cfg.inclination_deg > 180.0)
    throw std::invalid_argument("walker: inclination out of [0, 180]");

  const int per_plane = cfg.total_sats / cfg.planes;
  const double raan_step = 2.0 * kPi / cfg.planes;
  const double in_plane_step = 2.0 * kPi / per_plane;
  const double inter_plane_phase = 2.0 * kPi * cfg.phasing / cfg.total_sats;

  std::vector<OrbitalElements> out;
  out.reserve(cfg.total_sats);
  for (int plane = 0; plane < cfg.planes; ++plane) {
    for (int slot = 0; slot < per_plane; ++slot) {
      OrbitalElements el;
      el.raan_rad = plane * raan_step;
      el.inclination_rad = deg2rad(cfg.inclination_deg);
      el.phase_at_epoch_rad = slot * in_plane_step + plane * inter_plane_phase;
      el.semi_major_axis_km = kEarthRadiusKm + cfg.altitude_km;
      out.push_back(el);
    }
  }
  return out;
}

SatelliteState propagate(const OrbitalElements& el, int satellite_id, double t_s) {
  const double a = el.semi_major_axis_km;
  const double n = std::sqrt(kEarthMuKm3S2 / (a * a * a));  // mean motion
  const double u = el.phase_at_epoch_rad + n * t_s;          // argument of latitude

  const double ci = std::cos(el.inclination_rad);
  const double si = std::sin(el.inclination_rad);
  const double co = std::cos(el.raan_rad);
  const double so = std::sin(el.raan_rad);

  // Orbital plane basis in the inertial frame: p along the ascending node,
  // q 90 degrees ahead in the direction of motion.
  const Eigen::Vector3d p(co, so, 0.0);
  const Eigen::Vector3d q(-so * ci, co * ci, si);

  const Eigen::Vector3d r_eci = a * (std::cos(u) * p + std::sin(u) * q);
  const Eigen::Vector3d v_eci = a * n * (-std::sin(u) * p + std::cos(u) * q);

  // Rotate into the Earth-fixed frame (Greenwich aligned with inertial x at t=0).
  const double g = kEarthRotationRadS * t_s;
  Eigen::Matrix3d rot;
  rot << std::cos(g), std::sin(g), 0.0,
        -std::sin(g), std::cos(g), 0.0,
         0.0, 0.0, 1.0;

  SatelliteState st;
  st.satellite_id = satellite_id;
  st.position_km = rot * r_eci;
  st.velocity_kms = rot * v_eci;
  st.time_s = t_s;
  return st;
}

Eigen::Vector3d geodetic_to_ecef(double lat_deg, double lon_deg, double alt_km) {
  if (std::abs(lat_deg) > 90.0)
    throw std::invalid_argument("geodetic_to_ecef: |latitude| > 90");
  const double r = kEarthRadiusKm + alt_km;
  const double lat = deg2rad(lat_deg);
  const double lon = deg2rad(lon_deg);
  return {r * std::cos(lat) * std::cos(lon),
          r * std::cos(lat) * std::sin(lon),
          r * std::sin(lat)};
}

LookGeometry look_angles(const SatelliteState& sat, const GroundUser& gu) {
  const Eigen::Vector3d r_gu =
      geodetic_to_ecef(gu.latitude_deg, gu.longitude_deg, gu.altitude_km);
  const Eigen::Vector3d d = sat.position_km - r_gu;

  LookGeometry out;
  out.range_km = d.norm();

  // GU local ENU frame on the sphere.
  const Eigen::Vector3d up = r_gu.normalized();
  const Eigen::Vector3d east =
      Eigen::Vector3d(-r_gu.y(), r_gu.x(), 0.0).stableNormalized();
  const Eigen::Vector3d north = up.cross(east);

  const Eigen::Vector3d du = d / out.range_km;
  out.elevation_deg = rad2deg(std::asin(std::clamp(du.dot(up), -1.0, 1.0)));
  out.azimuth_deg = rad2deg(std::atan2(du.dot(east), du.dot(north)));

  // Satellite UPA frame: z = boresight = nadir, x = motion direction
  // projected orthogonal to nadir, y completes the right-handed triad.
  const Eigen::Vector3d nadir = -sat.position_km.normalized();
  Eigen::Vector3d x_axis =
      (sat.velocity_kms - sat.velocity_kms.dot(nadir) * nadir).stableNormalized();
  const Eigen::Vector3d y_axis = nadir.cross(x_axis);

  const Eigen::Vector3d to_gu = (r_gu - sat.position_km).normalized();
  const double ux = to_gu.dot(x_axis);
  const double uy = to_gu.dot(y_axis);
  const double uz = to_gu.dot(nadir);
  out.sat_azimuth_rad = std::atan2(uy, ux);
  out.sat_elevation_rad = std::asin(std::clamp(uz, -1.0, 1.0));
  return out;
}

double coverage_angle(double altitude_km, double theta_min_deg) {
  if (altitude_km <= 0.0)
    throw std::invalid_argument("coverage_angle: altitude must be > 0");
  const double tm = deg2rad(theta_min_deg);
  const double phi =
      std::acos(kEarthRadiusKm / (kEarthRadiusKm + altitude_km) * std::cos(tm)) - tm;
  return rad2deg(phi);
}

VisibilityMap visibility(const std::vector<SatelliteState>& states,
                         const std::vector<GroundUser>& gus,
                         double theta_min_deg) {
  VisibilityMap map;
  map.sats_of_gu.resize(gus.size());
  map.gus_of_sat.resize(states.size());
  for (std::size_t g = 0; g < gus.size(); ++g) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      const LookGeometry lg = look_angles(states[s], gus[g]);
      if (lg.elevation_deg >= theta_min_deg) {  // closed threshold
        map.sats_of_gu[g].push_back(static_cast<int>(s));
        map.gus_of_sat[s].push_back(static_cast<int>(g));
      }
    }
  }
  for (std::size_t s = 0; s < states.size(); ++s)
    if (!map.gus_of_sat[s].empty()) map.active_sats.push_back(static_cast<int>(s));
  return map;
}

}  // namespace satnet
