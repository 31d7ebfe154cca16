// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "satnet/constants.hpp"

namespace satnet {

// Walker delta constellation: T satellites in P evenly spaced circular
// planes, inter-plane phasing 2*pi*F/T.
struct ConstellationConfig {
  int total_sats = 48;       // T
  int planes = 6;            // P
  int phasing = 1;           // F
  double inclination_deg = 45.0;
  double altitude_km = 1200.0;
  double epoch_s = 0.0;
};

struct OrbitalElements {
  double raan_rad = 0.0;
  double inclination_rad = 0.0;
  double phase_at_epoch_rad = 0.0;  // argument of latitude at t = 0
  double semi_major_axis_km = kEarthRadiusKm + 1200.0;
};

struct SatelliteState {
  int satellite_id = -1;
  Eigen::Vector3d position_km = Eigen::Vector3d::Zero();  // Earth-fixed
  // Inertial velocity expressed in the Earth-fixed axes at this instant;
  // defines the UPA x-axis (direction of motion).
  Eigen::Vector3d velocity_kms = Eigen::Vector3d::Zero();
  double time_s = 0.0;
};

struct GroundUser {
  int gu_id = -1;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double altitude_km = 0.0;
  double max_gain_dbi = 40.0;   // G_max
  double gamma_3db_deg = 0.85;  // half of the HPBW
};

// Look geometry of one satellite-GU pair.  Elevation/azimuth are in the GU's
// local ENU frame; (sat_azimuth, sat_elevation) locate the GU direction in
// the satellite UPA frame (x = motion direction, z = boresight = nadir).
struct LookGeometry {
  double elevation_deg = 0.0;
  double azimuth_deg = 0.0;
  double range_km = 0.0;
  double sat_azimuth_rad = 0.0;    // phi_sg
  double sat_elevation_rad = 0.0;  // theta_sg
};

struct VisibilityMap {
  // V_g: indices into the satellite state list, sorted ascending.
  std::vector<std::vector<int>> sats_of_gu;
  // Candidate GUs per satellite (same geometry, transposed view).
  std::vector<std::vector<int>> gus_of_sat;
  // Satellites visible to at least one GU.
  std::vector<int> active_sats;
};

std::vector<OrbitalElements> generate_walker(const ConstellationConfig& config);

SatelliteState propagate(const OrbitalElements& elements, int satellite_id,
                         double t_s);

Eigen::Vector3d geodetic_to_ecef(double lat_deg, double lon_deg, double alt_km);

LookGeometry look_angles(const SatelliteState& sat, const GroundUser& gu);

// Half of the ground-centred coverage cone of one satellite, in degrees.
double coverage_angle(double altitude_km, double theta_min_deg);

VisibilityMap visibility(const std::vector<SatelliteState>& states,
                         const std::vector<GroundUser>& gus,
                         double theta_min_deg);

}  // namespace satnet
