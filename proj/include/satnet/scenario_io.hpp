// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "satnet/experiment.hpp"

namespace satnet {

// Scenario files are INI-style text with sections [constellation], [gus],
// [link_budget], [fading], [schemes], [time].  Missing keys keep their
// defaults; unknown keys are an error.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);

// GU list CSV: gu_id,lat,lon,alt (header optional).
std::vector<GroundUser> load_gu_csv(const std::string& path, double max_gain_dbi,
                                    double hpbw_deg);

void write_results_csv(const ExperimentResult& result, std::ostream& out);
void write_links_csv(const ExperimentResult& result, std::ostream& out);
void write_summary_json(const ExperimentResult& result,
                        const std::vector<GroundUser>& gus, std::ostream& out);

void write_ephemeris_csv(const std::vector<OrbitalElements>& elements,
                         int samples, double spacing_s, double epoch_s,
                         std::ostream& out);

}  // namespace satnet
