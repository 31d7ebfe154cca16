// SPDX-License-Identifier: Apache-2.0
#include "satnet/scenario_io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace satnet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

[[noreturn]] void bad_key(const std::string& section, const std::string& key) {
  throw std::runtime_error("scenario: unknown key '" + key + "' in [" + section + "]");
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("scenario: malformed section at line " +
                                 std::to_string(lineno));
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("scenario: expected key = value at line " +
                               std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto num = [&] { return std::stod(value); };
    const auto integer = [&] { return std::stoi(value); };

    if (section == "constellation") {
      if (key == "total_sats") cfg.constellation.total_sats = integer();
      else if (key == "planes") cfg.constellation.planes = integer();
      else if (key == "phasing") cfg.constellation.phasing = integer();
      else if (key == "inclination_deg") cfg.constellation.inclination_deg = num();
      else if (key == "altitude_km") cfg.constellation.altitude_km = num();
      else if (key == "epoch_s") cfg.constellation.epoch_s = num();
      else if (key == "sub_arrays_x") cfg.sub_arrays_x = integer();
      else if (key == "sub_arrays_y") cfg.sub_arrays_y = integer();
      else if (key == "elements_x") cfg.elements_x = integer();
      else if (key == "elements_y") cfg.elements_y = integer();
      else if (key == "power_w") cfg.power_w = num();
      else if (key == "codebook_k") cfg.codebook_k = integer();
      else if (key == "theta_min_deg") cfg.theta_min_deg = num();
      else bad_key(section, key);
    } else if (section == "gus") {
      if (key == "count") cfg.gus.count = integer();
      else if (key == "lat_min_deg") cfg.gus.lat_min_deg = num();
      else if (key == "lat_max_deg") cfg.gus.lat_max_deg = num();
      else if (key == "lon_min_deg") cfg.gus.lon_min_deg = num();
      else if (key == "lon_max_deg") cfg.gus.lon_max_deg = num();
      else if (key == "min_separation_km") cfg.gus.min_separation_km = num();
      else if (key == "max_gain_dbi") cfg.gus.max_gain_dbi = num();
      else if (key == "hpbw_deg") cfg.gus.hpbw_deg = num();
      else if (key == "file") cfg.gus.csv_path = value;
      else bad_key(section, key);
    } else if (section == "link_budget") {
      if (key == "carrier_ghz") cfg.budget.carrier_ghz = num();
      else if (key == "bandwidth_hz") cfg.budget.bandwidth_hz = num();
      else if (key == "satellite_gain_dbi") cfg.budget.satellite_gain_dbi = num();
      else if (key == "noise_temp_dbk") cfg.budget.noise_temp_dbk = num();
      else if (key == "shadow_std_db") cfg.budget.shadow_std_db = num();
      else if (key == "zenith_gas_db") cfg.budget.zenith_gas_db = num();
      else if (key == "scint_std_db") cfg.budget.scint_std_db = num();
      else if (key == "elevation_floor_deg") cfg.budget.elevation_floor_deg = num();
      else bad_key(section, key);
    } else if (section == "fading") {
      if (key == "clusters") cfg.fading.clusters = integer();
      else if (key == "rays_per_cluster") cfg.fading.rays_per_cluster = integer();
      else if (key == "direct_mean_db") cfg.fading.direct_mean_db = num();
      else if (key == "direct_std_db") cfg.fading.direct_std_db = num();
      else if (key == "multipath_power") cfg.fading.multipath_power = num();
      else if (key == "angular_spread_deg") cfg.fading.angular_spread_deg = num();
      else bad_key(section, key);
    } else if (section == "schemes") {
      if (key == "list") {
        cfg.schemes.clear();
        for (const std::string& name : split(value, ','))
          cfg.schemes.push_back(scheme_from_name(name));
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else {
        bad_key(section, key);
      }
    } else if (section == "time") {
      if (key == "samples") cfg.samples = integer();
      else if (key == "spacing_s") cfg.spacing_s = num();
      else bad_key(section, key);
    } else {
      throw std::runtime_error("scenario: unknown section [" + section + "]");
    }
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  ScenarioConfig cfg = parse_scenario(in);
  if (!cfg.gus.csv_path.empty()) {
    std::filesystem::path p(cfg.gus.csv_path);
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    cfg.gus.explicit_list =
        load_gu_csv(p.string(), cfg.gus.max_gain_dbi, cfg.gus.hpbw_deg);
  }
  return cfg;
}

std::vector<GroundUser> load_gu_csv(const std::string& path, double max_gain_dbi,
                                    double hpbw_deg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open GU list: " + path);
  std::vector<GroundUser> gus;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.rfind("gu_id", 0) == 0) continue;
    const auto fields = split(line, ',');
    if (fields.size() < 3)
      throw std::runtime_error("GU list: expected gu_id,lat,lon[,alt]: " + line);
    GroundUser gu;
    gu.gu_id = std::stoi(fields[0]);
    gu.latitude_deg = std::stod(fields[1]);
    gu.longitude_deg = std::stod(fields[2]);
    gu.altitude_km = fields.size() > 3 ? std::stod(fields[3]) : 0.0;
    gu.max_gain_dbi = max_gain_dbi;
    gu.gamma_3db_deg = hpbw_deg / 2.0;
    gus.push_back(gu);
  }
  return gus;
}

void write_results_csv(const ExperimentResult& result, std::ostream& out) {
  out << "sample,scheme,gu_id,sinr_db,se_bpshz,served,boresight_sat\n";
  out << std::setprecision(12);
  for (const SampleResult& sr : result.samples)
    for (const SchemeSampleResult& sc : sr.schemes)
      for (std::size_t g = 0; g < sc.gus.size(); ++g) {
        const GuSampleResult& gr = sc.gus[g];
        out << sr.sample << ',' << scheme_name(sc.scheme) << ',' << g << ','
            << gr.sinr_db << ',' << gr.se << ',' << (gr.served ? 1 : 0) << ','
            << gr.boresight_sat << '\n';
      }
}

void write_links_csv(const ExperimentResult& result, std::ostream& out) {
  out << "sample,scheme,sat_id,gu_id\n";
  for (const SampleResult& sr : result.samples)
    for (const SchemeSampleResult& sc : sr.schemes)
      for (const auto& [s, g] : sc.links)
        out << sr.sample << ',' << scheme_name(sc.scheme) << ',' << s << ','
            << g << '\n';
}

void write_summary_json(const ExperimentResult& result,
                        const std::vector<GroundUser>& gus, std::ostream& out) {
  nlohmann::json j;
  j["seed"] = result.config.seed;
  j["samples"] = result.config.samples;
  j["n_gus"] = gus.size();
  j["constellation"] = {
      {"total_sats", result.config.constellation.total_sats},
      {"planes", result.config.constellation.planes},
      {"phasing", result.config.constellation.phasing},
      {"inclination_deg", result.config.constellation.inclination_deg},
      {"altitude_km", result.config.constellation.altitude_km}};
  j["coverage_ratio"] = result.coverage_ratio;
  for (Scheme scheme : result.config.schemes) {
    nlohmann::json s;
    s["mean_total_se_bpshz"] = result.mean_total_se.at(scheme);
    s["service_ratio"] = result.service_ratio.at(scheme);
    std::int64_t m_r = 0, m_hy = 0;
    bool infeasible = false;
    for (const SampleResult& sr : result.samples)
      for (const SchemeSampleResult& sc : sr.schemes)
        if (sc.scheme == scheme) {
          m_r += sc.counters.m_r;
          m_hy += sc.counters.m_hy;
          infeasible = infeasible || sc.infeasible;
        }
    s["m_r"] = m_r;
    s["m_hy"] = m_hy;
    s["any_infeasible"] = infeasible;
    j["schemes"][scheme_name(scheme)] = s;
  }
  out << j.dump(2) << '\n';
}

void write_ephemeris_csv(const std::vector<OrbitalElements>& elements,
                         int samples, double spacing_s, double epoch_s,
                         std::ostream& out) {
  out << "sample,time_s,sat_id,x_km,y_km,z_km\n";
  out << std::setprecision(12);
  for (int k = 0; k < samples; ++k) {
    const double t = epoch_s + k * spacing_s;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const SatelliteState st = propagate(elements[i], static_cast<int>(i), t);
      out << k << ',' << t << ',' << st.satellite_id << ','
          << st.position_km.x() << ',' << st.position_km.y() << ','
          << st.position_km.z() << '\n';
    }
  }
}

}  // namespace satnet
