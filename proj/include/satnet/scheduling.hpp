// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "satnet/beamforming.hpp"
#include "satnet/channel.hpp"
#include "satnet/metrics.hpp"

namespace satnet {

enum class Scheme { AU, SHU, SJHU, MJHU };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SchedulingParams {
  int n_b = 32;          // spot beams per satellite (C2)
  double power_w = 80.0; // P_T (C1)
  int codebook_k = 4;    // K best codewords in Algorithm 1
};

// Analog beamforming vectors for every visible (s, g) pair.  They depend on
// the small-scale channel only; scalar link gains drop out of Algorithm 1.
struct AnalogSet {
  std::unordered_map<std::int64_t, Eigen::VectorXcd> w;
  const Eigen::VectorXcd& at(int s, int g) const {
    return w.at(ChannelSet::key(s, g));
  }
};

AnalogSet analog_vectors(const ChannelSet& ch, const Codebook& cb, int k);

struct SchedulerState {
  LinkMatrix links;
  std::vector<int> spare_sats;  // S: satellites not yet removed, sorted
  std::vector<int> unserved;    // G_n, sorted
  // Set when C2 and C3 conflict and some GU stays unconnected.
  bool infeasible = false;
};

struct SchemeResult {
  Scheme scheme = Scheme::AU;
  LinkMatrix links;
  BeamformerSet beams;
  SEReport report;
  EvalCounters counters;
  bool infeasible = false;
};

// Greedy single-connection scheduling with a fixed per-link beamforming
// vector (the analog vectors); used by AU and SHU.
SchedulerState schedule_single(const ChannelSet& ch, const AnalogSet& fa,
                               const SchedulingParams& params,
                               EvalCounters& counters);

// Multi-connection extension on top of a single-connection state; stops
// when the best increment is non-positive or no spare satellite remains.
SchedulerState schedule_multi(const ChannelSet& ch, const AnalogSet& fa,
                              SchedulerState state,
                              const SchedulingParams& params,
                              EvalCounters& counters);

// Joint hybrid beamforming and user scheduling: every increment evaluation
// recomputes the affected satellite's digital beamformer.
SchemeResult jhu(const ChannelSet& ch, const AnalogSet& fa,
                 const SchedulingParams& params, bool multi);

SchemeResult run_scheme(Scheme scheme, const ChannelSet& ch, const Codebook& cb,
                        const SchedulingParams& params);

enum class BeamRule { Analog, Hybrid };

// Brute-force enumeration of every feasible link matrix; test-scale only
// (rejects N_s * N_u > 12).
std::pair<LinkMatrix, double> exhaustive_oracle(const ChannelSet& ch,
                                                const AnalogSet& fa,
                                                const SchedulingParams& params,
                                                bool single_only,
                                                BeamRule rule = BeamRule::Hybrid);

// Hybrid beamformers (regularized ZF at beta_opt + power scaling) for every
// link-bearing satellite of L.  Exposed for the SHU pipeline and tests.
BeamformerSet hybrid_beamformers(const ChannelSet& ch, const AnalogSet& fa,
                                 const LinkMatrix& links,
                                 const SchedulingParams& params,
                                 EvalCounters& counters);

}  // namespace satnet
