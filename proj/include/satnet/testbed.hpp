// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "satnet/channel.hpp"

namespace satnet {

// Deterministic synthetic instance for oracle comparisons and benchmarks:
// n_sats satellites near the zenith of a GU cluster, every GU covered.
struct SmallInstanceSpec {
  int n_sats = 3;
  int n_gus = 4;
  int elements_x = 4;
  int elements_y = 4;
  double altitude_km = 1200.0;
  double theta_min_deg = 10.0;
  LinkBudgetParams budget;
  FadingParams fading;
};

ChannelSet make_small_instance(const SmallInstanceSpec& spec, std::uint64_t seed);

}  // namespace satnet
