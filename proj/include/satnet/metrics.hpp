// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "satnet/beamforming.hpp"
#include "satnet/channel.hpp"

namespace satnet {

// Binary link indicator matrix alpha_sg plus the boresight map (the
// satellite each connected GU aims its antenna at).
struct LinkMatrix {
  Eigen::MatrixXi alpha;       // N_s x N_u, entries in {0, 1}
  std::vector<int> boresight;  // per GU; -1 when unserved

  static LinkMatrix empty(int n_sats, int n_gus) {
    LinkMatrix l;
    l.alpha = Eigen::MatrixXi::Zero(n_sats, n_gus);
    l.boresight.assign(n_gus, -1);
    return l;
  }
  int row_sum(int s) const { return alpha.row(s).sum(); }
};

struct SEReport {
  Eigen::VectorXd sinr;      // linear, per GU
  Eigen::VectorXd se;        // bps/Hz, per GU
  double total = 0.0;        // sum over served GUs
  std::vector<bool> served;
};

// Number of total-SE evaluations (M_R) and hybrid-beamformer computations
// (M_HY); owned by the scheduler driving the evaluations.
struct EvalCounters {
  std::int64_t m_r = 0;
  std::int64_t m_hy = 0;
};

// GU-side gain of the (s, g) link when g's antenna aims at `boresight`.
double effective_gain(const ChannelSet& ch, int g, int s, int boresight);

double sinr(const ChannelSet& ch, const LinkMatrix& links,
            const BeamformerSet& bf, int g);

double spectral_efficiency(double gamma_linear);

SEReport total_se(const ChannelSet& ch, const LinkMatrix& links,
                  const BeamformerSet& bf, EvalCounters& counters);

}  // namespace satnet
