// SPDX-License-Identifier: Apache-2.0
#include "satnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satnet {

double effective_gain(const ChannelSet& ch, int g, int s, int boresight) {
  const GroundUser& gu = ch.gus[g];
  if (s == boresight) return db2lin(gu.max_gain_dbi);
  const LinkChannel* to_s = ch.link(s, g);
  const LinkChannel* to_b = ch.link(boresight, g);
  if (to_s == nullptr || to_b == nullptr)
    throw std::invalid_argument("effective_gain: satellite not visible to GU");
  const double c = std::clamp(to_s->dir_from_gu.dot(to_b->dir_from_gu), -1.0, 1.0);
  return gu_antenna_gain(rad2deg(std::acos(c)), gu.gamma_3db_deg, gu.max_gain_dbi);
}

namespace {

// Complex receive amplitude at GU g from every established beam, combined
// coherently across g's visible satellites before power summation.
Eigen::VectorXcd beam_amplitudes(const ChannelSet& ch, const LinkMatrix& links,
                                 const BeamformerSet& bf, int g) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(ch.n_gus);
  const int bore = links.boresight[g];
  if (bore < 0) return amp;
  for (int s : ch.vis.sats_of_gu[g]) {
    const SatBeams& beams = bf.per_sat[s];
    if (beams.served.empty()) continue;
    const LinkChannel* lc = ch.link(s, g);
    const double weight =
        std::sqrt(effective_gain(ch, g, s, bore)) * lc->amplitude;
    const Eigen::RowVectorXcd proj =
        weight * (lc->small_scale.adjoint() * beams.F_HY);
    for (std::size_t c = 0; c < beams.served.size(); ++c)
      amp(beams.served[c]) += proj(static_cast<int>(c));
  }
  return amp;
}

}  // namespace

double sinr(const ChannelSet& ch, const LinkMatrix& links,
            const BeamformerSet& bf, int g) {
  if (links.boresight[g] < 0) return 0.0;  // unserved
  const Eigen::VectorXcd amp = beam_amplitudes(ch, links, bf, g);
  double interference = 0.0;
  for (int gp = 0; gp < ch.n_gus; ++gp)
    if (gp != g) interference += std::norm(amp(gp));
  return std::norm(amp(g)) / (interference + ch.noise_w);
}

double spectral_efficiency(double gamma_linear) {
  if (gamma_linear < 0.0)
    throw std::invalid_argument("spectral_efficiency: SINR must be >= 0");
  return std::log2(1.0 + gamma_linear);
}

SEReport total_se(const ChannelSet& ch, const LinkMatrix& links,
                  const BeamformerSet& bf, EvalCounters& counters) {
  ++counters.m_r;
  SEReport rep;
  rep.sinr = Eigen::VectorXd::Zero(ch.n_gus);
  rep.se = Eigen::VectorXd::Zero(ch.n_gus);
  rep.served.assign(ch.n_gus, false);
  for (int g = 0; g < ch.n_gus; ++g) {
    if (links.boresight[g] < 0) continue;
    rep.served[g] = true;
    rep.sinr(g) = sinr(ch, links, bf, g);
    rep.se(g) = spectral_efficiency(rep.sinr(g));
    rep.total += rep.se(g);
  }
  return rep;
}

}  // namespace satnet
