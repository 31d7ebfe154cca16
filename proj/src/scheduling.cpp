// SPDX-License-Identifier: Apache-2.0
#include "satnet/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satnet {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::AU: return "AU";
    case Scheme::SHU: return "SHU";
    case Scheme::SJHU: return "S-JHU";
    case Scheme::MJHU: return "M-JHU";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "AU") return Scheme::AU;
  if (name == "SHU") return Scheme::SHU;
  if (name == "S-JHU") return Scheme::SJHU;
  if (name == "M-JHU") return Scheme::MJHU;
  throw std::invalid_argument("unknown scheme: " + name);
}

AnalogSet analog_vectors(const ChannelSet& ch, const Codebook& cb, int k) {
  AnalogSet fa;
  for (const auto& [key, lc] : ch.links)
    fa.w.emplace(key, analog_beamform(lc.small_scale, cb, k).w);
  return fa;
}

namespace {

// Row of the satellite channel matrix H_s for GU g, including the link gain
// that depends on g's current boresight.
Eigen::VectorXcd weighted_channel(const ChannelSet& ch, int s, int g, int bore) {
  const LinkChannel* lc = ch.link(s, g);
  return std::sqrt(effective_gain(ch, g, s, bore)) * lc->amplitude *
         lc->small_scale;
}

std::vector<int> served_of(const LinkMatrix& links, int s) {
  std::vector<int> served;
  for (int g = 0; g < links.alpha.cols(); ++g)
    if (links.alpha(s, g) == 1) served.push_back(g);
  return served;
}

Eigen::MatrixXcd analog_matrix(const ChannelSet& ch, const AnalogSet& fa, int s,
                               const std::vector<int>& served) {
  Eigen::MatrixXcd f(ch.n_elements, served.size());
  for (std::size_t c = 0; c < served.size(); ++c) f.col(c) = fa.at(s, served[c]);
  return f;
}

// ZF(beta_opt) + power scaling for one satellite under the given links.
SatBeams hybrid_for(const ChannelSet& ch, const AnalogSet& fa,
                    const LinkMatrix& links, int s,
                    const SchedulingParams& params, EvalCounters& counters) {
  ++counters.m_hy;
  SatBeams beams;
  beams.served = served_of(links, s);
  beams.F_A = analog_matrix(ch, fa, s, beams.served);
  const int nu_s = static_cast<int>(beams.served.size());

  Eigen::MatrixXcd h(nu_s, ch.n_elements);
  for (int r = 0; r < nu_s; ++r) {
    const int g = beams.served[r];
    h.row(r) = weighted_channel(ch, s, g, links.boresight[g]).adjoint();
  }
  beams.beta = beta_opt(nu_s, ch.noise_w, params.power_w);
  beams.F_D = regularized_zf(h * beams.F_A, beams.beta);
  const ScaledBeams scaled = power_scale(beams.F_A, beams.F_D, params.power_w);
  beams.eta = scaled.eta;
  beams.F_HY = scaled.F;
  return beams;
}

BeamformerSet analog_beamformers(const ChannelSet& ch, const AnalogSet& fa,
                                 const LinkMatrix& links, bool scaled,
                                 double power_w) {
  BeamformerSet bf;
  bf.per_sat.resize(ch.n_sats);
  for (int s = 0; s < ch.n_sats; ++s) {
    SatBeams& beams = bf.per_sat[s];
    beams.served = served_of(links, s);
    if (beams.served.empty()) continue;
    beams.F_A = analog_matrix(ch, fa, s, beams.served);
    beams.F_D = Eigen::MatrixXcd::Identity(beams.served.size(), beams.served.size());
    if (scaled) {
      const ScaledBeams sc = analog_only_scale(beams.F_A, power_w);
      beams.eta = sc.eta;
      beams.F_HY = sc.F;
    } else {
      beams.F_HY = beams.F_A;
    }
  }
  return bf;
}

struct Candidate {
  int s = -1;
  int g = -1;
  double delta = 0.0;
  bool valid = false;
};

void erase_value(std::vector<int>& v, int x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
}

// Trial link matrix for candidate (s, g): adds the link and, when g is not
// yet connected, provisionally aims g's antenna at s.
LinkMatrix with_link(const LinkMatrix& links, int s, int g) {
  LinkMatrix trial = links;
  trial.alpha(s, g) = 1;
  if (trial.boresight[g] < 0) trial.boresight[g] = s;
  return trial;
}

}  // namespace

BeamformerSet hybrid_beamformers(const ChannelSet& ch, const AnalogSet& fa,
                                 const LinkMatrix& links,
                                 const SchedulingParams& params,
                                 EvalCounters& counters) {
  BeamformerSet bf;
  bf.per_sat.resize(ch.n_sats);
  for (int s = 0; s < ch.n_sats; ++s)
    if (links.row_sum(s) > 0)
      bf.per_sat[s] = hybrid_for(ch, fa, links, s, params, counters);
  return bf;
}

namespace {

// Connect every GU with exactly one visible satellite (Algorithm 2 phase 1).
void connect_forced(const ChannelSet& ch, SchedulerState& st, int n_b) {
  for (int g = 0; g < ch.n_gus; ++g) {
    if (ch.vis.sats_of_gu[g].size() != 1) continue;
    const int s = ch.vis.sats_of_gu[g].front();
    if (st.links.row_sum(s) < n_b) {
      st.links.alpha(s, g) = 1;
      st.links.boresight[g] = s;
      erase_value(st.unserved, g);
    } else {
      st.infeasible = true;  // C2 takes priority over C3
    }
  }
}

SchedulerState init_state(const ChannelSet& ch) {
  SchedulerState st;
  st.links = LinkMatrix::empty(ch.n_sats, ch.n_gus);
  st.spare_sats.resize(ch.n_sats);
  for (int s = 0; s < ch.n_sats; ++s) st.spare_sats[s] = s;
  st.unserved.resize(ch.n_gus);
  for (int g = 0; g < ch.n_gus; ++g) st.unserved[g] = g;
  return st;
}

}  // namespace

SchedulerState schedule_single(const ChannelSet& ch, const AnalogSet& fa,
                               const SchedulingParams& params,
                               EvalCounters& counters) {
  SchedulerState st = init_state(ch);
  connect_forced(ch, st, params.n_b);

  auto evaluate = [&](const LinkMatrix& l) {
    const BeamformerSet bf = analog_beamformers(ch, fa, l, false, params.power_w);
    return total_se(ch, l, bf, counters).total;
  };
  double r_cur = evaluate(st.links);

  while (!st.unserved.empty()) {
    Candidate best;
    for (int s : st.spare_sats) {
      for (int g : st.unserved) {
        if (ch.link(s, g) == nullptr) continue;
        const double delta = evaluate(with_link(st.links, s, g)) - r_cur;
        // Strict comparison keeps the lowest (s, g) on ties.
        if (!best.valid || delta > best.delta) best = {s, g, delta, true};
      }
    }
    if (!best.valid) {
      st.infeasible = true;  // no feasible candidate left
      break;
    }
    if (st.links.row_sum(best.s) < params.n_b) {
      st.links.alpha(best.s, best.g) = 1;
      st.links.boresight[best.g] = best.s;
      erase_value(st.unserved, best.g);
      r_cur += best.delta;
    } else {
      erase_value(st.spare_sats, best.s);
    }
  }
  return st;
}

SchedulerState schedule_multi(const ChannelSet& ch, const AnalogSet& fa,
                              SchedulerState st, const SchedulingParams& params,
                              EvalCounters& counters) {
  auto evaluate = [&](const LinkMatrix& l) {
    const BeamformerSet bf = analog_beamformers(ch, fa, l, false, params.power_w);
    return total_se(ch, l, bf, counters).total;
  };
  double r_cur = evaluate(st.links);

  while (!st.spare_sats.empty()) {
    Candidate best;
    for (int s : st.spare_sats) {
      for (int g = 0; g < ch.n_gus; ++g) {
        if (st.links.alpha(s, g) == 1 || ch.link(s, g) == nullptr) continue;
        const double delta = evaluate(with_link(st.links, s, g)) - r_cur;
        if (!best.valid || delta > best.delta) best = {s, g, delta, true};
      }
    }
    if (!best.valid || best.delta <= 0.0) break;
    if (st.links.row_sum(best.s) < params.n_b) {
      st.links.alpha(best.s, best.g) = 1;
      if (st.links.boresight[best.g] < 0) st.links.boresight[best.g] = best.s;
      r_cur += best.delta;
    } else {
      erase_value(st.spare_sats, best.s);
    }
  }
  return st;
}

namespace {

// Shared JHU greedy loop.  The beamformer cache holds the hybrid matrices
// for the current links; a candidate only perturbs satellite s, so one
// recomputation per Delta-R evaluation keeps M_HY within the complexity
// envelope while matching full recomputation exactly.
class JhuEngine {
 public:
  JhuEngine(const ChannelSet& ch, const AnalogSet& fa,
            const SchedulingParams& params, EvalCounters& counters)
      : ch_(ch), fa_(fa), params_(params), counters_(counters) {
    cache_.per_sat.resize(ch.n_sats);
  }

  void rebuild(const LinkMatrix& links) {
    for (int s = 0; s < ch_.n_sats; ++s)
      if (links.row_sum(s) > 0)
        cache_.per_sat[s] = hybrid_for(ch_, fa_, links, s, params_, counters_);
      else
        cache_.per_sat[s] = SatBeams{};
    r_cur_ = links_total(links, cache_);
  }

  double delta_r(const LinkMatrix& trial, int s) {
    BeamformerSet bf = cache_;
    bf.per_sat[s] = hybrid_for(ch_, fa_, trial, s, params_, counters_);
    return links_total(trial, bf) - r_cur_;
  }

  void accept(const LinkMatrix& links, int s) {
    cache_.per_sat[s] = hybrid_for(ch_, fa_, links, s, params_, counters_);
    r_cur_ = links_total(links, cache_);
  }

  double current() const { return r_cur_; }
  const BeamformerSet& beams() const { return cache_; }

 private:
  double links_total(const LinkMatrix& links, const BeamformerSet& bf) {
    return total_se(ch_, links, bf, counters_).total;
  }

  const ChannelSet& ch_;
  const AnalogSet& fa_;
  const SchedulingParams& params_;
  EvalCounters& counters_;
  BeamformerSet cache_;
  double r_cur_ = 0.0;
};

}  // namespace

SchemeResult jhu(const ChannelSet& ch, const AnalogSet& fa,
                 const SchedulingParams& params, bool multi) {
  SchemeResult res;
  res.scheme = multi ? Scheme::MJHU : Scheme::SJHU;

  SchedulerState st = init_state(ch);
  connect_forced(ch, st, params.n_b);

  JhuEngine engine(ch, fa, params, res.counters);
  engine.rebuild(st.links);

  // Single-connection procedure.
  while (!st.unserved.empty()) {
    Candidate best;
    for (int s : st.spare_sats) {
      for (int g : st.unserved) {
        if (ch.link(s, g) == nullptr) continue;
        const double delta = engine.delta_r(with_link(st.links, s, g), s);
        if (!best.valid || delta > best.delta) best = {s, g, delta, true};
      }
    }
    if (!best.valid) {
      st.infeasible = true;
      break;
    }
    if (st.links.row_sum(best.s) < params.n_b) {
      st.links.alpha(best.s, best.g) = 1;
      st.links.boresight[best.g] = best.s;
      erase_value(st.unserved, best.g);
      engine.accept(st.links, best.s);
    } else {
      erase_value(st.spare_sats, best.s);
    }
  }

  if (multi) {
    while (!st.spare_sats.empty()) {
      Candidate best;
      for (int s : st.spare_sats) {
        for (int g = 0; g < ch.n_gus; ++g) {
          if (st.links.alpha(s, g) == 1 || ch.link(s, g) == nullptr) continue;
          const double delta = engine.delta_r(with_link(st.links, s, g), s);
          if (!best.valid || delta > best.delta) best = {s, g, delta, true};
        }
      }
      if (!best.valid || best.delta <= 0.0) break;
      if (st.links.row_sum(best.s) < params.n_b) {
        st.links.alpha(best.s, best.g) = 1;
        if (st.links.boresight[best.g] < 0) st.links.boresight[best.g] = best.s;
        engine.accept(st.links, best.s);
      } else {
        erase_value(st.spare_sats, best.s);
      }
    }
  }

  res.links = st.links;
  res.infeasible = st.infeasible;
  res.beams = engine.beams();
  res.report = total_se(ch, res.links, res.beams, res.counters);
  return res;
}

SchemeResult run_scheme(Scheme scheme, const ChannelSet& ch, const Codebook& cb,
                        const SchedulingParams& params) {
  SchemeResult res;
  res.scheme = scheme;
  const AnalogSet fa = analog_vectors(ch, cb, params.codebook_k);

  switch (scheme) {
    case Scheme::AU: {
      SchedulerState st = schedule_single(ch, fa, params, res.counters);
      res.links = st.links;
      res.infeasible = st.infeasible;
      res.beams = analog_beamformers(ch, fa, res.links, true, params.power_w);
      break;
    }
    case Scheme::SHU: {
      SchedulerState st = schedule_single(ch, fa, params, res.counters);
      res.links = st.links;
      res.infeasible = st.infeasible;
      res.beams = hybrid_beamformers(ch, fa, res.links, params, res.counters);
      break;
    }
    case Scheme::SJHU:
      return jhu(ch, fa, params, false);
    case Scheme::MJHU:
      return jhu(ch, fa, params, true);
  }
  res.report = total_se(ch, res.links, res.beams, res.counters);
  return res;
}

std::pair<LinkMatrix, double> exhaustive_oracle(const ChannelSet& ch,
                                                const AnalogSet& fa,
                                                const SchedulingParams& params,
                                                bool single_only, BeamRule rule) {
  if (ch.n_sats * ch.n_gus > 12)
    throw std::invalid_argument("exhaustive_oracle: instance above N_s*N_u <= 12 cap");

  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < ch.n_sats; ++s)
    for (int g = 0; g < ch.n_gus; ++g)
      if (ch.link(s, g) != nullptr) pairs.emplace_back(s, g);

  EvalCounters scratch;
  LinkMatrix best_links = LinkMatrix::empty(ch.n_sats, ch.n_gus);
  double best_r = 0.0;

  const std::size_t n_subsets = std::size_t{1} << pairs.size();
  for (std::size_t mask = 1; mask < n_subsets; ++mask) {
    LinkMatrix links = LinkMatrix::empty(ch.n_sats, ch.n_gus);
    bool ok = true;
    for (std::size_t i = 0; i < pairs.size() && ok; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      const auto [s, g] = pairs[i];
      links.alpha(s, g) = 1;
      if (links.row_sum(s) > params.n_b) ok = false;                      // C2
      if (single_only && links.alpha.col(g).sum() > 1) ok = false;
      // Boresight: lowest-id serving satellite.
      if (links.boresight[g] < 0 || s < links.boresight[g])
        links.boresight[g] = s;
    }
    if (!ok) continue;

    BeamformerSet bf = rule == BeamRule::Hybrid
                           ? hybrid_beamformers(ch, fa, links, params, scratch)
                           : analog_beamformers(ch, fa, links, true, params.power_w);
    const double r = total_se(ch, links, bf, scratch).total;
    if (r > best_r) {
      best_r = r;
      best_links = links;
    }
  }
  return {best_links, best_r};
}

}  // namespace satnet
