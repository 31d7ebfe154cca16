// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>

#include "satnet/scheduling.hpp"
#include "satnet/testbed.hpp"

using namespace satnet;
using Cd = std::complex<double>;

namespace {

// Scalar-antenna network built by hand; mask(s, g) == 0 removes the link
// from the visibility set.
ChannelSet masked_scalar_set(const Eigen::MatrixXcd& h,
                             const Eigen::MatrixXi& mask, double noise_w) {
  ChannelSet ch;
  ch.n_sats = static_cast<int>(h.rows());
  ch.n_gus = static_cast<int>(h.cols());
  ch.n_elements = 1;
  ch.noise_w = noise_w;
  ch.gus.resize(ch.n_gus);
  ch.vis.sats_of_gu.resize(ch.n_gus);
  ch.vis.gus_of_sat.resize(ch.n_sats);
  for (int g = 0; g < ch.n_gus; ++g) {
    ch.gus[g].gu_id = g;
    ch.gus[g].max_gain_dbi = 0.0;
  }
  for (int s = 0; s < ch.n_sats; ++s) {
    bool active = false;
    for (int g = 0; g < ch.n_gus; ++g) {
      if (mask(s, g) == 0) continue;
      active = true;
      ch.vis.sats_of_gu[g].push_back(s);
      ch.vis.gus_of_sat[s].push_back(g);
      LinkChannel lc;
      lc.small_scale = Eigen::VectorXcd::Constant(1, h(s, g));
      lc.amplitude = 1.0;
      lc.dir_from_gu = Eigen::Vector3d::UnitZ();
      ch.links.emplace(ChannelSet::key(s, g), std::move(lc));
    }
    if (active) ch.vis.active_sats.push_back(s);
  }
  return ch;
}

ChannelSet scalar_set(const Eigen::MatrixXcd& h, double noise_w) {
  return masked_scalar_set(
      h, Eigen::MatrixXi::Ones(h.rows(), h.cols()), noise_w);
}

void audit_constraints(const ChannelSet& ch, const SchemeResult& res,
                       const SchedulingParams& params, bool single_only) {
  for (int s = 0; s < ch.n_sats; ++s) {
    CHECK(res.links.row_sum(s) <= params.n_b);  // C2
    for (int g = 0; g < ch.n_gus; ++g) {
      const int a = res.links.alpha(s, g);
      CHECK((a == 0 || a == 1));
      if (a == 1) CHECK(ch.link(s, g) != nullptr);  // only visible pairs
    }
  }
  for (int g = 0; g < ch.n_gus; ++g) {
    const int conns = res.links.alpha.col(g).sum();
    if (single_only) CHECK(conns <= 1);
    if (!res.infeasible) CHECK(conns >= 1);  // C3
    if (conns > 0) {
      const int bore = res.links.boresight[g];
      REQUIRE(bore >= 0);
      CHECK(res.links.alpha(bore, g) == 1);  // boresight is a serving sat
    }
  }
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (Scheme s : {Scheme::AU, Scheme::SHU, Scheme::SJHU, Scheme::MJHU})
    CHECK(scheme_from_name(scheme_name(s)) == s);
  CHECK(scheme_name(Scheme::SJHU) == "S-JHU");
  CHECK_THROWS(scheme_from_name("bogus"));
}

TEST_CASE("analog_vectors covers every visible pair with unit-norm vectors") {
  SmallInstanceSpec spec;
  const auto ch = make_small_instance(spec, 12);
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  const auto fa = analog_vectors(ch, cb, 4);
  CHECK(fa.w.size() == ch.links.size());
  for (const auto& [key, w] : fa.w)
    CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single-connection scheduling serves every GU on one satellite") {
  Eigen::MatrixXcd h(1, 2);
  h << Cd(1, 0), Cd(0.4, 0.3);
  const auto ch = scalar_set(h, 0.1);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  EvalCounters counters;
  const auto st = schedule_single(ch, fa, params, counters);
  CHECK_FALSE(st.infeasible);
  CHECK(st.links.alpha.sum() == 2);
  CHECK(st.links.boresight == std::vector<int>{0, 0});
  CHECK(st.unserved.empty());
  CHECK(counters.m_r > 0);
}

TEST_CASE("single-visibility GUs are connected first") {
  // GU0 only sees satellite 1; GU1 sees both and has a stronger channel
  // toward satellite 1 as well.  The forced phase still claims (1, 0).
  Eigen::MatrixXcd h(2, 2);
  h << Cd(0, 0), Cd(0.2, 0), Cd(1, 0), Cd(5, 0);
  Eigen::MatrixXi mask(2, 2);
  mask << 0, 1, 1, 1;
  const auto ch = masked_scalar_set(h, mask, 0.1);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  EvalCounters counters;
  const auto st = schedule_single(ch, fa, params, counters);
  CHECK(st.links.alpha(1, 0) == 1);
  CHECK(st.links.boresight[0] == 1);
  CHECK(st.links.alpha.col(1).sum() == 1);
}

TEST_CASE("beam budget makes over-subscribed satellites infeasible") {
  Eigen::MatrixXcd h(1, 3);
  h << Cd(1, 0), Cd(0.8, 0), Cd(0.6, 0);
  const auto ch = scalar_set(h, 0.1);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  params.n_b = 2;
  EvalCounters counters;
  const auto st = schedule_single(ch, fa, params, counters);
  CHECK(st.infeasible);
  CHECK(st.links.alpha.sum() == 2);
  CHECK(st.unserved.size() == 1);
}

TEST_CASE("greedy trace matches a hand-computed pick order") {
  // Two satellites, two GUs, orthogonal-ish scalars.  The first greedy pick
  // maximizes log2(1 + |h|^2 / noise): pair (0, 0) with |h| = 2.
  Eigen::MatrixXcd h(2, 2);
  h << Cd(2, 0), Cd(0.1, 0), Cd(0.1, 0), Cd(1, 0);
  const auto ch = scalar_set(h, 1.0);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  EvalCounters counters;
  const auto st = schedule_single(ch, fa, params, counters);
  CHECK(st.links.alpha(0, 0) == 1);
  CHECK(st.links.alpha(1, 1) == 1);
  CHECK(st.links.alpha.sum() == 2);
}

TEST_CASE("multi-connection adds a coherent second link when it helps") {
  // Both satellites have an in-phase unit channel to the only GU: the
  // second link doubles the amplitude (x4 power) and must be accepted.
  Eigen::MatrixXcd h(2, 1);
  h << Cd(1, 0), Cd(1, 0);
  const auto ch = scalar_set(h, 1.0);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  EvalCounters counters;
  auto st = schedule_single(ch, fa, params, counters);
  REQUIRE(st.links.alpha.sum() == 1);
  st = schedule_multi(ch, fa, st, params, counters);
  CHECK(st.links.alpha.sum() == 2);
  CHECK(st.links.alpha.col(0).sum() == 2);
}

TEST_CASE("multi-connection declines links that create interference") {
  // Near-orthogonal channels: a cross link barely helps its target GU but
  // blasts the other one with interference, so the increment is negative
  // and nothing is added.
  Eigen::MatrixXcd h(2, 2);
  h << Cd(1, 0), Cd(0.01, 0), Cd(0.01, 0), Cd(1, 0);
  const auto ch = scalar_set(h, 0.01);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  EvalCounters counters;
  auto st = schedule_single(ch, fa, params, counters);
  REQUIRE(st.links.alpha.sum() == 2);
  st = schedule_multi(ch, fa, st, params, counters);
  CHECK(st.links.alpha.sum() == 2);
}

TEST_CASE("jhu on a degenerate instance equals the decoupled pipeline") {
  Eigen::MatrixXcd h(1, 1);
  h << Cd(0.7, 0.4);
  const auto ch = scalar_set(h, 0.05);
  const auto cb = dft_codebook(1, 1);
  SchedulingParams params;
  params.codebook_k = 1;
  const auto shu = run_scheme(Scheme::SHU, ch, cb, params);
  const auto sjhu = run_scheme(Scheme::SJHU, ch, cb, params);
  CHECK(shu.links.alpha == sjhu.links.alpha);
  CHECK(shu.report.total == doctest::Approx(sjhu.report.total).epsilon(1e-12));
}

TEST_CASE("scheme constraint audit on synthetic instances") {
  SmallInstanceSpec spec;
  SchedulingParams params;
  params.n_b = 3;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto ch = make_small_instance(spec, seed);
    for (Scheme s : {Scheme::AU, Scheme::SHU, Scheme::SJHU, Scheme::MJHU}) {
      const auto res = run_scheme(s, ch, cb, params);
      const bool single = (s != Scheme::MJHU);
      audit_constraints(ch, res, params, single);
      CHECK(res.report.total >= 0.0);
    }
  }
}

TEST_CASE("multi-connection refinement never loses spectral efficiency") {
  SmallInstanceSpec spec;
  SchedulingParams params;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
    const auto ch = make_small_instance(spec, seed);
    const auto sjhu = run_scheme(Scheme::SJHU, ch, cb, params);
    const auto mjhu = run_scheme(Scheme::MJHU, ch, cb, params);
    CHECK(mjhu.report.total >= sjhu.report.total - 1e-9);
  }
}

TEST_CASE("AU and SHU share links but differ in the digital stage") {
  SmallInstanceSpec spec;
  SchedulingParams params;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  const auto ch = make_small_instance(spec, 31);
  const auto au = run_scheme(Scheme::AU, ch, cb, params);
  const auto shu = run_scheme(Scheme::SHU, ch, cb, params);
  CHECK(au.links.alpha == shu.links.alpha);
  // AU keeps an identity digital stage.
  for (int s = 0; s < ch.n_sats; ++s)
    if (!au.beams.per_sat[s].served.empty()) {
      const auto& fd = au.beams.per_sat[s].F_D;
      CHECK((fd - Eigen::MatrixXcd::Identity(fd.rows(), fd.cols())).norm() <
            1e-12);
    }
  CHECK(au.counters.m_hy == 0);
  // SHU computes one hybrid beamformer per link-bearing satellite.
  int active = 0;
  for (int s = 0; s < ch.n_sats; ++s)
    if (shu.links.row_sum(s) > 0) ++active;
  CHECK(shu.counters.m_hy == active);
}

TEST_CASE("schemes are deterministic") {
  SmallInstanceSpec spec;
  SchedulingParams params;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  const auto ch = make_small_instance(spec, 77);
  for (Scheme s : {Scheme::AU, Scheme::SHU, Scheme::SJHU, Scheme::MJHU}) {
    const auto a = run_scheme(s, ch, cb, params);
    const auto b = run_scheme(s, ch, cb, params);
    CHECK(a.links.alpha == b.links.alpha);
    CHECK(a.report.total == b.report.total);
    CHECK(a.counters.m_r == b.counters.m_r);
    CHECK(a.counters.m_hy == b.counters.m_hy);
  }
}

TEST_CASE("power budget is met per link-bearing satellite") {
  SmallInstanceSpec spec;
  SchedulingParams params;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  const auto ch = make_small_instance(spec, 13);
  for (Scheme s : {Scheme::AU, Scheme::SHU, Scheme::MJHU}) {
    const auto res = run_scheme(s, ch, cb, params);
    for (int sat = 0; sat < ch.n_sats; ++sat)
      if (res.links.row_sum(sat) > 0)
        CHECK(res.beams.per_sat[sat].F_HY.squaredNorm() ==
              doctest::Approx(params.power_w).epsilon(1e-9));  // C1
  }
}

TEST_CASE("exhaustive oracle rejects large instances") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(4, 4);
  const auto ch = scalar_set(h, 1.0);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  CHECK_THROWS(exhaustive_oracle(ch, fa, params, true));
}

TEST_CASE("exhaustive oracle dominates the greedy single-connection schemes") {
  SmallInstanceSpec spec;
  spec.n_sats = 3;
  spec.n_gus = 4;
  SchedulingParams params;
  params.n_b = 2;
  const auto cb = dft_codebook(spec.elements_x, spec.elements_y);
  for (std::uint64_t seed : {101u, 102u, 103u, 104u, 105u, 106u}) {
    const auto ch = make_small_instance(spec, seed);
    const auto fa = analog_vectors(ch, cb, params.codebook_k);
    const auto [links_h, best_h] =
        exhaustive_oracle(ch, fa, params, true, BeamRule::Hybrid);
    const auto [links_a, best_a] =
        exhaustive_oracle(ch, fa, params, true, BeamRule::Analog);
    const auto shu = run_scheme(Scheme::SHU, ch, cb, params);
    const auto sjhu = run_scheme(Scheme::SJHU, ch, cb, params);
    const auto au = run_scheme(Scheme::AU, ch, cb, params);
    CHECK(best_h >= shu.report.total - 1e-9);
    CHECK(best_h >= sjhu.report.total - 1e-9);
    CHECK(best_a >= au.report.total - 1e-9);
  }
}

TEST_CASE("oracle on a transparent instance picks the obvious optimum") {
  // One satellite, one strong GU, one weak GU, n_b = 1: the oracle must
  // serve only the strong GU.
  Eigen::MatrixXcd h(1, 2);
  h << Cd(3, 0), Cd(0.1, 0);
  const auto ch = scalar_set(h, 1.0);
  const auto cb = dft_codebook(1, 1);
  const auto fa = analog_vectors(ch, cb, 1);
  SchedulingParams params;
  params.n_b = 1;
  const auto [links, best] = exhaustive_oracle(ch, fa, params, true);
  CHECK(links.alpha(0, 0) == 1);
  CHECK(links.alpha(0, 1) == 0);
  CHECK(best > 0.0);
}
