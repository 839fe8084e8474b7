// SPDX-License-Identifier: Apache-2.0
//
// crsnoma - closed-form and Monte-Carlo analysis of NOMA cooperative relaying
// under underlay spectrum sharing.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace crsnoma;
using namespace crsnoma::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ChannelProfile kReference = ChannelProfile::reference_scenario();
const PowerSplit kSplit = PowerSplit::from_a2(0.1);

SimConfig sim_with(std::uint64_t n, std::uint64_t seed, unsigned threads = 0) {
    SimConfig s;
    s.n_samples = n;
    s.seed = seed;
    s.threads = threads;
    return s;
}

}  // namespace

TEST_CASE("running statistics", "[montecarlo]") {
    RunningStats all;
    RunningStats left;
    RunningStats right;
    for (int i = 1; i <= 100; ++i) {
        all.push(i);
        (i <= 37 ? left : right).push(i);
    }
    left.merge(right);
    CHECK_THAT(all.estimate().mean, WithinRel(50.5, 1e-15));
    CHECK_THAT(left.estimate().mean, WithinRel(50.5, 1e-14));
    // sample variance of 1..100 is 841.666..
    CHECK_THAT(all.estimate().std_error, WithinRel(std::sqrt(841.6666666666666 / 100.0), 1e-12));
    CHECK_THAT(left.estimate().std_error, WithinRel(all.estimate().std_error, 1e-12));
    CHECK(left.estimate().n == 100);
}

TEST_CASE("simulation config validation", "[montecarlo]") {
    CHECK_THROWS_AS(sim_with(999, 1).validate(), std::invalid_argument);
    SimConfig s = sim_with(1000, 1);
    s.chunk_size = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK_THROWS_AS(mc_rate_oma(0.0, kReference, {1, 1}, sim_with(1000, 1)), std::domain_error);
}

TEST_CASE("instantaneous SINRs", "[montecarlo]") {
    CounterRng rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const ChannelDraw d = draw_channels(kReference, {2, 3}, rng);
        const SinrBundle g = instantaneous_sinrs(d, 10.0, kSplit);
        // s1 SINR saturates at a1 / a2 under interference from s2.
        REQUIRE(g.gamma_sr1 < 9.0);
        REQUIRE(g.gamma_sd < 9.0);
        REQUIRE(g.gamma_sr1 > 0.0);
        REQUIRE_THAT(g.gamma_sr2, WithinRel(0.1 * 10.0 * d.delta_sr / d.lambda_sp, 1e-15));
        REQUIRE_THAT(g.gamma_rd, WithinRel(10.0 * d.delta_rd / d.lambda_rp, 1e-15));
        // stronger link, stronger SINR
        REQUIRE((d.delta_sr >= d.delta_sd) == (g.gamma_sr1 >= g.gamma_sd));
    }
}

TEST_CASE("s2 bottleneck ratio follows the closed-form survival", "[montecarlo][distribution]") {
    // min(gamma_sr2, gamma_rd) / q is exactly the Y variable of the survival function.
    const double q = 10.0;
    for (const AntennaConfig a : {AntennaConfig{1, 1}, AntennaConfig{3, 2}}) {
        auto v = sample_statistic(kReference, a, 1'000'000, 31, [&](const ChannelDraw& d) {
            const SinrBundle g = instantaneous_sinrs(d, q, kSplit);
            return std::min(g.gamma_sr2, g.gamma_rd) / q;
        });
        const double ks = ks_distance(v, [&](double x) { return 1.0 - survival_sc_Y(x, 0.1, a, kReference); });
        INFO("n_r=" << a.n_r() << " KS=" << ks);
        CHECK(ks < 0.002);
    }
}

TEST_CASE("estimates are deterministic across thread counts", "[montecarlo][determinism]") {
    const OutageTargets t = make_targets(1.0, 1.0, 10.0, kSplit);
    SimConfig one = sim_with(300'001, 42, 1);
    one.chunk_size = 4096;
    SimConfig many = one;
    many.threads = 4;
    SimConfig dflt = one;
    dflt.threads = 0;

    const PointEstimates a = mc_point(t, kReference, kSplit, {2, 2}, one);
    const PointEstimates b = mc_point(t, kReference, kSplit, {2, 2}, many);
    const PointEstimates c = mc_point(t, kReference, kSplit, {2, 2}, dflt);
    CHECK(a.noma.sum == b.noma.sum);
    CHECK(a.oma == b.oma);
    CHECK(a.outage.s2 == b.outage.s2);
    CHECK(a.noma.s1 == c.noma.s1);
    CHECK(a.noma.s1.n == 300'001);

    SECTION("single-pass point equals the standalone estimators") {
        const NomaRateEstimates noma = mc_rate_noma(10.0, kReference, kSplit, {2, 2}, one);
        const Estimate oma = mc_rate_oma(10.0, kReference, {2, 2}, one);
        const OutageEstimates out = mc_outage(t, kReference, kSplit, {2, 2}, one);
        CHECK(noma.s1 == a.noma.s1);
        CHECK(noma.s2 == a.noma.s2);
        CHECK(noma.sum == a.noma.sum);
        CHECK(oma == a.oma);
        CHECK(out.s1 == a.outage.s1);
        CHECK(out.s2 == a.outage.s2);
    }

    SECTION("different seeds give different estimates") {
        SimConfig other = one;
        other.seed = 43;
        CHECK(mc_rate_oma(10.0, kReference, {2, 2}, other).mean != a.oma.mean);
    }
}

TEST_CASE("NOMA Monte-Carlo rates bracket the closed forms", "[montecarlo][closed_form]") {
    const SimConfig sim = sim_with(1'000'000, 2024);
    for (const AntennaConfig a : {AntennaConfig{1, 1}, AntennaConfig{2, 2}, AntennaConfig{3, 1}}) {
        for (double q_db : {-10.0, 0.0, 10.0, 30.0}) {
            const double q = db_to_linear(q_db);
            const RateReport r = sum_rate(q, kReference, kSplit, a);
            const NomaRateEstimates mc = mc_rate_noma(q, kReference, kSplit, a, sim);
            INFO("n_r=" << a.n_r() << " n_d=" << a.n_d() << " q_db=" << q_db);
            CHECK(std::abs(mc.s1.mean - r.rate_s1) <= 3.0 * mc.s1.std_error);
            CHECK(std::abs(mc.s2.mean - r.rate_s2) <= 3.0 * mc.s2.std_error);
            CHECK(std::abs(mc.sum.mean - r.rate_sum) <= 3.0 * mc.sum.std_error);
        }
    }
}

TEST_CASE("seed-to-seed spread matches the reported standard error", "[montecarlo][calibration]") {
    const double exact = rate_s1_sc(10.0, kReference, kSplit, {2, 2});
    int inside = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const Estimate e = mc_rate_noma(10.0, kReference, kSplit, {2, 2}, sim_with(200'000, seed)).s1;
        const double z = (e.mean - exact) / e.std_error;
        INFO("seed " << seed << " z=" << z);
        CHECK(std::abs(z) < 4.0);
        inside += std::abs(z) < 2.0 ? 1 : 0;
    }
    CHECK(inside >= 6);
}

TEST_CASE("OMA baseline", "[montecarlo][oma]") {
    SECTION("without a useful relay-destination link OMA reduces to the direct link") {
        const ChannelProfile weak_rd(10.0, 1.0, 1e-6, 5.5, 5.5);
        const Estimate e = mc_rate_oma(10.0, weak_rd, AntennaConfig::single(), sim_with(2'000'000, 9));
        INFO("mc=" << e.mean << " +- " << e.std_error);
        CHECK(std::abs(e.mean - reference::kOmaNoRelayQ10) <= 3.0 * e.std_error + 1e-4);
    }

    SECTION("OMA leads at low q, NOMA at high q") {
        const SimConfig sim = sim_with(400'000, 3);
        CHECK(mc_rate_oma(1.0, kReference, {1, 1}, sim).mean > sum_rate(1.0, kReference, kSplit, {1, 1}).rate_sum);
        CHECK(mc_rate_oma(1000.0, kReference, {1, 1}, sim).mean < sum_rate(1000.0, kReference, kSplit, {1, 1}).rate_sum);
    }

    SECTION("more antennas never hurt") {
        const SimConfig sim = sim_with(400'000, 4);
        const Estimate one = mc_rate_oma(10.0, kReference, {1, 1}, sim);
        const Estimate two = mc_rate_oma(10.0, kReference, {2, 2}, sim);
        CHECK(two.mean > one.mean);
    }
}
