#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "riscov/channel.hpp"
#include "riscov/sinr_mc.hpp"

using namespace riscov;

namespace {

NetworkRealization single_los_bs(double x) {
    NetworkRealization net;
    net.bs = {{x, 0.0}};
    net.bs_los = {1};
    return net;
}

} // namespace

TEST_CASE("pinned direct drop matches the hand-computed SINR chain") {
    const ScenarioParams p = ScenarioParams::defaults();
    NetworkRealization net = single_los_bs(100.0);
    const ServingLink serving = associate(net, p);
    REQUIRE(serving.kind == LinkKind::Direct);

    Rng rng(7);
    const ServingFades pinned{1.0, 1.0};
    const SinrSample s = drop_sinr(net, serving, p, rng, &pinned);
    CHECK(s.kind == LinkKind::Direct);
    // no interferers: gamma is the full deterministic power chain
    CHECK(s.gamma_c == doctest::Approx(400.949786901818).epsilon(1e-12));
    CHECK(s.gamma_s == doctest::Approx(0.02023857702507763).epsilon(1e-12));
}

TEST_CASE("pinned cascaded drop applies the squared-product echo chain") {
    const ScenarioParams p = ScenarioParams::defaults();
    NetworkRealization net;
    net.bs = {{0.0, 80.0}};
    net.bs_los = {0};
    net.ris = {{0.0, 10.0}};
    net.ris_los = {1};
    const ServingLink serving = associate(net, p);
    REQUIRE(serving.kind == LinkKind::Cascaded);
    CHECK(serving.eta == doctest::Approx(700.0).epsilon(1e-13));

    Rng rng(7);
    const ServingFades pinned{1.0, 1.0};
    const SinrSample s = drop_sinr(net, serving, p, rng, &pinned);
    const double nr2 = static_cast<double>(p.n_r) * p.n_r;
    const double want_c =
        path_loss_direct(700.0, p.c0, p.alpha) * p.m_t * nr2 / p.sigma_c2;
    const double want_s = p.p_s * path_loss_direct(700.0, p.c0, 2.0 * p.alpha) *
                          p.m_t * p.m_r * nr2 * nr2 / p.sigma_s2;
    CHECK(s.gamma_c == doctest::Approx(want_c).epsilon(1e-12));
    CHECK(s.gamma_s == doctest::Approx(want_s).epsilon(1e-12));
}

TEST_CASE("coverage estimates are bit-reproducible") {
    const ScenarioParams p = ScenarioParams::defaults();
    const CoverageResult a = estimate_coverage(p, 1.0, 1e-4, 2000, 42);
    const CoverageResult b = estimate_coverage(p, 1.0, 1e-4, 2000, 42);
    CHECK(a.p_cs == b.p_cs);
    CHECK(a.ci_halfwidth == b.ci_halfwidth);
    CHECK(a.n_direct == b.n_direct);
    CHECK(a.covered_cascaded == b.covered_cascaded);

    const CoverageResult c = estimate_coverage(p, 1.0, 1e-4, 2000, 43);
    CHECK(a.p_cs != c.p_cs); // different seed, different drops

    CHECK(a.p_cs >= 0.0);
    CHECK(a.p_cs <= 1.0);
    CHECK(a.ci_halfwidth > 0.0);
    CHECK(a.n_trials == 2000);
    CHECK(a.n_direct + a.n_cascaded + a.n_none == 2000);
}

TEST_CASE("thread count does not change the result") {
    const ScenarioParams p = ScenarioParams::defaults();
    const CoverageResult a = estimate_coverage(p, 1.0, 1e-4, 1000, 5, 1);
    const CoverageResult b = estimate_coverage(p, 1.0, 1e-4, 1000, 5, 3);
    CHECK(a.p_cs == b.p_cs);
    CHECK(a.covered_direct == b.covered_direct);
    CHECK(a.covered_cascaded == b.covered_cascaded);
    CHECK(a.n_none == b.n_none);
}

TEST_CASE("joint coverage decomposes over the serving-link split") {
    const ScenarioParams p = ScenarioParams::defaults();
    const CoverageResult r = estimate_coverage(p, 1.0, 1e-4, 2000, 11);
    REQUIRE(r.n_direct > 0);
    REQUIRE(r.n_cascaded > 0);
    CHECK(r.zeta_d_hat == doctest::Approx(double(r.n_direct) / 2000.0).epsilon(1e-15));
    CHECK(r.zeta_v_hat == doctest::Approx(double(r.n_cascaded) / 2000.0).epsilon(1e-15));
    CHECK(r.p_cs == r.zeta_d_hat * r.p_d_hat + r.zeta_v_hat * r.p_v_hat);
}

TEST_CASE("grid scoring equals one-at-a-time scoring and is threshold-monotone") {
    const ScenarioParams p = ScenarioParams::defaults();
    const std::vector<std::pair<double, double>> thr = {
        {0.1, 1e-5}, {1.0, 1e-4}, {10.0, 1e-3}};
    const std::vector<CoverageResult> grid = estimate_coverage_grid(p, thr, 1500, 99);
    REQUIRE(grid.size() == 3);

    const CoverageResult solo = estimate_coverage(p, 1.0, 1e-4, 1500, 99);
    CHECK(grid[1].p_cs == solo.p_cs);
    CHECK(grid[1].covered_direct == solo.covered_direct);
    CHECK(grid[1].covered_cascaded == solo.covered_cascaded);

    // same drops, stricter thresholds: coverage cannot increase
    CHECK(grid[0].p_cs >= grid[1].p_cs);
    CHECK(grid[1].p_cs >= grid[2].p_cs);
}

TEST_CASE("distance samples are internally consistent") {
    const ScenarioParams p = ScenarioParams::defaults();
    const DistanceSamples s = sample_distances(p, 3000, 17);
    REQUIRE(s.d0l.size() == 3000);
    REQUIRE(s.d0v.size() == 3000);
    REQUIRE(s.ris.size() == 3000);
    REQUIRE(s.eta.size() == 3000);
    CHECK(s.n_direct + s.n_cascaded + s.n_none == 3000);

    std::uint64_t both_absent = 0;
    for (std::size_t i = 0; i < 3000; ++i) {
        const bool has_l = std::isfinite(s.d0l[i]);
        const bool has_v = std::isfinite(s.d0v[i]);
        const bool has_r = std::isfinite(s.ris[i]);
        const bool has_e = std::isfinite(s.eta[i]);
        if (has_v) CHECK(has_r);      // virtual LoS needs a reflecting RIS
        CHECK(has_e == has_v);        // a cascade product exists iff a VLoS BS does
        if (has_e) CHECK(s.eta[i] >= s.d0v[i] * 0.0); // finite, nonnegative
        if (!has_l && !has_e) ++both_absent;
        if (has_l) CHECK(s.d0l[i] <= p.window_radius + 1e-9);
        if (has_r) CHECK(s.ris[i] <= p.window_radius + 1e-9);
    }
    CHECK(both_absent == s.n_none);
    CHECK(s.n_direct <= 3000 - both_absent);
}

TEST_CASE("rate pairs are positive and reproducible") {
    const ScenarioParams p = ScenarioParams::defaults();
    const RatePair a = estimate_rate_pair(p, 1200, 3);
    const RatePair b = estimate_rate_pair(p, 1200, 3);
    CHECK(a.comm_rate == b.comm_rate);
    CHECK(a.sens_rate == b.sens_rate);
    CHECK(a.comm_rate > 0.0);
    CHECK(a.sens_rate > 0.0);
    CHECK(a.comm_se > 0.0);
    CHECK(a.sens_se > 0.0);
    CHECK(a.n_trials == 1200);
    // communication runs at useful SINR, sensing echoes are much weaker
    CHECK(a.comm_rate > a.sens_rate);
}

TEST_CASE("cascaded-echo interference switch stays in range") {
    ScenarioParams p = ScenarioParams::defaults();
    p.vlos_sensing_cascaded = true;
    const CoverageResult r = estimate_coverage(p, 1.0, 1e-4, 800, 21);
    CHECK(r.p_cs >= 0.0);
    CHECK(r.p_cs <= 1.0);
    CHECK(r.n_direct + r.n_cascaded + r.n_none == 800);
}

TEST_CASE("wilson halfwidth behaves like a 95% interval") {
    const double z = 1.959963984540054;
    for (std::uint64_t k : {0ULL, 137ULL, 500ULL, 1000ULL}) {
        const std::uint64_t n = 1000;
        const double ph = double(k) / double(n);
        const double denom = 1.0 + z * z / double(n);
        const double want =
            z * std::sqrt(ph * (1.0 - ph) / double(n) + z * z / (4.0 * double(n) * double(n))) /
            denom;
        CHECK(wilson_halfwidth(k, n) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(wilson_halfwidth(0, 1000) > 0.0); // never collapses at the edge
    CHECK(wilson_halfwidth(500, 1000) > wilson_halfwidth(5000, 10000));
}
