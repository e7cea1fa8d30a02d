#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "riscov/analytic_dist.hpp"
#include "riscov/quadrature.hpp"

using namespace riscov;
constexpr double kPi = std::numbers::pi;

namespace {

// Shared sanity battery for a (possibly defective) nearest-point law.
void check_distribution(const DistanceDistribution& d, double mass_lo, double mass_hi) {
    CHECK(d.total_mass >= mass_lo);
    CHECK(d.total_mass <= mass_hi + 1e-12);
    CHECK(d.support_hi > d.support_lo);
    CHECK(d.cdf(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.cdf(d.support_hi) == doctest::Approx(d.total_mass).epsilon(1e-9));
    CHECK(d.cdf(d.support_hi * 2.0) == doctest::Approx(d.total_mass).epsilon(1e-9));

    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = d.support_hi * i / 200.0;
        const double c = d.cdf(x);
        CHECK(c >= prev - 1e-13);
        CHECK(d.pdf(x) >= 0.0);
        prev = c;
    }
    QuadratureReport integral =
        integrate_1d(d.pdf, 0.0, d.support_hi, 1e-8, 0.0, 400000);
    CHECK(integral.value == doctest::Approx(d.total_mass).epsilon(1e-3));
}

} // namespace

TEST_CASE("one_minus_exp1p matches the closed form and its expansion") {
    CHECK(one_minus_exp1p(0.0) == 0.0);

    // series/closed-form handover must be seamless
    for (double u : {0.25 - 1e-8, 0.25, 0.25 + 1e-8}) {
        const double direct = 1.0 - std::exp(-u) * (1.0 + u);
        CHECK(one_minus_exp1p(u) == doctest::Approx(direct).epsilon(1e-13));
    }

    const double u = 1e-3;
    const double taylor = u * u / 2.0 - u * u * u / 3.0 + u * u * u * u / 8.0;
    CHECK(one_minus_exp1p(u) == doctest::Approx(taylor).epsilon(1e-10));

    CHECK(one_minus_exp1p(800.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("radial measures: closed forms and limits") {
    const ScenarioParams p = ScenarioParams::defaults();
    const double beta = p.beta();
    CHECK(beta == doctest::Approx(0.002864788975654116).epsilon(1e-13));

    // saturated blockage: measure tends to lambda / beta^2
    CHECK(los_radial_measure(1.0, beta, 1e7) ==
          doctest::Approx(121846.96791468342).epsilon(1e-12));

    // zero-beta degenerates to the free-space half-square
    CHECK(los_radial_measure(2.0, 0.0, 10.0) == doctest::Approx(100.0).epsilon(1e-14));

    // los + nlos partition the full intensity
    for (double x : {10.0, 100.0, 1000.0, 3000.0}) {
        const double total = los_radial_measure(p.lambda_b, beta, x) +
                             nlos_radial_measure(p.lambda_b, beta, x);
        CHECK(total == doctest::Approx(0.5 * p.lambda_b * x * x).epsilon(1e-12));
    }
}

TEST_CASE("ris void probability complements the vlos scale") {
    ScenarioParams p = ScenarioParams::defaults();
    CHECK(ris_void_probability(p) + vlos_scale(p) == doctest::Approx(1.0).epsilon(1e-12));

    p.lambda_r = 0.0;
    CHECK(ris_void_probability(p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(vlos_scale(p) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(vlos_radial_measure(p, 1000.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("nearest LoS BS law reduces to Rayleigh without blockages") {
    ScenarioParams p = ScenarioParams::defaults();
    p.lambda_l = 0.0; // no blockage process -> every BS is LoS
    p.lambda_b = 1e-4;
    DistanceDistribution d = nearest_los_bs_dist(p);
    CHECK(d.pdf(50.0) == doctest::Approx(0.014323718726811385).epsilon(1e-12));
    CHECK(d.cdf(50.0) ==
          doctest::Approx(1.0 - std::exp(-kPi * 1e-4 * 2500.0)).epsilon(1e-12));
    check_distribution(d, 1.0 - 1e-9, 1.0);
}

TEST_CASE("nearest-point laws at defaults are carried to full mass") {
    const ScenarioParams p = ScenarioParams::defaults();
    check_distribution(nearest_los_bs_dist(p), 1.0 - 1e-9, 1.0);
    check_distribution(nearest_vlos_bs_dist(p), 1.0 - 1e-9, 1.0);
    check_distribution(nearest_los_ris_dist(p), 1.0 - 1e-9, 1.0);
}

TEST_CASE("sparse fields yield honestly defective laws") {
    ScenarioParams p = ScenarioParams::defaults();
    p.lambda_b = 0.3e-6; // 0.3 km^-2: the LoS candidate is usually absent
    DistanceDistribution d = nearest_los_bs_dist(p);
    const double expect_mass =
        -std::expm1(-2.0 * kPi * los_radial_measure(p.lambda_b, p.beta(), p.window_radius));
    CHECK(d.total_mass == doctest::Approx(expect_mass).epsilon(1e-10));
    CHECK(d.total_mass < 0.3);
    check_distribution(d, 0.01, expect_mass);
}

TEST_CASE("lens measure saturates to the whole window") {
    const ScenarioParams p = ScenarioParams::defaults();
    const double whole = 2.0 * kPi * vlos_radial_measure(p, p.window_radius);
    for (double y : {40.0, 200.0}) {
        const double big_c = 1e12; // lens radius c/y dwarfs the window
        CHECK(lens_vlos_measure(p, big_c, y) == doctest::Approx(whole).epsilon(1e-6));
    }
    CHECK(lens_vlos_measure(p, 0.0, 100.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional cascade cdf is monotone in eta") {
    const ScenarioParams p = ScenarioParams::defaults();
    for (double y : {30.0, 120.0}) {
        double prev = -1.0;
        for (double eta = 0.0; eta <= 2e5; eta += 5e3) {
            const double c = cascaded_cdf_given_ris(p, eta, y);
            CHECK(c >= prev - 1e-12);
            CHECK(c <= 1.0 + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("cascade length distribution: cache fidelity and mass") {
    const ScenarioParams p = ScenarioParams::defaults();
    const CascadedLengthDist cas(p);
    CHECK(cas.total_mass() > 0.999);
    CHECK(cas.total_mass() <= 1.0 + 1e-12);

    double prev = -1.0;
    for (int i = 0; i <= 60; ++i) {
        const double eta = cas.support_hi() * i / 60.0;
        const double cached = cas.cdf(eta);
        CHECK(std::abs(cached - cas.exact_cdf(eta)) <= 3e-5);
        CHECK(cached >= prev - 1e-12);
        prev = cached;
    }

    // trapezoid over the cached pdf recovers the mass
    const int n = 4000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double eta = cas.support_hi() * i / n;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += w * cas.pdf(eta);
    }
    sum *= cas.support_hi() / n;
    CHECK(sum == doctest::Approx(cas.total_mass()).epsilon(5e-3));

    DistanceDistribution d = cas.as_distribution();
    CHECK(d.total_mass == doctest::Approx(cas.total_mass()).epsilon(1e-12));
    CHECK(d.cdf(cas.support_hi()) == doctest::Approx(cas.total_mass()).epsilon(1e-6));
}

TEST_CASE("association probabilities satisfy the union identity") {
    const ScenarioParams p = ScenarioParams::defaults();
    const AssociationProbabilities ap = analytic_association_split(p);

    CHECK(ap.zeta_d == doctest::Approx(0.735474776).epsilon(1e-5));
    CHECK(ap.zeta_v == doctest::Approx(0.264525224).epsilon(1e-5));

    // both candidate classes are independent, so the win probabilities must
    // add up to the probability that anything exists at all
    const double any = 1.0 - (1.0 - ap.zbar_d) * (1.0 - ap.zbar_v);
    CHECK(ap.zeta_d + ap.zeta_v == doctest::Approx(any).epsilon(1e-7));
    CHECK(ap.zeta_d <= ap.zbar_d + 1e-12);
    CHECK(ap.zeta_v <= ap.zbar_v + 1e-12);
}

TEST_CASE("association degenerates correctly without RIS") {
    ScenarioParams p = ScenarioParams::defaults();
    p.lambda_r = 0.0;
    const AssociationProbabilities ap = analytic_association_split(p);
    CHECK(ap.zbar_v == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ap.zeta_v == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ap.zeta_d == doctest::Approx(ap.zbar_d).epsilon(1e-12));
}
