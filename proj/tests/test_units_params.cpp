#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>

#include "riscov/params.hpp"
#include "riscov/units.hpp"

using namespace riscov;

TEST_CASE("dB and dBm conversions") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(dbm_to_watts(-89.0) == doctest::Approx(1.258925411794166e-12).epsilon(1e-12));
    CHECK(watts_to_dbm(dbm_to_watts(-42.5)) == doctest::Approx(-42.5).epsilon(1e-12));
    CHECK(per_km2_to_per_m2(600.0) == doctest::Approx(600e-6).epsilon(1e-15));
    CHECK(per_m2_to_per_km2(per_km2_to_per_m2(123.0)) ==
          doctest::Approx(123.0).epsilon(1e-14));
}

TEST_CASE("default scenario is valid and matches the published setup") {
    ScenarioParams p = ScenarioParams::defaults();
    CHECK_NOTHROW(p.validate());
    CHECK(p.beta() == doctest::Approx(0.002864788975654116).epsilon(1e-13));
    CHECK(p.n_r_pow_2_over_alpha() == doctest::Approx(21.772640002790034).epsilon(1e-13));
    CHECK(p.sigma_c2 == doctest::Approx(dbm_to_watts(-89.0)).epsilon(1e-13));
    CHECK(p.p_s == doctest::Approx(db_to_linear(20.0)).epsilon(1e-13));
    CHECK(p.m_t_side == doctest::Approx(p.m_t * 0.01).epsilon(1e-13));
    CHECK(p.n_r_side * p.n_r_side ==
          doctest::Approx(p.n_r * static_cast<double>(p.n_r) * 0.01).epsilon(1e-13));
}

static std::string validation_message(ScenarioParams p) {
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

TEST_CASE("validation names the offending field") {
    ScenarioParams p = ScenarioParams::defaults();

    p.lambda_b = -1.0;
    CHECK(validation_message(p).find("lambda_b") != std::string::npos);

    p = ScenarioParams::defaults();
    p.alpha = 2.0;
    CHECK(validation_message(p).find("alpha") != std::string::npos);

    p = ScenarioParams::defaults();
    p.m_t = 0;
    CHECK(validation_message(p).find("m_t") != std::string::npos);

    p = ScenarioParams::defaults();
    p.window_radius = 0.0;
    CHECK(validation_message(p).find("window_radius") != std::string::npos);

    p = ScenarioParams::defaults();
    p.n_r_side = 1e9;
    CHECK(validation_message(p).find("n_r_side") != std::string::npos);
}
