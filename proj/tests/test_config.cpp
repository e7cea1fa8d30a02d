#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "riscov/config.hpp"
#include "riscov/params.hpp"

using namespace riscov;

namespace {

std::string error_of(const std::string& text) {
    try {
        ExperimentConfig c = parse_config(text);
        c.validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("default config materializes the default scenario") {
    const ExperimentConfig c;
    c.validate();
    const ScenarioParams want = ScenarioParams::defaults();
    const ScenarioParams got = c.scenario();
    CHECK(got.lambda_b == doctest::Approx(want.lambda_b).epsilon(1e-15));
    CHECK(got.lambda_r == doctest::Approx(want.lambda_r).epsilon(1e-15));
    CHECK(got.lambda_l == doctest::Approx(want.lambda_l).epsilon(1e-15));
    CHECK(got.mean_blockage_len == want.mean_blockage_len);
    CHECK(got.m_t == want.m_t);
    CHECK(got.m_r == want.m_r);
    CHECK(got.n_r == want.n_r);
    CHECK(got.m_t_side == doctest::Approx(want.m_t_side).epsilon(1e-14));
    CHECK(got.n_r_side == doctest::Approx(want.n_r_side).epsilon(1e-14));
    CHECK(got.c0 == doctest::Approx(want.c0).epsilon(1e-14));
    CHECK(got.alpha == want.alpha);
    CHECK(got.p_s == doctest::Approx(want.p_s).epsilon(1e-14));
    CHECK(got.sigma_c2 == doctest::Approx(want.sigma_c2).epsilon(1e-14));
    CHECK(got.sigma_s2 == doctest::Approx(want.sigma_s2).epsilon(1e-14));
    CHECK(got.bandwidth == want.bandwidth);
    CHECK(got.window_radius == want.window_radius);
    CHECK(got.blockage_mode == want.blockage_mode);
    CHECK(got.greedy_target == want.greedy_target);
    got.validate();
}

TEST_CASE("serialize/parse round-trips every field") {
    ExperimentConfig c;
    c.lambda_b_per_km2 = 23.0;
    c.lambda_r_per_km2 = 2400.0;
    c.lambda_l_per_km2 = 600.0;
    c.alpha = 3.475;
    c.c0_db = -27.5;
    c.p_s_db = 9.0;
    c.side_lobe_tx_rel_db = -18.25;
    c.sigma_c2_dbm = -92.0;
    c.mode = "simulate";
    c.trials = 12345;
    c.master_seed = 9876543210123456789ULL;
    c.threads = 4;
    c.thresholds_db = {{0.0, -40.0}, {10.0, -30.0}, {-10.0, -50.0}};
    c.blockage_mode = "explicit";
    c.blockage_len_mode = "uniform";
    c.greedy_target = "ris";
    c.vlos_sensing_cascaded = true;
    c.out_dir = "runs/exp one";
    c.sweep_keys = {"lambda_b_per_km2", "lambda_r_per_km2"};
    c.sweep_rows = {{10.0, 421.0}, {20.0, 342.0}, {60.0, 24.0}};
    c.validate();

    const std::string text = serialize_config(c);
    const ExperimentConfig back = parse_config(text);
    CHECK(back == c);

    // and once more through a file on disk
    const char* path = "riscov_test_roundtrip.cfg";
    {
        std::ofstream out(path);
        out << text;
    }
    const ExperimentConfig from_file = load_config(path);
    std::remove(path);
    CHECK(from_file == c);
}

TEST_CASE("parser accepts comments, blanks, and spacing; last key wins") {
    const ExperimentConfig c = parse_config(
        "# a comment line\n"
        "\n"
        "  trials = 5  \n"
        "trials=9 # trailing note\n"
        "alpha=3.8\n");
    CHECK(c.trials == 9);
    CHECK(c.alpha == 3.8);
}

TEST_CASE("threshold and sweep grammars parse") {
    const ExperimentConfig c = parse_config(
        "thresholds_db=0:-40,10:-30\n"
        "sweep_param=lambda_b_per_km2+lambda_r_per_km2\n"
        "sweep_values=10/421;20/342\n");
    REQUIRE(c.thresholds_db.size() == 2);
    CHECK(c.thresholds_db[0].first == 0.0);
    CHECK(c.thresholds_db[0].second == -40.0);
    CHECK(c.thresholds_db[1].first == 10.0);
    REQUIRE(c.sweep_keys.size() == 2);
    CHECK(c.sweep_keys[1] == "lambda_r_per_km2");
    REQUIRE(c.sweep_rows.size() == 2);
    CHECK(c.sweep_rows[1][0] == 20.0);
    CHECK(c.sweep_rows[1][1] == 342.0);
    c.validate();
}

TEST_CASE("errors name the offending field") {
    CHECK(error_of("bogus_key=1\n").find("bogus_key") != std::string::npos);
    CHECK(error_of("alpha=abc\n").find("alpha") != std::string::npos);
    CHECK(error_of("trials=3.7\n").find("trials") != std::string::npos);
    CHECK(error_of("mode=banana\n").find("mode") != std::string::npos);
    CHECK(error_of("alpha=1.5\n").find("alpha") != std::string::npos);
    CHECK(error_of("mode=simulate\ntrials=0\n").find("trials") != std::string::npos);
    CHECK(error_of("sweep_param=out_dir\nsweep_values=1\n").find("out_dir") !=
          std::string::npos);
    CHECK(error_of("sweep_param=lambda_b_per_km2\nsweep_values=1/2\n")
              .find("sweep_values") != std::string::npos);
    CHECK(error_of("trials 9\n").find("key=value") != std::string::npos);
}

TEST_CASE("analyze mode tolerates zero trials") {
    ExperimentConfig c = parse_config("mode=analyze\ntrials=0\n");
    c.validate(); // no Monte Carlo stage, trials unused
    CHECK(c.mode == "analyze");
}

TEST_CASE("shortest-round-trip double formatting") {
    CHECK(format_double(3.6) == "3.6");
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(-40.0) == "-40");
    const double awkward = 0.1 + 0.2; // 0.30000000000000004
    CHECK(std::stod(format_double(awkward)) == awkward);
}
