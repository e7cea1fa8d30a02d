#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "riscov/params.hpp"

namespace riscov {

// Malformed or invalid configuration; the message names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment description in config-file units: densities per km^2, powers in
// dB / dBm, lengths in meters. Conversion to the SI ScenarioParams happens in
// scenario() and nowhere else, so a serialize/parse cycle reproduces the
// stored values bit-exactly.
struct ExperimentConfig {
    // scenario keys
    double lambda_b_per_km2 = 100.0;
    double lambda_r_per_km2 = 600.0;
    double lambda_l_per_km2 = 300.0;
    double lambda_u_per_km2 = 10.0;
    double mean_blockage_len_m = 15.0;
    int m_t = 8;
    int m_r = 8;
    int n_r = 256;
    double side_lobe_tx_rel_db = -20.0;
    double side_lobe_ris_rel_db = -20.0;
    double c0_db = -30.0;
    double alpha = 3.6;
    double rho_d = 1.0;
    double rho_v = 1.0;
    double rho_ds = 1.0;
    double p_s_db = 20.0;
    double sigma_c2_dbm = -89.0;
    double sigma_s2_dbm = -89.0;
    double bandwidth_mhz = 200.0;
    double window_radius_m = 3000.0;
    std::string blockage_mode = "thinning";           // thinning | explicit
    std::string blockage_len_mode = "deterministic";  // deterministic | uniform
    std::string greedy_target = "user";               // user | ris
    bool vlos_sensing_cascaded = false;
    bool xi1_intensity_at_bb = false;

    // experiment keys
    std::string mode = "both";  // simulate | analyze | both
    std::vector<std::pair<double, double>> thresholds_db = {{0.0, -40.0}};
    long long trials = 20000;
    std::uint64_t master_seed = 1;
    int threads = 0;  // 0 = use hardware concurrency
    std::vector<std::string> sweep_keys;           // empty when not sweeping
    std::vector<std::vector<double>> sweep_rows;   // one row per sweep point
    std::string out_dir = "out";

    ScenarioParams scenario() const;
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

// key=value per line, '#' starts a comment, later keys override earlier ones.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Applies one key=value pair; also used for command-line overrides and sweep
// points. Throws ConfigError naming the key on unknown keys or bad values.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);
// Full canonical dump of every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

} // namespace riscov
