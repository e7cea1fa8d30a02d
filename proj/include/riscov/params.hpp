#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riscov {

enum class BlockageMode { Thinning, Explicit };
enum class BlockageLenMode { Deterministic, Uniform };
// Which metric the greedy cascaded-candidate search minimizes: distance from
// the base station to the user, or to the serving RIS (shortest cascade).
enum class GreedyTarget { User, Ris };

// Scenario parameters in SI units. Defaults reproduce the dense-urban
// evaluation setup: 100 BS/km^2, 600 RIS/km^2, 300 blockages/km^2 of mean
// length 15 m, 8x8 BS arrays, 256-element RIS, -30 dB reference path loss,
// alpha 3.6, -89 dBm noise in 200 MHz, 20 dB sensing power boost.
struct ScenarioParams {
    double lambda_b = 100e-6;  // BS density per m^2
    double lambda_r = 600e-6;  // RIS density per m^2
    double lambda_l = 300e-6;  // blockage density per m^2
    double lambda_u = 10e-6;   // user density per m^2 (bookkeeping only)
    double mean_blockage_len = 15.0;

    int m_t = 8;     // BS transmit antennas
    int m_r = 8;     // BS receive antennas
    int n_r = 256;   // RIS elements

    // Side-lobe gains of the sector beam model. m_t_side is a power gain
    // (default -20 dB relative to m_t); n_r_side is an element-count scale
    // whose square enters the cascaded gain (default n_r/10).
    double m_t_side = 0.08;
    double n_r_side = 25.6;

    double c0 = 1e-3;     // path loss at 1 m (linear)
    double alpha = 3.6;   // path loss exponent (> 2)

    double rho_d = 1.0;   // direct-link fading rate
    double rho_v = 1.0;   // cascaded-link fading rate
    double rho_ds = 1.0;  // sensing-interference fading rate

    double p_s = 100.0;          // sensing power boost (linear)
    double sigma_c2 = 1.258925411794166e-12;  // comm noise, W
    double sigma_s2 = 1.258925411794166e-12;  // sensing noise, W
    double bandwidth = 200e6;    // Hz

    double window_radius = 3000.0;  // simulation window, m

    BlockageMode blockage_mode = BlockageMode::Thinning;
    BlockageLenMode blockage_len_mode = BlockageLenMode::Deterministic;
    GreedyTarget greedy_target = GreedyTarget::User;
    // Model the sensing interference of virtual-LoS BSs with the cascaded
    // (BS->RIS->serving BS) path instead of the direct BS->BS path.
    bool vlos_sensing_cascaded = false;
    // Evaluate the LoS interferer intensity at the interferer-to-serving-BS
    // distance instead of the interferer-to-user distance in the direct-case
    // LoS interference functional.
    bool xi1_intensity_at_bb = false;

    // beta = 2 lambda_l E[L] / pi; LoS probability over distance r is e^{-beta r}.
    double beta() const {
        return 2.0 * lambda_l * mean_blockage_len / std::numbers::pi;
    }
    // Association boundary scale: direct serving distance d wins against a
    // cascade of length eta iff d <= eta / n_r^{2/alpha}.
    double n_r_pow_2_over_alpha() const {
        return std::pow(static_cast<double>(n_r), 2.0 / alpha);
    }

    void validate() const;

    static ScenarioParams defaults() { return {}; }
};

} // namespace riscov
