#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "riscov/association.hpp"
#include "riscov/geometry.hpp"
#include "riscov/params.hpp"
#include "riscov/rng.hpp"

namespace riscov {

struct SinrSample {
    double gamma_c = 0.0; // linear communication SINR
    double gamma_s = 0.0; // linear sensing SINR
    LinkKind kind = LinkKind::None;
};

// Pins the serving-link fading powers so a drop can be checked by hand.
struct ServingFades {
    double xi0 = 1.0;   // serving communication fading power
    double kappa = 1.0; // serving echo fading power
};

// Computes both SINRs for one realization. The rng continues from wherever
// the caller left it; interferers consume draws in ascending BS index, each
// taking (comm fade, comm gain, sensing fade, sensing gain).
SinrSample drop_sinr(const NetworkRealization& net, const ServingLink& serving,
                     const ScenarioParams& p, Rng& rng,
                     const ServingFades* pinned = nullptr);
SinrSample drop_sinr(const NetworkRealization& net, const ServingLink& serving,
                     const ScenarioParams& p, std::uint64_t seed);

struct CoverageResult {
    double p_cs = 0.0;
    double ci_halfwidth = 0.0; // 95% Wilson
    std::uint64_t n_trials = 0;
    std::uint64_t n_direct = 0;
    std::uint64_t n_cascaded = 0;
    std::uint64_t n_none = 0;
    std::uint64_t covered_direct = 0;
    std::uint64_t covered_cascaded = 0;
    double zeta_d_hat = 0.0;
    double zeta_v_hat = 0.0;
    double p_d_hat = 0.0; // coverage given Direct
    double p_v_hat = 0.0; // coverage given Cascaded
};

CoverageResult estimate_coverage(const ScenarioParams& p, double eps1, double eps2,
                                 std::uint64_t n_trials, std::uint64_t master_seed,
                                 int threads = 1);

// One pass over the drops scores every (eps1, eps2) pair; results are in the
// order of `thresholds`.
std::vector<CoverageResult> estimate_coverage_grid(
    const ScenarioParams& p, const std::vector<std::pair<double, double>>& thresholds,
    std::uint64_t n_trials, std::uint64_t master_seed, int threads = 1);

struct RatePair {
    double comm_rate = 0.0; // bit/s, mean of W log2(1+gamma_c) over all drops
    double comm_se = 0.0;
    double sens_rate = 0.0;
    double sens_se = 0.0;
    std::uint64_t n_trials = 0;
};

RatePair estimate_rate_pair(const ScenarioParams& p, std::uint64_t n_trials,
                            std::uint64_t master_seed, int threads = 1);

// Per-drop link distances for distribution-level validation. Entries are NaN
// when the corresponding point does not exist in the drop. `eta` is always
// the minimum cascade product over NLoS BSs through the nearest LoS RIS,
// regardless of the greedy association switch.
struct DistanceSamples {
    std::vector<double> d0l;
    std::vector<double> d0v;
    std::vector<double> ris;
    std::vector<double> eta;
    std::uint64_t n_direct = 0;
    std::uint64_t n_cascaded = 0;
    std::uint64_t n_none = 0;
};

DistanceSamples sample_distances(const ScenarioParams& p, std::uint64_t n_trials,
                                 std::uint64_t master_seed);

// Builds one Monte Carlo drop: BS field, blockage classification, and the
// nearest LoS RIS (streamed in ascending radius; the rest of the RIS field
// never reflects and is not materialized).
NetworkRealization make_drop(const ScenarioParams& p, Rng& rng);

double wilson_halfwidth(std::uint64_t successes, std::uint64_t n_trials);

} // namespace riscov
