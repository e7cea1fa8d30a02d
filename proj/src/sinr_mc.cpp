#include "riscov/sinr_mc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <thread>

#include "riscov/channel.hpp"

namespace riscov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kSinrCap = 1e30;

double capped(double x) {
    return x < kSinrCap ? x : kSinrCap; // also maps inf/NaN onto the cap
}

} // namespace

NetworkRealization make_drop(const ScenarioParams& p, Rng& rng) {
    NetworkRealization net;
    net.bs = sample_ppp(p.lambda_b, p.window_radius, rng);
    std::unique_ptr<OriginLosIndex> index;
    if (p.blockage_mode == BlockageMode::Explicit) {
        net.blockages = sample_blockages(p, rng);
        index = std::make_unique<OriginLosIndex>(net.blockages);
    }
    net.bs_los.resize(net.bs.size());
    const double beta = p.beta();
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        net.bs_los[i] = index ? index->is_los(net.bs[i])
                              : static_cast<std::uint8_t>(
                                    rng.uniform() < los_probability(norm(net.bs[i]), beta));
    }
    AscendingRadiusStream stream(p.lambda_r, p.window_radius, rng);
    double r = 0.0;
    while (stream.next(rng, r)) {
        if (index) {
            const double ang = rng.uniform(0.0, kTwoPi);
            const Point2 pt{r * std::cos(ang), r * std::sin(ang)};
            if (index->is_los(pt)) {
                net.ris.push_back(pt);
                net.ris_los.push_back(1);
                break;
            }
        } else if (rng.uniform() < los_probability(r, beta)) {
            const double ang = rng.uniform(0.0, kTwoPi);
            net.ris.push_back({r * std::cos(ang), r * std::sin(ang)});
            net.ris_los.push_back(1);
            break;
        }
    }
    return net;
}

SinrSample drop_sinr(const NetworkRealization& net, const ServingLink& serving,
                     const ScenarioParams& p, Rng& rng, const ServingFades* pinned) {
    SinrSample out;
    if (serving.kind == LinkKind::None) return out;
    out.kind = serving.kind;

    const bool direct = serving.kind == LinkKind::Direct;
    const double xi0 =
        pinned ? pinned->xi0 : sample_fading(rng, direct ? p.rho_d : p.rho_v);
    const double kappa = pinned ? pinned->kappa : sample_fading(rng, 1.0);

    const Point2 serving_pos = net.bs[serving.bs_index];
    int ris = serving.ris_index;
    double d_ru = serving.d_ru;
    if (direct) {
        ris = -1;
        for (std::size_t j = 0; j < net.ris.size(); ++j) {
            if (!net.ris_los[j]) continue;
            const double d = norm(net.ris[j]);
            if (ris < 0 || d < d_ru) {
                ris = static_cast<int>(j);
                d_ru = d;
            }
        }
    }
    const bool have_ris = ris >= 0;
    const Point2 ris_pos = have_ris ? net.ris[ris] : Point2{0.0, 0.0};

    double sig_c, sig_s;
    if (direct) {
        sig_c = path_loss_direct(serving.d_bu, p.c0, p.alpha) * xi0 * p.m_t;
        sig_s = p.p_s * path_loss_direct(serving.d_bu, p.c0, 2.0 * p.alpha) * kappa *
                p.m_t * p.m_r;
    } else {
        const double nr2 = static_cast<double>(p.n_r) * p.n_r;
        sig_c = path_loss_direct(serving.eta, p.c0, p.alpha) * xi0 * p.m_t * nr2;
        sig_s = p.p_s * path_loss_direct(serving.eta, p.c0, 2.0 * p.alpha) * kappa *
                p.m_t * p.m_r * nr2 * nr2;
    }

    const GainDistribution gain_d = direct_gain_distribution(p);
    const GainDistribution gain_v = cascaded_gain_distribution(p);
    double i_c = 0.0, i_s = 0.0;
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        if (static_cast<int>(i) == serving.bs_index) continue;
        const Point2 q = net.bs[i];
        if (net.bs_los[i]) {
            const double r = norm(q);
            assert(!direct || r >= serving.d_bu); // association maximality
            i_c += path_loss_direct(r, p.c0, p.alpha) * sample_fading(rng, p.rho_d) *
                   gain_d.sample(rng);
            i_s += path_loss_direct(distance(q, serving_pos), p.c0, p.alpha) *
                   sample_fading(rng, p.rho_ds) * gain_d.sample(rng);
        } else if (have_ris) {
            const double d_br = distance(q, ris_pos);
            // Greedy-by-cascade association makes the serving product minimal.
            assert(direct || p.greedy_target != GreedyTarget::Ris ||
                   d_br * d_ru >= serving.eta);
            i_c += path_loss_cascaded(d_br, d_ru, p.c0, p.alpha) *
                   sample_fading(rng, p.rho_v) * gain_v.sample(rng);
            if (p.vlos_sensing_cascaded) {
                i_s += path_loss_cascaded(d_br, distance(ris_pos, serving_pos), p.c0,
                                          p.alpha) *
                       sample_fading(rng, p.rho_ds) * gain_v.sample(rng);
            } else {
                i_s += path_loss_direct(distance(q, serving_pos), p.c0, p.alpha) *
                       sample_fading(rng, p.rho_ds) * gain_d.sample(rng);
            }
        }
    }

    out.gamma_c = capped(sig_c / (i_c + p.sigma_c2));
    out.gamma_s = capped(sig_s / (i_s + p.sigma_s2));
    return out;
}

SinrSample drop_sinr(const NetworkRealization& net, const ServingLink& serving,
                     const ScenarioParams& p, std::uint64_t seed) {
    Rng rng(seed);
    return drop_sinr(net, serving, p, rng);
}

namespace {

struct PairCount {
    std::uint64_t covered_direct = 0;
    std::uint64_t covered_cascaded = 0;
};

struct RunAccumulator {
    std::uint64_t n_direct = 0;
    std::uint64_t n_cascaded = 0;
    std::uint64_t n_none = 0;
    std::vector<PairCount> pairs;
    double sum_rc = 0.0, sum_rc2 = 0.0;
    double sum_rs = 0.0, sum_rs2 = 0.0;

    void merge(const RunAccumulator& o) {
        n_direct += o.n_direct;
        n_cascaded += o.n_cascaded;
        n_none += o.n_none;
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            pairs[j].covered_direct += o.pairs[j].covered_direct;
            pairs[j].covered_cascaded += o.pairs[j].covered_cascaded;
        }
        sum_rc += o.sum_rc;
        sum_rc2 += o.sum_rc2;
        sum_rs += o.sum_rs;
        sum_rs2 += o.sum_rs2;
    }
};

void run_drop_range(const ScenarioParams& p,
                    const std::vector<std::pair<double, double>>& thresholds,
                    std::uint64_t master_seed, std::uint64_t first, std::uint64_t last,
                    RunAccumulator& acc) {
    acc.pairs.assign(thresholds.size(), PairCount{});
    Rng rng(master_seed);
    for (std::uint64_t drop = first; drop < last; ++drop) {
        rng.reseed_stream(master_seed, drop);
        const NetworkRealization net = make_drop(p, rng);
        const ServingLink serving = associate(net, p);
        const SinrSample s = drop_sinr(net, serving, p, rng);
        switch (s.kind) {
        case LinkKind::Direct: ++acc.n_direct; break;
        case LinkKind::Cascaded: ++acc.n_cascaded; break;
        case LinkKind::None: ++acc.n_none; break;
        }
        for (std::size_t j = 0; j < thresholds.size(); ++j) {
            if (s.gamma_c >= thresholds[j].first && s.gamma_s >= thresholds[j].second) {
                if (s.kind == LinkKind::Direct) ++acc.pairs[j].covered_direct;
                else ++acc.pairs[j].covered_cascaded;
            }
        }
        const double rc = p.bandwidth * std::log2(1.0 + s.gamma_c);
        const double rs = p.bandwidth * std::log2(1.0 + s.gamma_s);
        acc.sum_rc += rc;
        acc.sum_rc2 += rc * rc;
        acc.sum_rs += rs;
        acc.sum_rs2 += rs * rs;
    }
}

RunAccumulator run_drops(const ScenarioParams& p,
                         const std::vector<std::pair<double, double>>& thresholds,
                         std::uint64_t n_trials, std::uint64_t master_seed, int threads) {
    threads = std::max(1, threads);
    if (static_cast<std::uint64_t>(threads) > n_trials) {
        threads = static_cast<int>(std::max<std::uint64_t>(1, n_trials));
    }
    if (threads == 1) {
        RunAccumulator acc;
        run_drop_range(p, thresholds, master_seed, 0, n_trials, acc);
        return acc;
    }
    // Per-drop seeding makes the split arbitrary; merge in worker order so the
    // floating-point rate sums are reproducible for a given thread count.
    std::vector<RunAccumulator> parts(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = (n_trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::uint64_t first = chunk * t;
        const std::uint64_t last = std::min(n_trials, first + chunk);
        pool.emplace_back([&, t, first, last] {
            run_drop_range(p, thresholds, master_seed, first, last, parts[t]);
        });
    }
    for (auto& th : pool) th.join();
    RunAccumulator acc;
    acc.pairs.assign(thresholds.size(), PairCount{});
    for (const auto& part : parts) acc.merge(part);
    return acc;
}

CoverageResult result_for_pair(const RunAccumulator& acc, std::size_t j,
                               std::uint64_t n_trials) {
    CoverageResult r;
    r.n_trials = n_trials;
    r.n_direct = acc.n_direct;
    r.n_cascaded = acc.n_cascaded;
    r.n_none = acc.n_none;
    r.covered_direct = acc.pairs[j].covered_direct;
    r.covered_cascaded = acc.pairs[j].covered_cascaded;
    const double n = static_cast<double>(n_trials);
    r.zeta_d_hat = acc.n_direct / n;
    r.zeta_v_hat = acc.n_cascaded / n;
    r.p_d_hat = acc.n_direct ? static_cast<double>(r.covered_direct) / acc.n_direct : 0.0;
    r.p_v_hat =
        acc.n_cascaded ? static_cast<double>(r.covered_cascaded) / acc.n_cascaded : 0.0;
    // Assembled from the conditionals so the case decomposition holds exactly
    // in floating point, not just algebraically.
    r.p_cs = r.zeta_d_hat * r.p_d_hat + r.zeta_v_hat * r.p_v_hat;
    r.ci_halfwidth = wilson_halfwidth(r.covered_direct + r.covered_cascaded, n_trials);
    return r;
}

} // namespace

CoverageResult estimate_coverage(const ScenarioParams& p, double eps1, double eps2,
                                 std::uint64_t n_trials, std::uint64_t master_seed,
                                 int threads) {
    const std::vector<std::pair<double, double>> one{{eps1, eps2}};
    const RunAccumulator acc = run_drops(p, one, n_trials, master_seed, threads);
    return result_for_pair(acc, 0, n_trials);
}

std::vector<CoverageResult> estimate_coverage_grid(
    const ScenarioParams& p, const std::vector<std::pair<double, double>>& thresholds,
    std::uint64_t n_trials, std::uint64_t master_seed, int threads) {
    const RunAccumulator acc = run_drops(p, thresholds, n_trials, master_seed, threads);
    std::vector<CoverageResult> out;
    out.reserve(thresholds.size());
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        out.push_back(result_for_pair(acc, j, n_trials));
    }
    return out;
}

RatePair estimate_rate_pair(const ScenarioParams& p, std::uint64_t n_trials,
                            std::uint64_t master_seed, int threads) {
    const RunAccumulator acc = run_drops(p, {}, n_trials, master_seed, threads);
    RatePair r;
    r.n_trials = n_trials;
    const double n = static_cast<double>(n_trials);
    r.comm_rate = acc.sum_rc / n;
    r.sens_rate = acc.sum_rs / n;
    if (n_trials > 1) {
        const double var_c = std::max(0.0, acc.sum_rc2 / n - r.comm_rate * r.comm_rate);
        const double var_s = std::max(0.0, acc.sum_rs2 / n - r.sens_rate * r.sens_rate);
        r.comm_se = std::sqrt(var_c / (n - 1.0));
        r.sens_se = std::sqrt(var_s / (n - 1.0));
    }
    return r;
}

DistanceSamples sample_distances(const ScenarioParams& p, std::uint64_t n_trials,
                                 std::uint64_t master_seed) {
    DistanceSamples out;
    out.d0l.resize(n_trials);
    out.d0v.resize(n_trials);
    out.ris.resize(n_trials);
    out.eta.resize(n_trials);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Rng rng(master_seed);
    for (std::uint64_t drop = 0; drop < n_trials; ++drop) {
        rng.reseed_stream(master_seed, drop);
        const NetworkRealization net = make_drop(p, rng);
        const DirectCandidate dc = candidate_direct(net);
        out.d0l[drop] = dc.found() ? dc.d_bu : nan;
        const CascadedCandidate cc = candidate_cascaded(net, GreedyTarget::Ris);
        out.ris[drop] = net.ris.empty() ? nan : norm(net.ris[0]);
        if (cc.found()) {
            out.eta[drop] = cc.eta;
            double best = 0.0;
            bool any = false;
            for (std::size_t i = 0; i < net.bs.size(); ++i) {
                if (net.bs_los[i]) continue;
                const double d = norm(net.bs[i]);
                if (!any || d < best) {
                    best = d;
                    any = true;
                }
            }
            out.d0v[drop] = best;
        } else {
            out.eta[drop] = nan;
            out.d0v[drop] = nan;
        }
        switch (associate(net, p).kind) {
        case LinkKind::Direct: ++out.n_direct; break;
        case LinkKind::Cascaded: ++out.n_cascaded; break;
        case LinkKind::None: ++out.n_none; break;
        }
    }
    return out;
}

double wilson_halfwidth(std::uint64_t successes, std::uint64_t n_trials) {
    if (n_trials == 0) return 0.0;
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(n_trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    return z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / (1.0 + z2n);
}

} // namespace riscov
