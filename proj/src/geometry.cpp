#include "riscov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace riscov {

using std::numbers::pi;

double distance(Point2 a, Point2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Point2 Blockage::end_a() const {
    return {center.x - half_len * std::cos(angle), center.y - half_len * std::sin(angle)};
}

Point2 Blockage::end_b() const {
    return {center.x + half_len * std::cos(angle), center.y + half_len * std::sin(angle)};
}

std::vector<Point2> sample_ppp(double density, double radius, Rng& rng) {
    const int n = rng.poisson(density * pi * radius * radius);
    std::vector<Point2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        const double a = rng.uniform(0.0, 2.0 * pi);
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return pts;
}

std::vector<Blockage> sample_blockages(const ScenarioParams& p, Rng& rng) {
    const double radius = p.window_radius + p.mean_blockage_len;
    const int n = rng.poisson(p.lambda_l * pi * radius * radius);
    std::vector<Blockage> segs;
    segs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        const double a = rng.uniform(0.0, 2.0 * pi);
        const double len = p.blockage_len_mode == BlockageLenMode::Deterministic
                               ? p.mean_blockage_len
                               : rng.uniform(0.0, 2.0 * p.mean_blockage_len);
        segs.push_back({{r * std::cos(a), r * std::sin(a)}, 0.5 * len,
                        rng.uniform(0.0, pi)});
    }
    return segs;
}

double los_probability(double r, double beta) {
    return std::exp(-beta * r);
}

namespace {
inline double cross(Point2 o, Point2 a, Point2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Segment pq vs segment ab; touching counts as intersecting.
bool segments_intersect(Point2 p, Point2 q, Point2 a, Point2 b) {
    const double d1 = cross(a, b, p);
    const double d2 = cross(a, b, q);
    const double d3 = cross(p, q, a);
    const double d4 = cross(p, q, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    auto on_segment = [](Point2 s, Point2 t, Point2 x) {
        return std::min(s.x, t.x) <= x.x && x.x <= std::max(s.x, t.x) &&
               std::min(s.y, t.y) <= x.y && x.y <= std::max(s.y, t.y);
    };
    if (d1 == 0 && on_segment(a, b, p)) return true;
    if (d2 == 0 && on_segment(a, b, q)) return true;
    if (d3 == 0 && on_segment(p, q, a)) return true;
    if (d4 == 0 && on_segment(p, q, b)) return true;
    return false;
}
} // namespace

bool is_los_explicit(Point2 a, Point2 b, const std::vector<Blockage>& blockages) {
    for (const auto& s : blockages) {
        if (segments_intersect(a, b, s.end_a(), s.end_b())) return false;
    }
    return true;
}

OriginLosIndex::OriginLosIndex(const std::vector<Blockage>& blockages, int bins)
    : blockages_(blockages), bins_(bins) {
    const double bin_width = 2.0 * pi / bins;
    for (std::uint32_t i = 0; i < blockages.size(); ++i) {
        const Point2 a = blockages[i].end_a();
        const Point2 b = blockages[i].end_b();
        if (cross({0.0, 0.0}, a, b) == 0.0 &&
            std::min(a.x, b.x) <= 0.0 && 0.0 <= std::max(a.x, b.x) &&
            std::min(a.y, b.y) <= 0.0 && 0.0 <= std::max(a.y, b.y)) {
            // Segment passes through the origin: blocks every direction.
            for (auto& bin : bins_) bin.push_back(i);
            continue;
        }
        const double aa = std::atan2(a.y, a.x);
        double diff = std::remainder(std::atan2(b.y, b.x) - aa, 2.0 * pi);
        const double lo = diff >= 0.0 ? aa : aa + diff;
        const double hi = diff >= 0.0 ? aa + diff : aa;
        const long first = static_cast<long>(std::floor(lo / bin_width));
        const long last = static_cast<long>(std::floor(hi / bin_width));
        for (long k = first; k <= last; ++k) {
            bins_[static_cast<std::size_t>(((k % bins) + bins) % bins)].push_back(i);
        }
    }
}

bool OriginLosIndex::is_los(Point2 p) const {
    const double bin_width = 2.0 * pi / static_cast<double>(bins_.size());
    const long raw = static_cast<long>(std::floor(std::atan2(p.y, p.x) / bin_width));
    const long n = static_cast<long>(bins_.size());
    const auto& bin = bins_[static_cast<std::size_t>(((raw % n) + n) % n)];
    for (std::uint32_t idx : bin) {
        const auto& s = blockages_[idx];
        if (segments_intersect({0.0, 0.0}, p, s.end_a(), s.end_b())) return false;
    }
    return true;
}

void classify_links(NetworkRealization& net, const ScenarioParams& p, Rng& rng) {
    net.bs_los.resize(net.bs.size());
    net.ris_los.resize(net.ris.size());
    if (p.blockage_mode == BlockageMode::Thinning) {
        const double beta = p.beta();
        for (std::size_t i = 0; i < net.bs.size(); ++i) {
            net.bs_los[i] = rng.uniform() < los_probability(norm(net.bs[i]), beta);
        }
        for (std::size_t i = 0; i < net.ris.size(); ++i) {
            net.ris_los[i] = rng.uniform() < los_probability(norm(net.ris[i]), beta);
        }
        return;
    }
    const OriginLosIndex index(net.blockages);
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        net.bs_los[i] = index.is_los(net.bs[i]);
    }
    for (std::size_t i = 0; i < net.ris.size(); ++i) {
        net.ris_los[i] = index.is_los(net.ris[i]);
    }
}

NetworkRealization sample_realization(const ScenarioParams& p, std::uint64_t seed,
                                      std::uint64_t drop_index) {
    Rng rng(seed, drop_index);
    NetworkRealization net;
    net.bs = sample_ppp(p.lambda_b, p.window_radius, rng);
    net.ris = sample_ppp(p.lambda_r, p.window_radius, rng);
    if (p.blockage_mode == BlockageMode::Explicit) {
        net.blockages = sample_blockages(p, rng);
    }
    classify_links(net, p, rng);
    return net;
}

double los_bs_density(double r, double lambda_b, double beta) {
    return lambda_b * std::exp(-beta * r);
}

double nlos_bs_density(double r, double lambda_b, double beta) {
    return lambda_b * -std::expm1(-beta * r);
}

double vlos_bs_density(double r, double lambda_b, double lambda_r, double beta) {
    if (beta <= 0.0) return 0.0;
    const double p_los_ris_exists = -std::expm1(-2.0 * pi * lambda_r / (beta * beta));
    return nlos_bs_density(r, lambda_b, beta) * p_los_ris_exists;
}

AscendingRadiusStream::AscendingRadiusStream(double density, double disk_radius, Rng& rng)
    : remaining_(rng.poisson(density * pi * disk_radius * disk_radius)),
      u_(0.0),
      radius2_(disk_radius * disk_radius) {}

bool AscendingRadiusStream::next(Rng& rng, double& r) {
    if (remaining_ <= 0) return false;
    u_ = 1.0 - (1.0 - u_) * std::pow(1.0 - rng.uniform(), 1.0 / remaining_);
    --remaining_;
    r = std::sqrt(u_ * radius2_);
    return true;
}

} // namespace riscov
