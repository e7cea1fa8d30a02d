#include "riscov/channel.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace riscov {

using std::numbers::pi;

double GainDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < gain.size(); ++k) m += gain[k] * prob[k];
    return m;
}

double GainDistribution::sample(Rng& rng) const {
    double u = rng.uniform();
    for (std::size_t k = 0; k + 1 < gain.size(); ++k) {
        if (u < prob[k]) return gain[k];
        u -= prob[k];
    }
    return gain.back();
}

double path_loss_direct(double d, double c0, double alpha) {
    assert(d > 0.0);
    return c0 * std::pow(d, -alpha);
}

double path_loss_cascaded(double d1, double d2, double c0, double alpha) {
    assert(d1 > 0.0 && d2 > 0.0);
    return c0 * std::pow(d1 * d2, -alpha);
}

GainDistribution direct_gain_distribution(const ScenarioParams& p) {
    const double pm = std::asin(1.0 / p.m_t) / pi;
    return {{static_cast<double>(p.m_t), p.m_t_side}, {pm, 1.0 - pm}};
}

GainDistribution cascaded_gain_distribution(const ScenarioParams& p) {
    const double pt = std::asin(1.0 / p.m_t) / pi;
    const double pr = std::asin(1.0 / p.n_r) / pi;
    const double nr2 = static_cast<double>(p.n_r) * p.n_r;
    const double ns2 = p.n_r_side * p.n_r_side;
    return {{p.m_t * nr2, p.m_t * ns2, p.m_t_side * nr2, p.m_t_side * ns2},
            {pt * pr, pt * (1.0 - pr), (1.0 - pt) * pr, (1.0 - pt) * (1.0 - pr)}};
}

namespace {
// sin(m u) / sin(u) with the removable singularities at u = k pi handled by a
// series expansion; |result| <= m everywhere.
double dirichlet_ratio(double u, int m) {
    const double k = std::round(u / pi);
    const double v = u - k * pi;
    // sin(m(k pi + v)) / sin(k pi + v) = sign * sin(m v) / sin(v)
    const double sign = (static_cast<long long>(k) * (m - 1)) % 2 == 0 ? 1.0 : -1.0;
    if (std::fabs(v) < 1e-7) {
        const double mm = static_cast<double>(m);
        return sign * mm * (1.0 - (mm * mm - 1.0) * v * v / 6.0);
    }
    return sign * std::sin(m * v) / std::sin(v);
}
} // namespace

double array_factor_tx(double theta1, double theta2, int m) {
    return dirichlet_ratio(0.5 * (std::sin(theta1) - std::sin(theta2)), m);
}

double array_factor_ris(double theta1, double theta2, double phi, int n) {
    return dirichlet_ratio(0.5 * (std::sin(theta1) - std::sin(theta2) + phi), n);
}

double laplace_fading_gain(double s, const GainDistribution& d, double rate) {
    assert(s >= 0.0 && rate > 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < d.gain.size(); ++k) {
        acc += d.prob[k] * rate / (rate + s * d.gain[k]);
    }
    return acc;
}

} // namespace riscov
