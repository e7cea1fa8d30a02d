#include "riscov/analytic_dist.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "riscov/quadrature.hpp"

namespace riscov {

namespace {
constexpr double kPi = std::numbers::pi;
// Void exponent beyond which the residual nearest-point mass (< e^-40) is
// treated as zero when picking a truncation radius.
constexpr double kVoidExponentCut = 40.0;
} // namespace

double one_minus_exp1p(double u) {
    if (u <= 0.0) return 0.0;
    if (u > 0.25) return 1.0 - std::exp(-u) * (1.0 + u);
    // sum_{n>=2} (-1)^n (n-1)/n! u^n
    double pow_term = u * u;
    double fact = 2.0;
    double sign = 1.0;
    double sum = 0.0;
    for (int n = 2; n <= 16; ++n) {
        sum += sign * (n - 1) * pow_term / fact;
        pow_term *= u;
        fact *= n + 1;
        sign = -sign;
    }
    return sum;
}

double los_radial_measure(double lambda, double beta, double x) {
    if (lambda <= 0.0 || x <= 0.0) return 0.0;
    if (beta <= 0.0) return 0.5 * lambda * x * x;
    return lambda * one_minus_exp1p(beta * x) / (beta * beta);
}

double nlos_radial_measure(double lambda, double beta, double x) {
    if (lambda <= 0.0 || x <= 0.0 || beta <= 0.0) return 0.0;
    return lambda * (0.5 * x * x - one_minus_exp1p(beta * x) / (beta * beta));
}

double ris_void_probability(const ScenarioParams& p) {
    return std::exp(-2.0 * kPi * los_radial_measure(p.lambda_r, p.beta(), p.window_radius));
}

double vlos_scale(const ScenarioParams& p) {
    return -std::expm1(-2.0 * kPi * los_radial_measure(p.lambda_r, p.beta(), p.window_radius));
}

double vlos_radial_measure(const ScenarioParams& p, double x) {
    return vlos_scale(p) * nlos_radial_measure(p.lambda_b, p.beta(), x);
}

namespace {

// Smallest radius whose void exponent reaches the cut, capped at the window.
double support_radius(const std::function<double(double)>& exponent, double window) {
    if (exponent(window) <= kVoidExponentCut) return window;
    double lo = 0.0, hi = window;
    while (hi - lo > 1e-9 * window) {
        const double mid = 0.5 * (lo + hi);
        (exponent(mid) < kVoidExponentCut ? lo : hi) = mid;
    }
    return hi;
}

DistanceDistribution defective_nearest(std::function<double(double)> density,
                                       std::function<double(double)> radial_measure,
                                       double window) {
    DistanceDistribution d;
    auto exponent = [radial_measure](double x) { return 2.0 * kPi * radial_measure(x); };
    d.support_hi = support_radius(exponent, window);
    const double hi = d.support_hi;
    d.total_mass = -std::expm1(-exponent(hi));
    d.cdf = [exponent, hi](double x) {
        if (x <= 0.0) return 0.0;
        return -std::expm1(-exponent(std::min(x, hi)));
    };
    d.pdf = [density, exponent, hi](double x) {
        if (x <= 0.0 || x > hi) return 0.0;
        return 2.0 * kPi * density(x) * x * std::exp(-exponent(x));
    };
    return d;
}

} // namespace

DistanceDistribution nearest_los_bs_dist(const ScenarioParams& p) {
    const double lam = p.lambda_b, beta = p.beta();
    return defective_nearest(
        [lam, beta](double r) { return lam * std::exp(-beta * r); },
        [lam, beta](double x) { return los_radial_measure(lam, beta, x); },
        p.window_radius);
}

DistanceDistribution nearest_vlos_bs_dist(const ScenarioParams& p) {
    const double lam = p.lambda_b, beta = p.beta();
    const double scale = vlos_scale(p);
    return defective_nearest(
        [lam, beta, scale](double r) { return scale * lam * (-std::expm1(-beta * r)); },
        [lam, beta, scale](double x) { return scale * nlos_radial_measure(lam, beta, x); },
        p.window_radius);
}

DistanceDistribution nearest_los_ris_dist(const ScenarioParams& p) {
    const double lam = p.lambda_r, beta = p.beta();
    return defective_nearest(
        [lam, beta](double r) { return lam * std::exp(-beta * r); },
        [lam, beta](double x) { return los_radial_measure(lam, beta, x); },
        p.window_radius);
}

double lens_vlos_measure(const ScenarioParams& p, double c, double y) {
    if (c <= 0.0 || y <= 0.0) return 0.0;
    const double scale = vlos_scale(p);
    const double beta = p.beta();
    if (scale <= 0.0 || p.lambda_b <= 0.0 || beta <= 0.0) return 0.0;
    const double lam = p.lambda_b;
    const double window = p.window_radius;
    auto radial = [&](double r) {
        return scale * nlos_radial_measure(lam, beta, std::clamp(r, 0.0, window));
    };
    const double cy = c / y; // bound on the BS-to-RIS hop
    auto wedge = [&](double t) {
        const double sn = y * std::sin(t);
        const double s2 = cy * cy - sn * sn;
        if (s2 <= 0.0) return 0.0;
        const double s = std::sqrt(s2);
        const double mid = y * std::cos(t);
        const double r_hi = mid + s;
        if (r_hi <= 0.0) return 0.0;
        return radial(r_hi) - radial(std::max(0.0, mid - s));
    };
    const double ratio = cy / y;
    double total = 0.0;
    if (ratio >= 1.0) {
        // Whole bearing range contributes; split at pi/2 where the lower
        // radial clamp switches on.
        total += integrate_1d(wedge, 0.0, 0.5 * kPi, 1e-9, 1e-16, 40000).value;
        total += integrate_1d(wedge, 0.5 * kPi, kPi, 1e-9, 1e-16, 40000).value;
    } else {
        total = integrate_1d(wedge, 0.0, std::asin(ratio), 1e-9, 1e-16, 40000).value;
    }
    return 2.0 * total;
}

double cascaded_cdf_given_ris(const ScenarioParams& p, double eta, double y) {
    return -std::expm1(-lens_vlos_measure(p, eta, y));
}

CascadedLengthDist::CascadedLengthDist(const ScenarioParams& p)
    : p_(p), ris_(nearest_los_ris_dist(p)) {
    const double y_hi = ris_.support_hi;
    const double eta_cap = y_hi * (y_hi + p.window_radius);
    mass_ = exact_cdf(eta_cap);
    if (mass_ <= 0.0) {
        support_hi_ = eta_cap > 0.0 ? eta_cap : 1.0;
        cache_.x = {0.0, support_hi_};
        cache_.y = {0.0, 0.0};
        return;
    }
    // Smallest eta carrying all but a 1e-7 sliver of the mass.
    double lo = 0.0, hi = eta_cap;
    const double target = mass_ * (1.0 - 1e-7);
    for (int i = 0; i < 60 && hi - lo > 1e-6 * eta_cap; ++i) {
        const double mid = 0.5 * (lo + hi);
        (exact_cdf(mid) < target ? lo : hi) = mid;
    }
    support_hi_ = hi;
    const int n = 400;
    cache_.x.reserve(n + 2);
    cache_.y.reserve(n + 2);
    const double t_hi = std::sqrt(support_hi_);
    for (int i = 0; i <= n; ++i) {
        const double t = t_hi * static_cast<double>(i) / n;
        cache_.x.push_back(t * t);
        cache_.y.push_back(i == 0 ? 0.0 : exact_cdf(t * t));
    }
    if (eta_cap > support_hi_) {
        cache_.x.push_back(eta_cap);
        cache_.y.push_back(mass_);
    }
    for (std::size_t i = 1; i < cache_.y.size(); ++i) {
        cache_.y[i] = std::max(cache_.y[i], cache_.y[i - 1]);
    }
}

double CascadedLengthDist::exact_cdf(double eta) const {
    if (eta <= 0.0 || ris_.total_mass <= 0.0) return 0.0;
    auto f = [&](double y) {
        const double py = ris_.pdf(y);
        if (py <= 0.0) return 0.0;
        return py * cascaded_cdf_given_ris(p_, eta, y);
    };
    return integrate_1d(f, 0.0, ris_.support_hi, 1e-7, 1e-12, 60000).value;
}

double CascadedLengthDist::pdf(double eta) const {
    if (eta <= 0.0) return 0.0;
    const double h = std::max(1e-3 * eta, 1e-2);
    const double lo = std::max(0.0, eta - h);
    return (exact_cdf(eta + h) - exact_cdf(lo)) / (eta + h - lo);
}

DistanceDistribution CascadedLengthDist::as_distribution() const {
    auto self = std::make_shared<CascadedLengthDist>(*this);
    DistanceDistribution d;
    d.support_hi = support_hi_;
    d.total_mass = mass_;
    d.pdf = [self](double eta) { return self->pdf(eta); };
    d.cdf = [self](double eta) { return self->cdf(eta); };
    return d;
}

AssociationProbabilities analytic_association_split(const ScenarioParams& p,
                                              const CascadedLengthDist& cascade) {
    AssociationProbabilities a;
    const DistanceDistribution dl = nearest_los_bs_dist(p);
    a.zbar_d = dl.total_mass;
    a.zbar_v = nearest_vlos_bs_dist(p).total_mass;
    const double k = p.n_r_pow_2_over_alpha();
    const double m_eta = cascade.total_mass();
    if (a.zbar_d <= 0.0) {
        a.zeta_d = 0.0;
        a.zeta_v = m_eta;
        return a;
    }
    a.zeta_d = integrate_1d(
                   [&](double x) { return dl.pdf(x) * (1.0 - cascade.cdf(k * x)); },
                   0.0, dl.support_hi, 1e-8, 1e-13, 200000)
                   .value;
    a.zeta_v = (1.0 - a.zbar_d) * m_eta +
               integrate_1d([&](double x) { return dl.pdf(x) * cascade.cdf(k * x); }, 0.0,
                            dl.support_hi, 1e-8, 1e-13, 200000)
                   .value;
    return a;
}

AssociationProbabilities analytic_association_split(const ScenarioParams& p) {
    return analytic_association_split(p, CascadedLengthDist(p));
}

} // namespace riscov
