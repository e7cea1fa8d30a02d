#include "riscov/analytic_cov.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "riscov/interp.hpp"

namespace riscov {

namespace {

constexpr double kPi = std::numbers::pi;
// Inner tensor rules target ~1e-3 relative accuracy on the Laplace
// functionals; folded into the reported error budget as a flat allowance.
constexpr double kInnerRelAllowance = 2e-3;

// 1 - sum_k b_k/(1+t_k), computed as sum_k b_k t_k/(1+t_k). The complement
// form keeps the exclusion-region exponents free of large-term cancellation.
double kernel_complement(const GainDistribution& g, double v) {
    double s = 0.0;
    for (std::size_t k = 0; k < g.gain.size(); ++k) {
        const double t = v * g.gain[k];
        s += g.prob[k] * (t >= 1e300 ? 1.0 : t / (1.0 + t));
    }
    assert(s >= 0.0 && s <= 1.0 + 1e-12); // the inner bracket is a probability
    return std::min(s, 1.0);
}

double dist_bb(double x, double r, double cos_phi) {
    const double d2 = x * x + r * r - 2.0 * x * r * cos_phi;
    return d2 > 1e-18 ? std::sqrt(d2) : 1e-9;
}

// Blocked bearing half-angle at radius r for the lens d_br < cy.
double blocked_theta(double r, double y, double cy) {
    if (r + y <= cy) return kPi;
    if (std::abs(r - y) >= cy) return 0.0;
    const double ct = (r * r + y * y - cy * cy) / (2.0 * r * y);
    return std::acos(std::clamp(ct, -1.0, 1.0));
}

// Largest RIS distance y for which the lens d_br < c/y covers the whole
// window: window + y <= c/y, i.e. the positive root of y^2 + window*y = c.
double plateau_radius(double c, double window) {
    if (c <= 0.0) return 0.0;
    return 0.5 * (std::sqrt(window * window + 4.0 * c) - window);
}

void append_segment(std::vector<double>& grid, double a, double b, int n) {
    if (b - a <= 1e-9 || n <= 0) return;
    for (int i = 1; i <= n; ++i) grid.push_back(a + (b - a) * i / n);
}

// Angle-averaged sensing-kernel complement around a serving point at x:
// (1/pi) * int_0^pi [1 - K_s(d_bb(r,phi))] dphi, tabulated on a graded
// radial grid refined where d_bb can enter the kernel's saturated zone.
PiecewiseLinear build_stilde(double x, double T, const ScenarioParams& p,
                             const CovTuning& t, const GainDistribution& gd) {
    const double window = p.window_radius;
    const double W = std::pow(T, 1.0 / p.alpha);
    const double core_lo = std::clamp(x - 6.0 * W, 0.0, window);
    const double core_hi = std::clamp(x + 8.0 * W, core_lo, window);
    std::vector<double> grid{0.0};
    append_segment(grid, 0.0, core_lo, t.stilde_wing);
    append_segment(grid, core_lo, core_hi, t.stilde_core);
    append_segment(grid, core_hi, window, t.stilde_tail);
    const GaussRule full = gauss_rule(2 * t.phi_nodes);
    const GaussRule half = gauss_rule(t.phi_nodes);
    auto phi_avg = [&](const GaussRule& g, double a, double b, double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double phi = 0.5 * (a + b) + 0.5 * (b - a) * g.x[j];
            const double d = dist_bb(x, r, std::cos(phi));
            s += g.w[j] * kernel_complement(gd, T * std::pow(d, -p.alpha));
        }
        return 0.5 * (b - a) * s;
    };
    PiecewiseLinear pl;
    pl.x = grid;
    pl.y.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        double val;
        double cphic = 2.0;
        if (x > 0.0 && r > 0.0) cphic = (x * x + r * r - 16.0 * W * W) / (2.0 * x * r);
        if (cphic > -1.0 && cphic < 1.0) {
            const double phic = std::acos(cphic);
            val = phi_avg(half, 0.0, phic, r) + phi_avg(half, phic, kPi, r);
        } else {
            val = phi_avg(full, 0.0, kPi, r);
        }
        pl.y[i] = val / kPi;
    }
    return pl;
}

// Bearing-integrated comm-kernel complement over the allowed bearings:
// 2 * int_{theta_c(r)}^{pi} [1 - K_c(d_br(r,theta) * y)] dtheta.
PiecewiseLinear build_ctilde(double y, double c, double q, const ScenarioParams& p,
                             const CovTuning& t, const GainDistribution& gv) {
    const double window = p.window_radius;
    const double cy = c / y;
    const double k1 = std::clamp(std::abs(y - cy), 0.0, window);
    const double k2 = std::clamp(y + cy, k1, window);
    std::vector<double> grid{0.0};
    append_segment(grid, 0.0, k1, t.ctilde_pre);
    append_segment(grid, k1, k2, t.ctilde_mid);
    append_segment(grid, k2, window, t.ctilde_tail);
    const GaussRule g = gauss_rule(t.theta_nodes);
    PiecewiseLinear pl;
    pl.x = grid;
    pl.y.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const double thc = blocked_theta(r, y, cy);
        if (thc >= kPi) {
            pl.y[i] = 0.0;
            continue;
        }
        double s = 0.0;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const double th = 0.5 * (thc + kPi) + 0.5 * (kPi - thc) * g.x[j];
            const double dbr =
                std::sqrt(std::max(1e-18, r * r + y * y - 2.0 * r * y * std::cos(th)));
            s += g.w[j] * kernel_complement(gv, q * std::pow(dbr * y, -p.alpha));
        }
        pl.y[i] = (kPi - thc) * s; // includes the fold factor 2 and the half-width
    }
    return pl;
}

struct RadialRule {
    std::vector<double> r;
    std::vector<double> w;
};

RadialRule make_radial(std::vector<double> knots, double window, int panel_nodes) {
    knots.push_back(0.0);
    knots.push_back(window);
    for (double& k : knots) k = std::clamp(k, 0.0, window);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) { return b - a < 1e-9; }),
                knots.end());
    const int npanels = static_cast<int>(knots.size()) - 1;
    const GaussRule g = gauss_rule(npanels <= 12 ? panel_nodes : 8);
    RadialRule rr;
    rr.r.reserve(g.x.size() * npanels);
    rr.w.reserve(g.x.size() * npanels);
    for (int pnl = 0; pnl < npanels; ++pnl) {
        const double a = knots[pnl], b = knots[pnl + 1];
        if (b - a < 1e-9) continue;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            rr.r.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.x[j]);
            rr.w.push_back(0.5 * (b - a) * g.w[j]);
        }
    }
    return rr;
}

struct OuterReport {
    double value = 0.0;
    double abs_error = 0.0;
    long long evaluations = 0;
    bool converged = true;
};

double quantile_of(const std::function<double(double)>& cdf, double mass, double hi,
                   double frac) {
    const double target = mass * frac;
    double lo = 0.0, h = hi;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + h);
        (cdf(mid) < target ? lo : h) = mid;
    }
    return h;
}

template <typename F>
OuterReport outer_integrate(const F& f, const std::vector<double>& pieces,
                            const CovTuning& t, int fixed_nodes) {
    OuterReport rep;
    if (t.outer_fixed_gauss) {
        const GaussRule g = gauss_rule(fixed_nodes);
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            const double a = pieces[i], b = pieces[i + 1];
            if (b - a <= 0.0) continue;
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                rep.value += 0.5 * (b - a) * g.w[j] * f(0.5 * (a + b) + 0.5 * (b - a) * g.x[j]);
                ++rep.evaluations;
            }
        }
        rep.abs_error = 0.01 * std::abs(rep.value); // nominal fast-mode budget
        return rep;
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double a = pieces[i], b = pieces[i + 1];
        if (b - a <= 0.0) continue;
        const QuadratureReport q =
            integrate_1d(f, a, b, t.outer_rel_tol, 1e-7, t.outer_max_evals * 15);
        rep.value += q.value;
        rep.abs_error += q.abs_error;
        rep.evaluations += q.evaluations;
        rep.converged = rep.converged && q.converged;
    }
    return rep;
}

double noise_factor_direct(double x, double e1, double e2, const ScenarioParams& p) {
    const double xa = std::pow(x, p.alpha);
    const double s_c = p.rho_d * e1 * xa * p.sigma_c2 / (p.c0 * p.m_t);
    const double s_s = e2 * xa * xa * p.sigma_s2 / (p.p_s * p.c0 * p.m_t * p.m_r);
    return std::exp(-s_c - s_s);
}

double noise_factor_cascaded(double eta, double e1, double e2, const ScenarioParams& p) {
    const double nr2 = static_cast<double>(p.n_r) * p.n_r;
    const double ea = std::pow(eta, p.alpha);
    const double s_c = p.rho_v * e1 * ea * p.sigma_c2 / (p.c0 * p.m_t * nr2);
    const double s_s =
        e2 * ea * ea * p.sigma_s2 / (p.p_s * p.c0 * p.m_t * p.m_r * nr2 * nr2);
    return std::exp(-s_c - s_s);
}

} // namespace

CovTuning CovTuning::fast() {
    CovTuning t;
    t.outer_fixed_gauss = true;
    t.outer_x_nodes = 16;
    t.outer_eta_nodes = 12;
    t.xy_nodes = 16;
    t.theta_nodes = 20;
    t.phi_nodes = 12;
    t.radial_panel_nodes = 24;
    t.stilde_wing = 32;
    t.stilde_core = 96;
    t.stilde_tail = 48;
    t.ctilde_pre = 24;
    t.ctilde_mid = 48;
    t.ctilde_tail = 32;
    return t;
}

CoverageEvaluator::CoverageEvaluator(const ScenarioParams& p, const CovTuning& t)
    : p_(p),
      t_(t),
      gain_d_(direct_gain_distribution(p)),
      gain_v_(cascaded_gain_distribution(p)),
      f_dl_(nearest_los_bs_dist(p)),
      f_dv_(nearest_vlos_bs_dist(p)),
      f_y_(nearest_los_ris_dist(p)),
      k_(p.n_r_pow_2_over_alpha()),
      vscale_(vlos_scale(p)),
      void_(ris_void_probability(p)) {
    p_.validate();
}

CoverageEvaluator::~CoverageEvaluator() = default;

const CascadedLengthDist& CoverageEvaluator::cascade() const {
    std::call_once(casc_once_, [this] {
        casc_ = std::make_unique<CascadedLengthDist>(p_);
        assoc_ = std::make_unique<AssociationProbabilities>(
            analytic_association_split(p_, *casc_));
    });
    return *casc_;
}

const AssociationProbabilities& CoverageEvaluator::association() const {
    cascade();
    return *assoc_;
}

void CoverageEvaluator::direct_point(double x, double e1, double e2, bool want_xi,
                                     bool want_gamma, double* xi_out,
                                     double* gamma_out) const {
    double xi = 1.0, gamma = 1.0;
    const bool any_threshold = e1 > 0.0 || e2 > 0.0;
    if (p_.lambda_b > 0.0 && any_threshold && x > 0.0) {
        const double window = p_.window_radius;
        const double beta = p_.beta();
        const double xa = std::pow(x, p_.alpha);
        const double q1 = e1 * xa / p_.m_t;
        const double q2 = (p_.rho_d / p_.rho_v) * e1 * xa / p_.m_t;
        const double T =
            e2 > 0.0 ? e2 * xa * xa / (p_.rho_ds * p_.p_s * p_.m_t * p_.m_r) : 0.0;
        std::optional<PiecewiseLinear> st;
        if (T > 0.0) st = build_stilde(x, T, p_, t_, gain_d_);

        const bool gamma_active = want_gamma && vscale_ > 0.0;
        const double c = k_ * x;
        const GaussRule gy = gauss_rule(t_.xy_nodes);
        std::vector<double> ys, wy;
        double plateau = 0.0;
        if (gamma_active) {
            const double y_hi = f_y_.support_hi;
            // below y_flat the exclusion lens swallows the whole window, the
            // exponent is exactly 0, and the mixture integrand steps to 1;
            // that prefix is added in closed form so the quadrature only sees
            // the smooth part
            const double y_flat = std::min(plateau_radius(c, window), y_hi);
            plateau = f_y_.cdf(y_flat);
            // sqrt-graded substitution: the integrand's boundary layer sits
            // just above y_flat, so cluster nodes there
            const double span = y_hi - y_flat;
            double wsum = 0.0;
            for (std::size_t j = 0; j < gy.x.size(); ++j) {
                const double u = 0.5 * (1.0 + gy.x[j]);
                const double y = y_flat + span * u * u;
                const double w = gy.w[j] * span * u * f_y_.pdf(y);
                ys.push_back(y);
                wy.push_back(w);
                wsum += w;
            }
            // renormalize so the zero-threshold limit returns exactly 1
            if (wsum > 0.0) {
                const double scale = std::max(0.0, vscale_ - plateau) / wsum;
                for (double& w : wy) w *= scale;
            }
        }

        std::vector<double> knots{x, window / 8.0, window / 4.0, window / 2.0};
        if (T > 0.0) {
            const double W = std::pow(T, 1.0 / p_.alpha);
            knots.push_back(std::clamp(x - 6.0 * W, 0.0, window));
            knots.push_back(std::clamp(x + 8.0 * W, 0.0, window));
        }
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double cy = c / ys[j];
            knots.push_back(std::clamp(std::abs(ys[j] - cy), 0.0, window));
            knots.push_back(std::clamp(ys[j] + cy, 0.0, window));
        }
        const RadialRule rr = make_radial(std::move(knots), window, t_.radial_panel_nodes);
        const std::size_t n = rr.r.size();
        std::vector<double> st_vals(n, 0.0);
        if (st) {
            for (std::size_t i = 0; i < n; ++i) st_vals[i] = (*st)(rr.r[i]);
        }

        if (want_xi) {
            if (!p_.xi1_intensity_at_bb) {
                double exponent = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = rr.r[i];
                    if (r < x) continue;
                    const double kcc =
                        e1 > 0.0 ? kernel_complement(gain_d_, q1 * std::pow(r, -p_.alpha))
                                 : 0.0;
                    const double bracket = kcc + (1.0 - kcc) * st_vals[i];
                    assert(bracket >= 0.0 && bracket <= 1.0 + 1e-12);
                    exponent += rr.w[i] * p_.lambda_b * std::exp(-beta * r) * r *
                                2.0 * kPi * bracket;
                }
                xi = std::exp(-exponent);
            } else {
                // Literal display form: the LoS intensity is evaluated at the
                // interferer-to-serving-BS distance instead of the radius.
                const double W = T > 0.0 ? std::pow(T, 1.0 / p_.alpha) : 0.0;
                const GaussRule half = gauss_rule(t_.phi_nodes);
                const GaussRule full = gauss_rule(2 * t_.phi_nodes);
                auto inner = [&](double r) {
                    auto seg = [&](const GaussRule& g, double a, double b) {
                        double s = 0.0;
                        for (std::size_t j = 0; j < g.x.size(); ++j) {
                            const double phi =
                                0.5 * (a + b) + 0.5 * (b - a) * g.x[j];
                            const double d = dist_bb(x, r, std::cos(phi));
                            const double kcc =
                                e1 > 0.0 ? kernel_complement(
                                               gain_d_, q1 * std::pow(r, -p_.alpha))
                                         : 0.0;
                            const double ks =
                                T > 0.0 ? kernel_complement(gain_d_,
                                                            T * std::pow(d, -p_.alpha))
                                        : 0.0;
                            s += g.w[j] * p_.lambda_b * std::exp(-beta * d) *
                                 (kcc + (1.0 - kcc) * ks);
                        }
                        return 0.5 * (b - a) * s;
                    };
                    double cphic = 2.0;
                    if (x > 0.0 && r > 0.0 && W > 0.0) {
                        cphic = (x * x + r * r - 16.0 * W * W) / (2.0 * x * r);
                    }
                    double s;
                    if (cphic > -1.0 && cphic < 1.0) {
                        const double phic = std::acos(cphic);
                        s = seg(half, 0.0, phic) + seg(half, phic, kPi);
                    } else {
                        s = seg(full, 0.0, kPi);
                    }
                    return 2.0 * r * s;
                };
                double exponent = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (rr.r[i] < x) continue;
                    exponent += rr.w[i] * inner(rr.r[i]);
                }
                xi = std::exp(-exponent);
            }
        }

        if (gamma_active) {
            double acc = 0.0;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                const double y = ys[j];
                const double cy = c / y;
                const PiecewiseLinear ct = build_ctilde(y, c, q2, p_, t_, gain_v_);
                double exponent = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = rr.r[i];
                    const double lam_v =
                        vscale_ * p_.lambda_b * (-std::expm1(-beta * r));
                    const double ctv = ct(r);
                    const double free_ang = 2.0 * (kPi - blocked_theta(r, y, cy));
                    exponent +=
                        rr.w[i] * lam_v * r *
                        (ctv + st_vals[i] * std::max(0.0, free_ang - ctv));
                }
                acc += wy[j] * std::exp(-exponent);
            }
            gamma = std::clamp(void_ + plateau + acc, 0.0, 1.0);
        }
    }
    if (xi_out) *xi_out = xi;
    if (gamma_out) *gamma_out = gamma;
}

void CoverageEvaluator::cascaded_point(double eta, double e1, double e2, bool want_xi,
                                       bool want_gamma, double* xi_out,
                                       double* gamma_out) const {
    double xi = 1.0, gamma = 1.0;
    const bool any_threshold = e1 > 0.0 || e2 > 0.0;
    if (p_.lambda_b > 0.0 && vscale_ > 0.0 && f_dv_.total_mass > 0.0 &&
        f_y_.total_mass > 0.0 && any_threshold && eta > 0.0) {
        const double window = p_.window_radius;
        const double beta = p_.beta();
        const double nr2 = static_cast<double>(p_.n_r) * p_.n_r;
        const double ea = std::pow(eta, p_.alpha);
        const double q3 = (p_.rho_v / p_.rho_d) * e1 * ea / (p_.m_t * nr2);
        const double q4 = e1 * ea / (p_.m_t * nr2);
        const double T = e2 > 0.0 ? e2 * ea * ea /
                                        (p_.rho_ds * p_.p_s * p_.m_t * p_.m_r * nr2 * nr2)
                                  : 0.0;
        const double r_lo = eta / k_;

        // serving-BS distance expectation only matters through the sensing
        // geometry; without a sensing threshold a single profile suffices
        const GaussRule gxy = gauss_rule(t_.xy_nodes);
        std::vector<double> xs, wx;
        if (T > 0.0) {
            const double x_hi = f_dv_.support_hi;
            double wsum = 0.0;
            for (std::size_t j = 0; j < gxy.x.size(); ++j) {
                const double xv = 0.5 * x_hi * (1.0 + gxy.x[j]);
                const double w = 0.5 * x_hi * gxy.w[j] * f_dv_.pdf(xv);
                xs.push_back(xv);
                wx.push_back(w);
                wsum += w;
            }
            if (wsum > 0.0) {
                for (double& w : wx) w /= wsum;
            }
        } else {
            xs.push_back(0.0);
            wx.push_back(1.0);
        }

        std::vector<double> ys, wy;
        double plateau_frac = 0.0;
        if (want_gamma) {
            const double y_hi = f_y_.support_hi;
            // see direct_point: below y_flat the whole window is excluded and
            // the integrand is exactly 1, so that mass is added in closed form
            const double y_flat = std::min(plateau_radius(eta, window), y_hi);
            plateau_frac = f_y_.cdf(y_flat) / f_y_.total_mass;
            // sqrt-graded as in direct_point: resolves the layer above y_flat
            const double span = y_hi - y_flat;
            double wsum = 0.0;
            for (std::size_t j = 0; j < gxy.x.size(); ++j) {
                const double u = 0.5 * (1.0 + gxy.x[j]);
                const double y = y_flat + span * u * u;
                const double w = gxy.w[j] * span * u * f_y_.pdf(y);
                ys.push_back(y);
                wy.push_back(w);
                wsum += w;
            }
            if (wsum > 0.0) {
                const double scale = std::max(0.0, 1.0 - plateau_frac) / wsum;
                for (double& w : wy) w *= scale;
            }
        }

        std::vector<double> knots{r_lo, window / 8.0, window / 4.0, window / 2.0};
        if (T > 0.0) {
            const double W = std::pow(T, 1.0 / p_.alpha);
            for (const double xv : xs) {
                knots.push_back(std::clamp(xv - 6.0 * W, 0.0, window));
                knots.push_back(std::clamp(xv + 8.0 * W, 0.0, window));
            }
        }
        for (const double y : ys) {
            const double cy = eta / y;
            knots.push_back(std::clamp(std::abs(y - cy), 0.0, window));
            knots.push_back(std::clamp(y + cy, 0.0, window));
        }
        const RadialRule rr = make_radial(std::move(knots), window, t_.radial_panel_nodes);
        const std::size_t n = rr.r.size();

        std::vector<std::vector<double>> st_vals(xs.size());
        for (std::size_t a = 0; a < xs.size(); ++a) {
            st_vals[a].assign(n, 0.0);
            if (T > 0.0) {
                const PiecewiseLinear st = build_stilde(xs[a], T, p_, t_, gain_d_);
                for (std::size_t i = 0; i < n; ++i) st_vals[a][i] = st(rr.r[i]);
            }
        }

        if (want_xi) {
            std::vector<double> base(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double r = rr.r[i];
                if (r < r_lo) {
                    base[i] = -1.0; // excluded
                    continue;
                }
                base[i] = e1 > 0.0
                              ? kernel_complement(gain_d_, q3 * std::pow(r, -p_.alpha))
                              : 0.0;
            }
            double mix = 0.0;
            for (std::size_t a = 0; a < xs.size(); ++a) {
                double exponent = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (base[i] < 0.0) continue;
                    const double r = rr.r[i];
                    const double bracket =
                        base[i] + (1.0 - base[i]) * st_vals[a][i];
                    exponent += rr.w[i] * p_.lambda_b * std::exp(-beta * r) * r *
                                2.0 * kPi * bracket;
                }
                mix += wx[a] * std::exp(-exponent);
            }
            xi = std::min(mix, 1.0);
        }

        if (want_gamma) {
            std::vector<double> lam_r(n);
            for (std::size_t i = 0; i < n; ++i) {
                lam_r[i] = rr.w[i] * vscale_ * p_.lambda_b *
                           (-std::expm1(-beta * rr.r[i])) * rr.r[i];
            }
            double mix = plateau_frac;
            for (std::size_t b = 0; b < ys.size(); ++b) {
                const double y = ys[b];
                const double cy = eta / y;
                const PiecewiseLinear ct = build_ctilde(y, eta, q4, p_, t_, gain_v_);
                // exponent = comm-only part + sensing-weighted remainder
                std::vector<double> gpart(n);
                double base_exp = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double r = rr.r[i];
                    const double ctv = ct(r);
                    const double free_ang = 2.0 * (kPi - blocked_theta(r, y, cy));
                    base_exp += lam_r[i] * ctv;
                    gpart[i] = lam_r[i] * std::max(0.0, free_ang - ctv);
                }
                for (std::size_t a = 0; a < xs.size(); ++a) {
                    double exponent = base_exp;
                    if (T > 0.0) {
                        const std::vector<double>& sv = st_vals[a];
                        for (std::size_t i = 0; i < n; ++i) {
                            exponent += gpart[i] * sv[i];
                        }
                    }
                    mix += wy[b] * wx[a] * std::exp(-exponent);
                }
            }
            gamma = std::clamp(mix, 0.0, 1.0);
        }
    }
    if (xi_out) *xi_out = xi;
    if (gamma_out) *gamma_out = gamma;
}

double CoverageEvaluator::xi1_los(double x, double e1, double e2) const {
    double xi;
    direct_point(x, e1, e2, true, false, &xi, nullptr);
    return xi;
}

double CoverageEvaluator::gamma1_vlos(double x, double e1, double e2) const {
    double gamma;
    direct_point(x, e1, e2, false, true, nullptr, &gamma);
    return gamma;
}

double CoverageEvaluator::xi2_los(double eta, double e1, double e2) const {
    double xi;
    cascaded_point(eta, e1, e2, true, false, &xi, nullptr);
    return xi;
}

double CoverageEvaluator::gamma2_vlos(double eta, double e1, double e2) const {
    double gamma;
    cascaded_point(eta, e1, e2, false, true, nullptr, &gamma);
    return gamma;
}

CoverageEvaluator::TermReport CoverageEvaluator::direct_term(double e1,
                                                             double e2) const {
    TermReport rep;
    if (f_dl_.total_mass <= 0.0) return rep;
    const CascadedLengthDist& cd = cascade();
    auto f = [&](double x) {
        const double pdf = f_dl_.pdf(x);
        if (pdf <= 0.0) return 0.0;
        double xi, gamma;
        direct_point(x, e1, e2, true, true, &xi, &gamma);
        return pdf * noise_factor_direct(x, e1, e2, p_) * xi * gamma *
               (1.0 - cd.cdf(k_ * x));
    };
    const double hi = f_dl_.support_hi;
    const double mid = quantile_of(f_dl_.cdf, f_dl_.total_mass, hi, 0.5);
    const OuterReport o = outer_integrate(f, {0.0, mid, hi}, t_, t_.outer_x_nodes);
    rep.value = o.value;
    rep.abs_error = o.abs_error;
    rep.evaluations = o.evaluations;
    rep.converged = o.converged;
    return rep;
}

CoverageEvaluator::TermReport CoverageEvaluator::cascaded_term(double e1,
                                                               double e2) const {
    TermReport rep;
    const CascadedLengthDist& cd = cascade();
    if (cd.total_mass() <= 0.0) return rep;
    auto f = [&](double eta) {
        const double pdf = cd.pdf(eta);
        if (pdf <= 0.0) return 0.0;
        double xi, gamma;
        cascaded_point(eta, e1, e2, true, true, &xi, &gamma);
        return pdf * noise_factor_cascaded(eta, e1, e2, p_) * xi * gamma *
               (1.0 - f_dl_.cdf(eta / k_));
    };
    const double hi = cd.support_hi();
    auto cdf = [&](double v) { return cd.cdf(v); };
    const double q1 = quantile_of(cdf, cd.total_mass(), hi, 0.25);
    const double q3 = quantile_of(cdf, cd.total_mass(), hi, 0.75);
    const OuterReport o =
        outer_integrate(f, {0.0, q1, q3, hi}, t_, t_.outer_eta_nodes);
    rep.value = o.value;
    rep.abs_error = o.abs_error;
    rep.evaluations = o.evaluations;
    rep.converged = o.converged;
    return rep;
}

double CoverageEvaluator::coverage_given_los(double e1, double e2) const {
    const AssociationProbabilities& a = association();
    if (a.zeta_d <= 0.0) return 0.0;
    return std::clamp(direct_term(e1, e2).value / a.zeta_d, 0.0, 1.0);
}

double CoverageEvaluator::coverage_given_vlos(double e1, double e2) const {
    const AssociationProbabilities& a = association();
    if (a.zeta_v <= 0.0) return 0.0;
    return std::clamp(cascaded_term(e1, e2).value / a.zeta_v, 0.0, 1.0);
}

MarginalCoverage CoverageEvaluator::marginal_coverage(double e1, double e2) const {
    MarginalCoverage m;
    const AssociationProbabilities& a = association();
    const TermReport d = direct_term(e1, e2);
    const TermReport v = cascaded_term(e1, e2);
    m.direct_term = d.value;
    m.cascaded_term = v.value;
    m.p_cs = std::clamp(d.value + v.value, 0.0, 1.0);
    m.zeta_d = a.zeta_d;
    m.zeta_v = a.zeta_v;
    m.cov_given_direct = a.zeta_d > 0.0 ? std::clamp(d.value / a.zeta_d, 0.0, 1.0) : 0.0;
    m.cov_given_cascaded =
        a.zeta_v > 0.0 ? std::clamp(v.value / a.zeta_v, 0.0, 1.0) : 0.0;
    m.evaluations = d.evaluations + v.evaluations;
    m.converged = d.converged && v.converged;
    m.error_budget = d.abs_error + v.abs_error + kInnerRelAllowance * m.p_cs;
    return m;
}

double xi1_los(double x, double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).xi1_los(x, e1, e2);
}

double gamma1_vlos(double x, double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).gamma1_vlos(x, e1, e2);
}

double xi2_los(double eta, double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).xi2_los(eta, e1, e2);
}

double gamma2_vlos(double eta, double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).gamma2_vlos(eta, e1, e2);
}

double coverage_given_los(double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).coverage_given_los(e1, e2);
}

double coverage_given_vlos(double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).coverage_given_vlos(e1, e2);
}

MarginalCoverage marginal_coverage(double e1, double e2, const ScenarioParams& p) {
    return CoverageEvaluator(p).marginal_coverage(e1, e2);
}

} // namespace riscov
