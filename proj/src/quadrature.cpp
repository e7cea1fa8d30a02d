#include "riscov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace riscov {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult kronrod_panel(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodX[i]);
        fv[14 - i] = f(c + h * kKronrodX[i]);
    }
    fv[7] = f(c);
    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double sum = i == 7 ? fv[7] : fv[i] + fv[14 - i];
        resk += kKronrodW[i] * sum;
        resabs += kKronrodW[i] * (i == 7 ? std::fabs(fv[7])
                                         : std::fabs(fv[i]) + std::fabs(fv[14 - i]));
    }
    for (int i = 0; i < 4; ++i) {
        const int j = 2 * i + 1;
        resg += kGaussW[i] * (i == 3 ? fv[7] : fv[j] + fv[14 - j]);
    }
    const double reskh = 0.5 * resk;
    double resasc = kKronrodW[7] * std::fabs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i) {
        resasc += kKronrodW[i] * (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));
    }
    resasc *= h;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    (void)resabs;
    return {resk * h, err};
}

struct Interval {
    double a, b, integral, error;
    long long order;  // creation order, tie-breaker for determinism
};

struct WorstFirst {
    bool operator()(const Interval& lhs, const Interval& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.order > rhs.order;
    }
};

} // namespace

QuadratureReport integrate_1d(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, long long max_evals) {
    QuadratureReport rep;
    if (a == b) return rep;
    std::priority_queue<Interval, std::vector<Interval>, WorstFirst> queue;
    long long order = 0;
    PanelResult first = kronrod_panel(f, a, b);
    rep.evaluations = 15;
    queue.push({a, b, first.integral, first.error, order++});
    double total = first.integral;
    double total_err = first.error;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (rep.evaluations + 30 > max_evals || queue.empty()) {
            rep.converged = false;
            break;
        }
        const Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating point resolution; accept its estimate.
            rep.converged = false;
            break;
        }
        const PanelResult left = kronrod_panel(f, worst.a, mid);
        const PanelResult right = kronrod_panel(f, mid, worst.b);
        rep.evaluations += 30;
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.integral, left.error, order++});
        queue.push({mid, worst.b, right.integral, right.error, order++});
    }
    rep.value = total;
    rep.abs_error = total_err;
    return rep;
}

QuadratureReport integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                         TailDecay decay, double scale,
                                         double rel_tol, double abs_tol, long long max_evals) {
    if (!(scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
    std::function<double(double)> g;
    if (decay == TailDecay::Exponential) {
        g = [&f, a, scale](double t) {
            const double om = 1.0 - t;
            return f(a - scale * std::log(om)) * scale / om;
        };
    } else {
        g = [&f, a, scale](double t) {
            const double om = 1.0 - t;
            return f(a + scale * t / om) * scale / (om * om);
        };
    }
    return integrate_1d(g, 0.0, 1.0, rel_tol, abs_tol, max_evals);
}

namespace {
QuadratureReport nested_level(const std::vector<NestedLayer>& layers,
                              const std::function<double(const std::vector<double>&)>& f,
                              std::vector<double>& coords, std::size_t level,
                              long long budget) {
    const NestedLayer& layer = layers[level];
    const double lo = layer.lower(coords);
    const double hi = layer.upper(coords);
    if (level + 1 == layers.size()) {
        return integrate_1d(
            [&](double x) {
                coords[level] = x;
                return f(coords);
            },
            lo, hi, layer.rel_tol, 0.0, budget);
    }
    double worst_inner_rel = 0.0;
    bool inner_ok = true;
    const long long inner_budget = std::max<long long>(budget / 64, 1000);
    QuadratureReport rep = integrate_1d(
        [&](double x) {
            coords[level] = x;
            QuadratureReport inner = nested_level(layers, f, coords, level + 1, inner_budget);
            inner_ok = inner_ok && inner.converged;
            if (inner.value != 0.0) {
                worst_inner_rel =
                    std::max(worst_inner_rel, inner.abs_error / std::fabs(inner.value));
            }
            return inner.value;
        },
        lo, hi, layer.rel_tol, 0.0, budget);
    rep.abs_error += worst_inner_rel * std::fabs(rep.value);
    rep.converged = rep.converged && inner_ok;
    return rep;
}
} // namespace

QuadratureReport integrate_nested(const std::vector<NestedLayer>& layers,
                                  const std::function<double(const std::vector<double>&)>& f,
                                  long long max_evals_total) {
    if (layers.empty()) throw std::invalid_argument("integrate_nested: no layers");
    std::vector<double> coords(layers.size(), 0.0);
    return nested_level(layers, f, coords, 0, max_evals_total);
}

const GaussRule& gauss_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.w[i] = w;
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& rule = gauss_rule(n);
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.w[i] * f(c + h * rule.x[i]);
    return acc * h;
}

double radical_inverse(long long index, int base) {
    double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    long long i = index;
    while (i > 0) {
        result += static_cast<double>(i % base) * factor;
        i /= base;
        factor *= inv_base;
    }
    return result;
}

void halton_point(long long index, int dim, double* out) {
    static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dim > 10) throw std::invalid_argument("halton_point: dim must be <= 10");
    for (int d = 0; d < dim; ++d) out[d] = radical_inverse(index + 1, kPrimes[d]);
}

QuadratureReport halton_cubature(const std::function<double(const double*)>& f, int dim,
                                 long long n) {
    QuadratureReport rep;
    double point[10];
    double sum = 0.0, sum_half = 0.0;
    const long long half = n / 2;
    for (long long i = 0; i < n; ++i) {
        halton_point(i, dim, point);
        sum += f(point);
        if (i + 1 == half) sum_half = sum;
    }
    rep.value = sum / static_cast<double>(n);
    rep.abs_error = std::fabs(rep.value - sum_half / static_cast<double>(half));
    rep.evaluations = n;
    return rep;
}

} // namespace riscov
