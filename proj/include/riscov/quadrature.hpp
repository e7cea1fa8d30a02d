#pragma once

#include <functional>
#include <vector>

namespace riscov {

struct QuadratureReport {
    double value = 0.0;
    double abs_error = 0.0;  // estimated absolute error
    long long evaluations = 0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. Deterministic: intervals are
// split worst-error-first with ties broken by creation order. Convergence is
// total estimated error <= max(abs_tol, rel_tol * |integral|).
QuadratureReport integrate_1d(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-8, double abs_tol = 0.0,
                              long long max_evals = 200000);

enum class TailDecay { Exponential, PowerLaw };

// Integral over [a, inf). Exponential decay with the given scale L uses
// r = a - L ln(1-t); power-law decay uses r = a + L t/(1-t). Both map the
// tail onto t in [0,1) where the adaptive rule runs; the Kronrod nodes never
// touch t = 1, and the mapped integrand vanishes there for integrable tails.
QuadratureReport integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                         TailDecay decay, double scale,
                                         double rel_tol = 1e-8, double abs_tol = 0.0,
                                         long long max_evals = 200000);

// One nesting level: bounds may depend on the outer coordinates (outer
// layers first in the vector passed to the callbacks).
struct NestedLayer {
    std::function<double(const std::vector<double>&)> lower;
    std::function<double(const std::vector<double>&)> upper;
    double rel_tol = 1e-6;
};

// Nested adaptive integration, outermost layer first. Error estimates
// propagate by summation: outer estimate + max inner estimate scaled by the
// outer measure. Budget is split per level.
QuadratureReport integrate_nested(const std::vector<NestedLayer>& layers,
                                  const std::function<double(const std::vector<double>&)>& f,
                                  long long max_evals_total = 5000000);

// Gauss-Legendre rule on [-1, 1], cached per order (nodes by Newton
// iteration on the Legendre recurrence; deterministic).
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_rule(int n);

// Fixed-order Gauss-Legendre integral on [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Van der Corput radical inverse; halton_point fills a d-dimensional Halton
// vector (bases 2,3,5,7,11,13,...) for the given zero-based index. The
// sequence is fixed, so results reproduce across platforms.
double radical_inverse(long long index, int base);
void halton_point(long long index, int dim, double* out);

// Quasi-random cubature of f over [0,1]^dim with n points. The error
// estimate compares the first-half mean against the full mean.
QuadratureReport halton_cubature(const std::function<double(const double*)>& f, int dim,
                                 long long n);

} // namespace riscov
