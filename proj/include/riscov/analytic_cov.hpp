#pragma once

#include <memory>
#include <mutex>

#include "riscov/analytic_dist.hpp"
#include "riscov/channel.hpp"
#include "riscov/params.hpp"
#include "riscov/quadrature.hpp"

namespace riscov {

// Quadrature budget for the coverage evaluator. Defaults aim at ~1e-3
// relative accuracy on the Laplace functionals; fast() trades accuracy for
// speed and switches the outer layers to fixed Gauss nodes so threshold
// sweeps stay monotone by construction.
struct CovTuning {
    double outer_rel_tol = 1e-3;
    int outer_max_evals = 300;  // per outer piece (adaptive mode)
    bool outer_fixed_gauss = false;
    int outer_x_nodes = 16;  // per piece in fixed mode
    int outer_eta_nodes = 12;
    int xy_nodes = 24;     // embedded serving-distance expectations
    int theta_nodes = 32;  // bearing rule for interferer-bearing profiles
    int phi_nodes = 24;    // per-side rule for the sensing-angle average
    int radial_panel_nodes = 32;
    int stilde_wing = 64, stilde_core = 320, stilde_tail = 96;
    int ctilde_pre = 48, ctilde_mid = 96, ctilde_tail = 64;
    static CovTuning fast();
};

struct MarginalCoverage {
    double p_cs = 0.0;
    double error_budget = 0.0;
    double direct_term = 0.0;    // joint P(covered, Direct)
    double cascaded_term = 0.0;  // joint P(covered, Cascaded)
    double zeta_d = 0.0;
    double zeta_v = 0.0;
    double cov_given_direct = 0.0;
    double cov_given_cascaded = 0.0;
    long long evaluations = 0;
    bool converged = true;
};

// Analytic counterpart of the Monte Carlo estimator: interference Laplace
// functionals for both association cases plus the marginal joint coverage.
class CoverageEvaluator {
  public:
    explicit CoverageEvaluator(const ScenarioParams& p, const CovTuning& t = CovTuning{});
    ~CoverageEvaluator();
    CoverageEvaluator(const CoverageEvaluator&) = delete;
    CoverageEvaluator& operator=(const CoverageEvaluator&) = delete;

    // LoS-interferer functional, Direct case (serving LoS BS at x).
    double xi1_los(double x, double eps1, double eps2) const;
    // VLoS-interferer functional, Direct case.
    double gamma1_vlos(double x, double eps1, double eps2) const;
    // LoS-interferer functional, Cascaded case (serving cascade length eta).
    double xi2_los(double eta, double eps1, double eps2) const;
    // VLoS-interferer functional, Cascaded case.
    double gamma2_vlos(double eta, double eps1, double eps2) const;

    // Conditional joint coverage given the association case.
    double coverage_given_los(double eps1, double eps2) const;
    double coverage_given_vlos(double eps1, double eps2) const;

    MarginalCoverage marginal_coverage(double eps1, double eps2) const;

    const AssociationProbabilities& association() const;
    const CascadedLengthDist& cascade() const;
    const ScenarioParams& params() const { return p_; }

  private:
    void direct_point(double x, double eps1, double eps2, bool want_xi, bool want_gamma,
                      double* xi_out, double* gamma_out) const;
    void cascaded_point(double eta, double eps1, double eps2, bool want_xi,
                        bool want_gamma, double* xi_out, double* gamma_out) const;
    struct TermReport {
        double value = 0.0;
        double abs_error = 0.0;
        long long evaluations = 0;
        bool converged = true;
    };
    TermReport direct_term(double eps1, double eps2) const;
    TermReport cascaded_term(double eps1, double eps2) const;

    ScenarioParams p_;
    CovTuning t_;
    GainDistribution gain_d_, gain_v_;
    DistanceDistribution f_dl_, f_dv_, f_y_;
    double k_;  // n_r^{2/alpha}
    double vscale_, void_;
    mutable std::once_flag casc_once_;
    mutable std::unique_ptr<CascadedLengthDist> casc_;
    mutable std::unique_ptr<AssociationProbabilities> assoc_;
};

double xi1_los(double x, double eps1, double eps2, const ScenarioParams& p);
double gamma1_vlos(double x, double eps1, double eps2, const ScenarioParams& p);
double xi2_los(double eta, double eps1, double eps2, const ScenarioParams& p);
double gamma2_vlos(double eta, double eps1, double eps2, const ScenarioParams& p);
double coverage_given_los(double eps1, double eps2, const ScenarioParams& p);
double coverage_given_vlos(double eps1, double eps2, const ScenarioParams& p);
MarginalCoverage marginal_coverage(double eps1, double eps2, const ScenarioParams& p);

} // namespace riscov
