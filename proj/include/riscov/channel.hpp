#pragma once

#include <vector>

#include "riscov/params.hpp"
#include "riscov/rng.hpp"

namespace riscov {

// Discrete beamforming-gain distribution: levels a_k with probabilities b_k,
// sorted by descending gain. Probabilities sum to 1 exactly (the sector-model
// alignment probabilities are complementary by construction).
struct GainDistribution {
    std::vector<double> gain;
    std::vector<double> prob;

    double mean() const;
    double sample(Rng& rng) const;
};

// Direct-link path gain c0 * d^{-alpha}.
double path_loss_direct(double d, double c0, double alpha);
// Cascaded-link path gain c0 * (d1 d2)^{-alpha}; the product d1*d2 is the
// cascade length eta.
double path_loss_cascaded(double d1, double d2, double c0, double alpha);

// Sector beam gain of an interfering BS toward an arbitrary direction:
// main lobe m_t w.p. asin(1/m_t)/pi, else side lobe m_t_side.
GainDistribution direct_gain_distribution(const ScenarioParams& p);
// Joint BS+RIS sector gain of an interfering cascaded path: four levels
// m_t n_r^2, m_t n_r_side^2, m_t_side n_r^2, m_t_side n_r_side^2 with
// independent alignment probabilities asin(1/m_t)/pi and asin(1/n_r)/pi.
GainDistribution cascaded_gain_distribution(const ScenarioParams& p);

// Uniform linear array factor sin(m/2 (sin t1 - sin t2)) / sin(1/2 (...)),
// continuous at the removable singularity where it equals m.
double array_factor_tx(double theta1, double theta2, int m);
// RIS array factor with phase offset phi added to the electrical angle.
double array_factor_ris(double theta1, double theta2, double phi, int n);

// E[exp(-s X D)] for X ~ Exp(rate) independent of the discrete gain D:
// sum_k b_k rate / (rate + s a_k).
double laplace_fading_gain(double s, const GainDistribution& d, double rate);

// |xi|^2 ~ Exp(rate) small-scale power fading.
inline double sample_fading(Rng& rng, double rate) { return rng.exponential(rate); }

} // namespace riscov
