#pragma once

#include <functional>
#include <vector>

#include "riscov/interp.hpp"
#include "riscov/params.hpp"

namespace riscov {

// 1 - e^{-u}(1+u), computed by series for small u where the direct form
// cancels. This is beta^2 * int_0^x e^{-beta r} r dr at u = beta x.
double one_minus_exp1p(double u);

// Radial intensity measures int_0^x lambda(r) r dr (per radian) of the
// distance-thinned fields, in closed form. All analytic distance machinery
// truncates at the simulation window so both engines model the same region.
double los_radial_measure(double lambda, double beta, double x);
double nlos_radial_measure(double lambda, double beta, double x);
// Probability that no LoS RIS exists anywhere in the window.
double ris_void_probability(const ScenarioParams& p);
// The factor (1 - ris void probability) scaling the NLoS density into the
// virtual-LoS density.
double vlos_scale(const ScenarioParams& p);
double vlos_radial_measure(const ScenarioParams& p, double x);

// A (possibly defective) nearest-point distance law. total_mass < 1 when the
// underlying point class can be absent; cdf saturates at total_mass beyond
// support_hi (the radius where the void exponent passes 40, capped at the
// window radius).
struct DistanceDistribution {
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    double support_lo = 0.0;
    double support_hi = 0.0;
    double total_mass = 0.0;
};

DistanceDistribution nearest_los_bs_dist(const ScenarioParams& p);
DistanceDistribution nearest_vlos_bs_dist(const ScenarioParams& p);
DistanceDistribution nearest_los_ris_dist(const ScenarioParams& p);

// Measure of virtual-LoS BSs whose cascade product d_BR * y is <= c, for the
// serving RIS at distance y from the user. The region is a lens around the
// RIS: for each bearing theta the blocked radii are
// (y cos t - s, y cos t + s), s = sqrt(c^2/y^2 - y^2 sin^2 t), clamped to
// [0, window]. Backs both the cascade-length CDF and the exclusion regions
// of the interference functionals.
double lens_vlos_measure(const ScenarioParams& p, double c, double y);

// P(min cascade product <= eta | serving RIS at y) = 1 - exp(-lens measure).
double cascaded_cdf_given_ris(const ScenarioParams& p, double eta, double y);

// Distribution of the shortest cascade product eta0 = min_j d_BR(j) * y over
// the virtual-LoS BSs, y being the nearest LoS RIS distance. The CDF is the
// RIS-distance mixture of the conditional lens-void law; the PDF is a central
// finite difference of the exact CDF with step max(1e-3 eta, 1e-2).
class CascadedLengthDist {
  public:
    explicit CascadedLengthDist(const ScenarioParams& p);

    // Nested-quadrature evaluation (no cache).
    double exact_cdf(double eta) const;
    // Fast monotone interpolant built on a sqrt-spaced grid at construction.
    double cdf(double eta) const { return cache_(eta); }
    double pdf(double eta) const;

    double total_mass() const { return mass_; }
    double support_hi() const { return support_hi_; }

    DistanceDistribution as_distribution() const;

  private:
    ScenarioParams p_;
    DistanceDistribution ris_;
    PiecewiseLinear cache_;
    double mass_ = 0.0;
    double support_hi_ = 0.0;
};

// Association probabilities: zbar_* are the existence probabilities of each
// candidate class, zeta_* the probabilities that the class exists and wins
// the mean-gain comparison (direct wins ties).
struct AssociationProbabilities {
    double zeta_d = 0.0;
    double zeta_v = 0.0;
    double zbar_d = 0.0;
    double zbar_v = 0.0;
};

AssociationProbabilities analytic_association_split(const ScenarioParams& p);
AssociationProbabilities analytic_association_split(const ScenarioParams& p,
                                              const CascadedLengthDist& cascade);

} // namespace riscov
