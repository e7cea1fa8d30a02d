#pragma once

#include <cstdint>
#include <vector>

#include "riscov/params.hpp"
#include "riscov/rng.hpp"

namespace riscov {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point2 a, Point2 b);
inline double norm(Point2 p) { return distance(p, {0.0, 0.0}); }

// A blockage is a line segment: center, half-length, orientation in [0, pi).
struct Blockage {
    Point2 center;
    double half_len = 0.0;
    double angle = 0.0;

    Point2 end_a() const;
    Point2 end_b() const;
};

// One sampled network drop. In thinning mode `blockages` stays empty and the
// LoS flags are Bernoulli(e^{-beta r}); in explicit mode the flags are
// derived from actual segment crossings of the user->node paths.
struct NetworkRealization {
    std::vector<Point2> bs;
    std::vector<Point2> ris;
    std::vector<Blockage> blockages;
    std::vector<std::uint8_t> bs_los;
    std::vector<std::uint8_t> ris_los;
};

// Homogeneous PPP on a disk of the given radius centered at the origin:
// Poisson count, then i.i.d. uniform points.
std::vector<Point2> sample_ppp(double density, double radius, Rng& rng);

// Blockage process: centers are a PPP on a disk of radius
// window_radius + mean_blockage_len (so segments overlapping the window are
// not missed), orientations uniform on [0, pi), lengths either fixed at the
// mean or uniform on [0, 2*mean].
std::vector<Blockage> sample_blockages(const ScenarioParams& p, Rng& rng);

// P_LoS(r) = e^{-beta r}.
double los_probability(double r, double beta);

// Does the open segment a-b cross any blockage? Touching counts as blocked.
bool is_los_explicit(Point2 a, Point2 b, const std::vector<Blockage>& blockages);

// Accelerator for the common query "is the path from the origin to p clear":
// blockage segments are bucketed by the angular interval they subtend from
// the origin, so a query only tests candidates in one bucket.
class OriginLosIndex {
  public:
    explicit OriginLosIndex(const std::vector<Blockage>& blockages, int bins = 2048);
    bool is_los(Point2 p) const;

  private:
    const std::vector<Blockage>& blockages_;
    std::vector<std::vector<std::uint32_t>> bins_;
};

// Fills bs_los / ris_los according to the blockage mode. Thinning mode draws
// one Bernoulli(e^{-beta r}) per node from `rng`; explicit mode tests the
// origin->node segment against the realization's blockages.
void classify_links(NetworkRealization& net, const ScenarioParams& p, Rng& rng);

// Samples a full drop (points + blockages in explicit mode + LoS flags).
NetworkRealization sample_realization(const ScenarioParams& p, std::uint64_t seed,
                                      std::uint64_t drop_index);

// Thinned densities of the typical user's fields. The virtual-LoS density is
// the NLoS BS density scaled by the probability that a LoS RIS exists,
// lambda_b (1 - e^{-beta r}) (1 - exp(-2 pi lambda_r / beta^2)).
double los_bs_density(double r, double lambda_b, double beta);
double nlos_bs_density(double r, double lambda_b, double beta);
double vlos_bs_density(double r, double lambda_b, double lambda_r, double beta);

// Emits the points of a PPP on a disk in ascending radial order without
// materializing the whole field: conditional on the Poisson count n, the
// squared radii are uniform order statistics, generated by the sequential
// minimum recursion u_{k+1} = 1 - (1 - u_k)(1 - V)^{1/(n-k)}.
class AscendingRadiusStream {
  public:
    AscendingRadiusStream(double density, double disk_radius, Rng& rng);
    // Next radius in ascending order; false when the field is exhausted.
    bool next(Rng& rng, double& r);
    int remaining() const { return remaining_; }

  private:
    int remaining_;
    double u_;
    double radius2_;
};

} // namespace riscov
