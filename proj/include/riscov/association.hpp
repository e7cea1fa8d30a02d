#pragma once

#include "riscov/analytic_dist.hpp"
#include "riscov/geometry.hpp"
#include "riscov/params.hpp"

namespace riscov {

enum class LinkKind { None, Direct, Cascaded };

// Direct candidate: the LoS BS nearest the user (power law is monotone, so
// nearest distance = largest average gain). bs_index < 0 means absent.
struct DirectCandidate {
    int bs_index = -1;
    double d_bu = 0.0;
    bool found() const { return bs_index >= 0; }
};

// Cascaded candidate: nearest LoS RIS paired with an NLoS BS chosen greedily
// (nearest to the user, or nearest to that RIS under GreedyTarget::Ris).
struct CascadedCandidate {
    int bs_index = -1;
    int ris_index = -1;
    double d_br = 0.0;
    double d_ru = 0.0;
    double eta = 0.0; // d_br * d_ru
    bool found() const { return bs_index >= 0; }
};

struct ServingLink {
    LinkKind kind = LinkKind::None;
    int bs_index = -1;
    int ris_index = -1;
    double d_bu = 0.0;
    double d_br = 0.0;
    double d_ru = 0.0;
    double eta = 0.0;
};

DirectCandidate candidate_direct(const NetworkRealization& net);

CascadedCandidate candidate_cascaded(const NetworkRealization& net,
                                     GreedyTarget target = GreedyTarget::User);

// Picks the larger average channel gain: Direct wins (ties included) iff
// d_bu * n_r^{2/alpha} <= eta.
ServingLink associate(const NetworkRealization& net, const ScenarioParams& p);

AssociationProbabilities association_probabilities(const ScenarioParams& p);

} // namespace riscov
