#include "riscov/association.hpp"

#include <cstddef>

namespace riscov {

DirectCandidate candidate_direct(const NetworkRealization& net) {
    DirectCandidate c;
    double best = 0.0;
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        if (!net.bs_los[i]) continue;
        const double d = norm(net.bs[i]);
        if (c.bs_index < 0 || d < best) {
            c.bs_index = static_cast<int>(i);
            best = d;
        }
    }
    c.d_bu = best;
    return c;
}

CascadedCandidate candidate_cascaded(const NetworkRealization& net, GreedyTarget target) {
    CascadedCandidate c;
    int ris = -1;
    double d_ru = 0.0;
    for (std::size_t j = 0; j < net.ris.size(); ++j) {
        if (!net.ris_los[j]) continue;
        const double d = norm(net.ris[j]);
        if (ris < 0 || d < d_ru) {
            ris = static_cast<int>(j);
            d_ru = d;
        }
    }
    if (ris < 0) return c;
    int bs = -1;
    double best = 0.0;
    for (std::size_t i = 0; i < net.bs.size(); ++i) {
        if (net.bs_los[i]) continue;
        const double d = target == GreedyTarget::User ? norm(net.bs[i])
                                                      : distance(net.bs[i], net.ris[ris]);
        if (bs < 0 || d < best) {
            bs = static_cast<int>(i);
            best = d;
        }
    }
    if (bs < 0) return c;
    c.bs_index = bs;
    c.ris_index = ris;
    c.d_br = distance(net.bs[bs], net.ris[ris]);
    c.d_ru = d_ru;
    c.eta = c.d_br * c.d_ru;
    return c;
}

ServingLink associate(const NetworkRealization& net, const ScenarioParams& p) {
    const DirectCandidate dc = candidate_direct(net);
    const CascadedCandidate cc = candidate_cascaded(net, p.greedy_target);
    ServingLink s;
    const bool direct_ok = dc.found();
    // Scale-free gain comparison: C0 d^{-a} M_T vs C0 eta^{-a} M_T N_R^2.
    const bool direct_wins =
        direct_ok && (!cc.found() || dc.d_bu * p.n_r_pow_2_over_alpha() <= cc.eta);
    if (direct_wins) {
        s.kind = LinkKind::Direct;
        s.bs_index = dc.bs_index;
        s.d_bu = dc.d_bu;
    } else if (cc.found()) {
        s.kind = LinkKind::Cascaded;
        s.bs_index = cc.bs_index;
        s.ris_index = cc.ris_index;
        s.d_br = cc.d_br;
        s.d_ru = cc.d_ru;
        s.eta = cc.eta;
    }
    return s;
}

AssociationProbabilities association_probabilities(const ScenarioParams& p) {
    return analytic_association_split(p);
}

} // namespace riscov
