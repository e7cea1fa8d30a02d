#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "riscov/association.hpp"

using namespace riscov;

namespace {

NetworkRealization make_net(std::vector<Point2> bs, std::vector<std::uint8_t> bs_los,
                            std::vector<Point2> ris = {},
                            std::vector<std::uint8_t> ris_los = {}) {
    NetworkRealization net;
    net.bs = std::move(bs);
    net.bs_los = std::move(bs_los);
    net.ris = std::move(ris);
    net.ris_los = std::move(ris_los);
    return net;
}

} // namespace

TEST_CASE("direct candidate picks the nearest LoS BS") {
    NetworkRealization net =
        make_net({{100.0, 0.0}, {50.0, 0.0}, {200.0, 0.0}}, {1, 0, 1});
    DirectCandidate d = candidate_direct(net);
    REQUIRE(d.found());
    CHECK(d.bs_index == 0); // the nearer BS is NLoS and must be skipped
    CHECK(d.d_bu == doctest::Approx(100.0).epsilon(1e-15));

    // exact distance tie resolves to the lowest index
    net = make_net({{60.0, 0.0}, {0.0, 60.0}}, {1, 1});
    d = candidate_direct(net);
    CHECK(d.bs_index == 0);

    net = make_net({{50.0, 0.0}}, {0});
    CHECK_FALSE(candidate_direct(net).found());
    CHECK_FALSE(candidate_direct(make_net({}, {})).found());
}

TEST_CASE("cascaded candidate pairs the nearest LoS RIS with an NLoS BS") {
    // BS0 is nearer the user, BS1 nearer the RIS; the greedy switch decides.
    NetworkRealization net = make_net({{80.0, 0.0}, {0.0, 100.0}}, {0, 0},
                                      {{0.0, 30.0}}, {1});
    CascadedCandidate user_pick = candidate_cascaded(net, GreedyTarget::User);
    REQUIRE(user_pick.found());
    CHECK(user_pick.bs_index == 0);
    CHECK(user_pick.ris_index == 0);
    CHECK(user_pick.d_ru == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(user_pick.d_br == doctest::Approx(std::sqrt(80.0 * 80.0 + 30.0 * 30.0)));
    CHECK(user_pick.eta == doctest::Approx(user_pick.d_br * 30.0));

    CascadedCandidate ris_pick = candidate_cascaded(net, GreedyTarget::Ris);
    REQUIRE(ris_pick.found());
    CHECK(ris_pick.bs_index == 1); // distance to RIS: 70 beats 85.44
    CHECK(ris_pick.d_br == doctest::Approx(70.0).epsilon(1e-15));
    CHECK(ris_pick.eta == doctest::Approx(2100.0).epsilon(1e-12));
}

TEST_CASE("cascaded candidate needs both a LoS RIS and an NLoS BS") {
    // LoS BSs cannot feed a cascade
    NetworkRealization net = make_net({{40.0, 0.0}}, {1}, {{0.0, 30.0}}, {1});
    CHECK_FALSE(candidate_cascaded(net).found());

    // NLoS RIS is no relay
    net = make_net({{40.0, 0.0}}, {0}, {{0.0, 30.0}}, {0});
    CHECK_FALSE(candidate_cascaded(net).found());

    // nearest LoS RIS is chosen even when an NLoS RIS is closer
    net = make_net({{0.0, 100.0}}, {0}, {{0.0, 5.0}, {0.0, 30.0}, {20.0, 0.0}},
                   {0, 1, 1});
    CascadedCandidate c = candidate_cascaded(net);
    REQUIRE(c.found());
    CHECK(c.ris_index == 2); // (20,0) is the nearest LoS RIS
    CHECK(c.d_ru == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("association compares mean gains with direct winning ties") {
    ScenarioParams p = ScenarioParams::defaults();
    p.alpha = 4.0; // n_r^{2/alpha} = sqrt(256) = 16 exactly
    REQUIRE(p.n_r_pow_2_over_alpha() == doctest::Approx(16.0).epsilon(1e-15));

    // direct at 10 m -> effective cascade threshold 160
    auto net_with_bs_at = [](double bs_y) {
        return make_net({{10.0, 0.0}, {0.0, bs_y}}, {1, 0}, {{0.0, 10.0}}, {1});
    };

    ServingLink tie = associate(net_with_bs_at(26.0), p); // eta = 16*10 = 160
    CHECK(tie.kind == LinkKind::Direct);
    CHECK(tie.bs_index == 0);
    CHECK(tie.d_bu == doctest::Approx(10.0).epsilon(1e-15));

    ServingLink casc = associate(net_with_bs_at(25.0), p); // eta = 150 < 160
    CHECK(casc.kind == LinkKind::Cascaded);
    CHECK(casc.bs_index == 1);
    CHECK(casc.ris_index == 0);
    CHECK(casc.eta == doctest::Approx(150.0).epsilon(1e-13));
    CHECK(casc.d_ru == doctest::Approx(10.0).epsilon(1e-15));

    ServingLink dir = associate(net_with_bs_at(27.0), p); // eta = 170 > 160
    CHECK(dir.kind == LinkKind::Direct);

    // single-candidate and empty cases
    ServingLink only_direct = associate(make_net({{10.0, 0.0}}, {1}), p);
    CHECK(only_direct.kind == LinkKind::Direct);
    ServingLink only_casc =
        associate(make_net({{0.0, 500.0}}, {0}, {{0.0, 10.0}}, {1}), p);
    CHECK(only_casc.kind == LinkKind::Cascaded);
    ServingLink none = associate(make_net({}, {}), p);
    CHECK(none.kind == LinkKind::None);
}

TEST_CASE("association probability wrapper matches the analytic split") {
    const ScenarioParams p = ScenarioParams::defaults();
    const AssociationProbabilities a = association_probabilities(p);
    const AssociationProbabilities b = analytic_association_split(p);
    CHECK(a.zeta_d == doctest::Approx(b.zeta_d).epsilon(1e-9));
    CHECK(a.zeta_v == doctest::Approx(b.zeta_v).epsilon(1e-9));
    CHECK(a.zbar_d == doctest::Approx(b.zbar_d).epsilon(1e-9));
    CHECK(a.zbar_v == doctest::Approx(b.zbar_v).epsilon(1e-9));
}
