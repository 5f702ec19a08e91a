#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "ctrlrank/dynamics.hpp"
#include "ctrlrank/errors.hpp"
#include "ctrlrank/netio.hpp"
#include "ctrlrank/runconfig.hpp"
#include "ctrlrank/tipping.hpp"

using namespace ctrlrank;
using namespace ctrlrank::tipping;
using dynamics::IntegrateOptions;
using dynamics::MutualisticModel;
using dynamics::MutualisticParams;

namespace {

// one pollinator, one plant: the dynamics reduce to a scalar saddle-node
// with the fold near gamma = 1.75 (see the quadratic worked out below)
netio::BipartiteNetwork pair_network() {
    return netio::parse_incidence("species,flower\nbee,1\n");
}

// two specialists (v->p, w->q) flanking one generalist u
netio::BipartiteNetwork triple_network() {
    return netio::parse_incidence(
        "species,p,q\n"
        "u,1,1\n"
        "v,1,0\n"
        "w,0,1\n");
}

std::vector<double> full_grid() { return make_grid({0.0, 3.0, 0.05}); }

std::vector<double> reversed(std::vector<double> g) {
    std::reverse(g.begin(), g.end());
    return g;
}

bool on_grid(double v, const std::vector<double>& grid) {
    for (double g : grid)
        if (std::abs(g - v) < 1e-12) return true;
    return false;
}

} // namespace

TEST_CASE("rank_nonlinear maps recovery points onto [0,1]") {
    RecoveryTable table;
    table.node_indices = {0, 1, 2};
    table.scope = "pollinators";

    SUBCASE("linear rescaling, lowest point ranks highest") {
        table.points = {1.0, 2.0, 1.5};
        auto r = rank_nonlinear(table);
        CHECK(r.kind == RankKind::nonlinear);
        CHECK(r.node_indices == table.node_indices);
        CHECK(r.scope == "pollinators");
        REQUIRE(r.values.size() == 3);
        CHECK(r.values[0] == doctest::Approx(1.0));
        CHECK(r.values[1] == doctest::Approx(0.0));
        CHECK(r.values[2] == doctest::Approx(0.5));
    }
    SUBCASE("no recovery scores zero") {
        table.points = {1.0, std::nullopt, 2.0};
        auto r = rank_nonlinear(table);
        CHECK(r.values[0] == doctest::Approx(1.0));
        CHECK(r.values[1] == 0.0);
        CHECK(r.values[2] == doctest::Approx(0.0));
    }
    SUBCASE("degenerate tables are errors") {
        table.points = {1.5, 1.5, 1.5};
        CHECK_THROWS_AS(rank_nonlinear(table), DegenerateRankingError);
        table.points = {std::nullopt, std::nullopt, std::nullopt};
        CHECK_THROWS_AS(rank_nonlinear(table), DegenerateRankingError);
        table.points = {1.0, std::nullopt, std::nullopt};
        CHECK_THROWS_AS(rank_nonlinear(table), DegenerateRankingError);
    }
}

TEST_CASE("sweep carries state and validates the grid") {
    auto net = pair_network();
    MutualisticModel model(net, MutualisticParams{});
    IntegrateOptions opt;
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(2, 2.0);

    SUBCASE("grid must be monotone in the sweep direction") {
        CHECK_THROWS_AS(sweep(model, {1.0, 0.5, 0.7}, SweepDirection::descending,
                              x0, opt, 0.1),
                        Error);
        CHECK_THROWS_AS(sweep(model, {0.5, 1.0}, SweepDirection::descending, x0,
                              opt, 0.1),
                        Error);
        CHECK_THROWS_AS(sweep(model, {}, SweepDirection::descending, x0, opt, 0.1),
                        Error);
    }

    SUBCASE("descending sweep finds the fold") {
        // steady states of A(-0.3 - A + gA/(1+0.2gA)) + 1e-4 satisfy
        // 0.2g A^2 + (1-0.94g) A + 0.3 ~ 0; the discriminant changes sign
        // between g = 1.75 and g = 1.80
        auto res = sweep(model, reversed(full_grid()), SweepDirection::descending,
                         x0, opt, 0.1);
        REQUIRE(res.states.size() == res.grid.size());
        REQUIRE(res.tipping_point.has_value());
        CHECK(*res.tipping_point > 1.55);
        CHECK(*res.tipping_point < 1.90);
        CHECK(res.states.front().minCoeff() > 0.5); // healthy at gamma = 3
        CHECK(res.states.back().maxCoeff() < 0.1);  // extinct at gamma = 0
        bool collapsed = false;
        for (std::size_t i = 0; i < res.grid.size(); ++i) {
            const bool below = res.states[i].maxCoeff() < 0.1;
            if (collapsed) CHECK(below); // no spontaneous revival on the way down
            collapsed = collapsed || below;
        }
        CHECK(detect_tipping(res, 0.1) == res.tipping_point);
    }

    SUBCASE("no tipping on a high-gamma grid") {
        auto res = sweep(model, {3.0, 2.8, 2.6, 2.4, 2.2},
                         SweepDirection::descending, x0, opt, 0.1);
        CHECK_FALSE(res.tipping_point.has_value());
        CHECK_FALSE(detect_tipping(res, 0.1).has_value());
    }

    SUBCASE("collapsed branch persists on the way back up") {
        const Eigen::VectorXd dead = Eigen::VectorXd::Zero(2);
        auto up = sweep(model, full_grid(), SweepDirection::ascending, dead, opt,
                        0.1);
        for (const auto& s : up.states) CHECK(s.maxCoeff() < 0.1);
    }
}

TEST_CASE("recovery point of the pinned pair matches the scalar analysis") {
    auto net = pair_network();
    MutualisticModel model(net, MutualisticParams{});
    IntegrateOptions opt;
    const Eigen::VectorXd dead = Eigen::VectorXd::Zero(2);

    SUBCASE("pinning the bee at 1.5 revives the flower at gamma = 0.30") {
        // flower alone: P(-0.3 - P + 1.5g/(1+0.3g)) + 1e-4, so P* crosses
        // 0.1 once 1.5g/(1+0.3g) >= 0.4, i.e. g >= 0.29; first grid point 0.30
        auto rp = recovery_point(model, dead, 0, 1.5, full_grid(), 0.1, opt);
        REQUIRE(rp.has_value());
        CHECK(*rp == doctest::Approx(0.30).epsilon(1e-9));
    }
    SUBCASE("pinning at zero never recovers") {
        auto rp = recovery_point(model, dead, 0, 0.0, full_grid(), 0.1, opt);
        CHECK_FALSE(rp.has_value());
    }
    SUBCASE("plants are not controllable") {
        CHECK_THROWS_AS(recovery_point(model, dead, 1, 1.5, full_grid(), 0.1, opt),
                        ScopeError);
    }
}

TEST_CASE("analyze_nonlinear ranks the generalist first") {
    auto net = triple_network();
    MutualisticModel model(net, MutualisticParams{});
    IntegrateOptions opt;

    auto res = analyze_nonlinear(model, full_grid(), 0.1, 1.5, opt);
    CHECK(res.descending.tipping_point.has_value());
    CHECK(res.extinction_state.maxCoeff() < 0.1);

    REQUIRE(res.recovery.node_indices == std::vector<int>{0, 1, 2});
    CHECK(res.recovery.scope == "pollinators");
    for (const auto& p : res.recovery.points) {
        REQUIRE(p.has_value());
        CHECK(on_grid(*p, full_grid()));
    }

    const auto& v = res.ranking.values;
    REQUIRE(v.size() == 3);
    for (double x : v) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
    // u supports both plants, so its pin restores the community soonest
    CHECK(v[0] == 1.0);
    // v and w play mirror-image roles
    CHECK(v[1] == v[2]);

    SUBCASE("the pipeline is deterministic") {
        MutualisticModel again(net, MutualisticParams{});
        auto res2 = analyze_nonlinear(again, full_grid(), 0.1, 1.5, opt);
        CHECK(res2.ranking.values == res.ranking.values);
        CHECK(res2.descending.tipping_point == res.descending.tipping_point);
    }
}

TEST_CASE("degenerate nonlinear rankings raise") {
    IntegrateOptions opt;
    SUBCASE("a single controllable node cannot be ranked") {
        auto net = pair_network();
        MutualisticModel model(net, MutualisticParams{});
        CHECK_THROWS_AS(analyze_nonlinear(model, full_grid(), 0.1, 1.5, opt),
                        DegenerateRankingError);
    }
    SUBCASE("holding at zero leaves nothing to rank") {
        auto net = triple_network();
        MutualisticModel model(net, MutualisticParams{});
        CHECK_THROWS_AS(analyze_nonlinear(model, full_grid(), 0.1, 0.0, opt),
                        DegenerateRankingError);
    }
}
