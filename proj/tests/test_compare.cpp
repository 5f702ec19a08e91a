#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ctrlrank/compare.hpp"
#include "ctrlrank/errors.hpp"

using namespace ctrlrank;
using namespace ctrlrank::compare;

namespace {

// raw-moment formulation in extended precision, as a second route
double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const long double n = static_cast<long double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        syy += static_cast<long double>(y[i]) * y[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double num = n * sxy - sx * sy;
    const long double den =
        std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    return static_cast<double>(num / den);
}

double cosine_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    long double dot = 0, nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += static_cast<long double>(x[i]) * y[i];
        nx += static_cast<long double>(x[i]) * x[i];
        ny += static_cast<long double>(y[i]) * y[i];
    }
    return static_cast<double>(1.0L - dot / (std::sqrt(nx) * std::sqrt(ny)));
}

ImportanceRanking make_ranking(RankKind kind, std::vector<int> nodes,
                               std::vector<double> values,
                               std::string scope = "all") {
    ImportanceRanking r;
    r.kind = kind;
    r.node_indices = std::move(nodes);
    r.values = std::move(values);
    r.scope = std::move(scope);
    return r;
}

} // namespace

TEST_CASE("pearson basics") {
    CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0));
    // r = 5 sqrt(57) / 38 for this pair
    CHECK(pearson({1, 2, 3}, {2, 4, 7}) ==
          doctest::Approx(0.993399267798783).epsilon(1e-12));

    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), Error); // zero variance
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), Error);    // length mismatch
    CHECK_THROWS_AS(pearson({1}, {2}), Error);             // too short
}

TEST_CASE("cosine distance basics") {
    CHECK(cosine_distance({1, 2}, {2, 4}) == doctest::Approx(0.0));
    CHECK(cosine_distance({1, 0}, {0, 1}) == doctest::Approx(1.0));
    CHECK(cosine_distance({1, 0}, {1, 1}) ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(cosine_distance({0, 0}, {1, 1}), Error);
    CHECK_THROWS_AS(cosine_distance({1}, {1, 2}), Error);
}

TEST_CASE("statistics agree with the raw-moment route on random pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 30);
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
        }
        CHECK(pearson(a, b) == doctest::Approx(pearson_oracle(a, b)).epsilon(1e-12));
        CHECK(cosine_distance(a, b) ==
              doctest::Approx(cosine_oracle(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("invariances") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(12), b(12), a_affine(12), b_scaled(12);
        for (int i = 0; i < 12; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
            a_affine[i] = 2.5 * a[i] + 0.75;
            b_scaled[i] = 3.0 * b[i];
        }
        // Pearson is affine invariant, cosine is scale invariant
        CHECK(pearson(a_affine, b) == doctest::Approx(pearson(a, b)).epsilon(1e-10));
        CHECK(cosine_distance(a, b_scaled) ==
              doctest::Approx(cosine_distance(a, b)).epsilon(1e-12));
        // and sign flip negates the correlation
        std::vector<double> neg(a);
        for (double& v : neg) v = -v;
        CHECK(pearson(neg, b) == doctest::Approx(-pearson(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("build_report joins rankings on the nonlinear scope") {
    // pollinators 0..2 carry nonlinear values; the linear ranking covers
    // the whole 5-node expansion
    auto nl = make_ranking(RankKind::nonlinear, {0, 1, 2}, {1.0, 0.0, 0.5},
                           "pollinators");
    auto lin = make_ranking(RankKind::linear, {0, 1, 2, 3, 4},
                            {0.9, 0.1, 0.4, 0.7, 0.2});
    const std::vector<int> degrees{2, 1, 1, 2, 2};
    const std::vector<std::string> labels{"u", "v", "w", "p", "q"};

    auto rep = build_report(nl, lin, degrees, labels, 5, "toy", 1000, "fp");

    CHECK(rep.record.network_id == "toy");
    CHECK(rep.record.scope == "pollinators");
    CHECK(rep.record.n_scope == 3);
    CHECK(rep.record.F == 1000);
    CHECK(rep.record.fingerprint == "fp");
    CHECK(rep.record.pearson_r ==
          doctest::Approx(pearson_oracle({1.0, 0.0, 0.5}, {0.9, 0.1, 0.4}))
              .epsilon(1e-12));
    CHECK(rep.record.cosine_d ==
          doctest::Approx(cosine_oracle({1.0, 0.0, 0.5}, {0.9, 0.1, 0.4}))
              .epsilon(1e-12));

    REQUIRE(rep.rows.size() == 5);
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        CHECK(rep.rows[i - 1].degree >= rep.rows[i].degree);
    int in_scope = 0;
    for (const auto& row : rep.rows) {
        CHECK(row.label == labels[row.node]);
        CHECK(row.degree == degrees[row.node]);
        CHECK(row.r_l == lin.values[row.node]);
        if (row.in_scope) {
            ++in_scope;
            CHECK(row.r_nl == nl.values[row.node]);
        } else {
            CHECK(row.r_nl == 0.0);
        }
    }
    CHECK(in_scope == 3);

    SUBCASE("tie order is a function of the seed") {
        auto rep_same = build_report(nl, lin, degrees, labels, 5, "toy", 1000, "fp");
        for (std::size_t i = 0; i < rep.rows.size(); ++i)
            CHECK(rep.rows[i].node == rep_same.rows[i].node);
    }
    SUBCASE("linear ranking must cover the scope") {
        auto short_lin = make_ranking(RankKind::linear, {0, 1}, {0.9, 0.1});
        CHECK_THROWS_AS(build_report(nl, short_lin, degrees, labels, 5), ScopeError);
    }
}

TEST_CASE("full-scope report keeps every node in the statistics") {
    auto nl = make_ranking(RankKind::nonlinear, {0, 1, 2}, {0.2, 0.8, 1.0});
    auto lin = make_ranking(RankKind::linear, {0, 1, 2}, {0.5, 0.25, 0.25});
    auto rep = build_report(nl, lin, {1, 1, 1}, {"a", "b", "c"}, 1);
    CHECK(rep.record.n_scope == 3);
    CHECK(rep.record.scope == "all");
    for (const auto& row : rep.rows) CHECK(row.in_scope);
}
