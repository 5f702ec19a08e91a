#include <doctest.h>

#include <string>
#include <vector>

#include "ctrlrank/errors.hpp"
#include "ctrlrank/runconfig.hpp"

using namespace ctrlrank;

TEST_CASE("make_grid hits both endpoints") {
    auto gamma = make_grid({0.0, 3.0, 0.05});
    REQUIRE(gamma.size() == 61);
    CHECK(gamma.front() == 0.0);
    CHECK(gamma.back() == doctest::Approx(3.0).epsilon(1e-12));
    for (std::size_t i = 1; i < gamma.size(); ++i)
        CHECK(gamma[i] - gamma[i - 1] == doctest::Approx(0.05).epsilon(1e-9));

    CHECK(make_grid({0.0, 1.0, 0.02}).size() == 51);
    CHECK(make_grid({0.0, 0.3, 0.1}).size() == 4);
    CHECK(make_grid({0.0, 1.0, 0.3}).size() == 4); // 0, .3, .6, .9
    CHECK(make_grid({2.0, 2.0, 0.5}) == std::vector<double>{2.0});

    CHECK_THROWS_AS(make_grid({0.0, 1.0, 0.0}), ParseError);
    CHECK_THROWS_AS(make_grid({0.0, 1.0, -0.1}), ParseError);
    CHECK_THROWS_AS(make_grid({1.0, 0.0, 0.1}), ParseError);
}

TEST_CASE("parse_grid") {
    auto g = parse_grid("0:3:0.05");
    CHECK(g.lo == 0.0);
    CHECK(g.hi == 3.0);
    CHECK(g.step == 0.05);
    CHECK(parse_grid(" 0.5 : 1.5 : 0.25 ").lo == 0.5);

    CHECK_THROWS_AS(parse_grid("1:2"), ParseError);
    CHECK_THROWS_AS(parse_grid("a:b:c"), ParseError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ParseError);
    CHECK_THROWS_AS(parse_grid("2:1:0.1"), ParseError);
}

TEST_CASE("defaults reproduce the standard setting") {
    RunConfig c;
    CHECK(c.model == "auto");
    CHECK(c.mut.h == 0.2);
    CHECK(c.mut.t == 0.5);
    CHECK(c.mut.beta_intra == 1.0);
    CHECK(c.mut.beta_inter == 0.0);
    CHECK(c.mut.alpha_A == -0.3);
    CHECK(c.mut.mu_A == 1e-4);
    CHECK(c.gene.B == 1.0);
    CHECK(c.gene.f == 1.0);
    CHECK(c.gene.h_hill == 2.0);
    CHECK(c.gamma_grid.step == 0.05);
    CHECK(c.c_grid.step == 0.02);
    CHECK(c.threshold == 0.1);
    CHECK(c.a_s == 1.5);
    CHECK(c.samples == 1000);
    CHECK(c.seed == 42);
    CHECK(c.integ.dt == 0.01);
    CHECK(c.integ.eps == 1e-10);
    CHECK(c.integ.t_max == 5000.0);
    CHECK(c.max_path_length == 7);
    CHECK(c.path_mode == "walks");
}

TEST_CASE("apply_config_entry sets every documented key") {
    RunConfig c;
    apply_config_entry(c, "model", "gene");
    CHECK(c.model == "gene");
    apply_config_entry(c, "gamma_grid", "0:2:0.1");
    CHECK(c.gamma_grid.hi == 2.0);
    apply_config_entry(c, "c_grid", "0.1:0.9:0.05");
    CHECK(c.c_grid.lo == 0.1);
    apply_config_entry(c, "threshold", "0.05");
    CHECK(c.threshold == 0.05);
    apply_config_entry(c, "as", "2.5");
    CHECK(c.a_s == 2.5);
    apply_config_entry(c, "samples", "250");
    CHECK(c.samples == 250);
    apply_config_entry(c, "seed", "7");
    CHECK(c.seed == 7);
    apply_config_entry(c, "cluster_tol", "1e-7");
    CHECK(c.tol.cluster_tol_rel == 1e-7);
    apply_config_entry(c, "rank_tol", "1e-9");
    CHECK(c.tol.rank_tol == 1e-9);
    apply_config_entry(c, "mode", "simple");
    CHECK(c.path_mode == "simple");
    apply_config_entry(c, "dt", "0.005");
    CHECK(c.integ.dt == 0.005);
    apply_config_entry(c, "eps", "1e-9");
    CHECK(c.integ.eps == 1e-9);
    apply_config_entry(c, "t_max", "100");
    CHECK(c.integ.t_max == 100.0);
    apply_config_entry(c, "path_length", "5");
    CHECK(c.max_path_length == 5);
    apply_config_entry(c, "input", "net.csv");
    CHECK(c.input_path == "net.csv");
    apply_config_entry(c, "outdir", "out");
    CHECK(c.output_dir == "out");
    apply_config_entry(c, "keep_sets", "true");
    CHECK(c.keep_sets);
    apply_config_entry(c, "keep_sets", "0");
    CHECK_FALSE(c.keep_sets);
    apply_config_entry(c, "h", "0.3");
    CHECK(c.mut.h == 0.3);
    apply_config_entry(c, "gene_h", "3");
    CHECK(c.gene.h_hill == 3.0);

    SUBCASE("rejects unknown keys and bad values") {
        CHECK_THROWS_AS(apply_config_entry(c, "bogus", "1"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "samples", "abc"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "samples", "0"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "model", "banana"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "mode", "tele"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "dt", "-0.01"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "keep_sets", "maybe"), ParseError);
        CHECK_THROWS_AS(apply_config_entry(c, "threshold", "0.1x"), ParseError);
    }
}

TEST_CASE("load_config layers over a base") {
    const char* text =
        "# comment line\n"
        "samples = 50\n"
        "\n"
        "seed=9\n"
        "gamma_grid = 0:1:0.5\n";
    RunConfig base;
    base.threshold = 0.2;
    auto c = load_config(text, base);
    CHECK(c.samples == 50);
    CHECK(c.seed == 9);
    CHECK(c.gamma_grid.hi == 1.0);
    CHECK(c.threshold == 0.2); // untouched base value survives

    CHECK_THROWS_AS(load_config("just words\n"), ParseError);
    CHECK_THROWS_AS(load_config("nope = 1\n"), ParseError);
}

TEST_CASE("resolve_model") {
    RunConfig c;
    c.input_path = "plants.csv";
    CHECK(resolve_model(c) == "mutualistic");
    c.input_path = "genes.txt";
    CHECK(resolve_model(c) == "gene");
    c.model = "mutualistic";
    CHECK(resolve_model(c) == "mutualistic");
}

TEST_CASE("provenance is ordered and reproducible") {
    RunConfig c;
    c.input_path = "net.csv";
    auto kv = provenance(c, "rank-nl");
    REQUIRE(!kv.empty());
    CHECK(kv[0].first == "tool");
    CHECK(kv[0].second == "ctrlrank");
    CHECK(kv[1].first == "command");
    CHECK(kv[1].second == "rank-nl");

    auto find = [&](const std::string& key) -> std::string {
        for (const auto& [k, v] : kv)
            if (k == key) return v;
        return "<missing>";
    };
    CHECK(find("gamma_grid") == "0:3:0.05");
    CHECK(find("seed") == "42");
    CHECK(find("model") == "mutualistic");
    CHECK(find("mu_a") == "1e-04");

    CHECK(provenance(c, "rank-nl") == kv); // byte-stable
}
