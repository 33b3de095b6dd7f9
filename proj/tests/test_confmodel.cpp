#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "rumor/stub_space.hpp"

using namespace rumor;
using Catch::Approx;
namespace th = test_helpers;

TEST_CASE("stub space construction") {
    const auto two = StubSpace(make_sequence({1, 1}));
    REQUIRE(two.total_stubs() == 2);
    REQUIRE(two.unmatched_count() == 2);

    const auto loopy = StubSpace(make_sequence({2}));
    REQUIRE(loopy.total_stubs() == 2);
    REQUIRE(loopy.num_vertices() == 1);

    const auto cube = StubSpace(make_sequence({3, 3, 3, 3}));
    REQUIRE(cube.total_stubs() == 12);
    REQUIRE(cube.unmatched_count() == 12);
    REQUIRE(cube.owner(0) == 0);
    REQUIRE(cube.owner(3) == 1);
    REQUIRE(cube.degree(2) == 3);

    REQUIRE_THROWS_AS(StubSpace(make_sequence({1, 1, 1})), OddStubSumError);
}

TEST_CASE("match_uniform forced and error cases") {
    Rng rng(1);
    StubSpace pair(make_sequence({1, 1}));
    REQUIRE(pair.match_uniform(0, rng) == 1);
    REQUIRE(pair.is_matched(0));
    REQUIRE(pair.partner(1) == 0);
    REQUIRE_THROWS_AS(pair.match_uniform(0, rng), AlreadyMatchedError);

    StubSpace loop(make_sequence({2}));
    REQUIRE(loop.match_uniform(0, rng) == 1); // self-loop forced
    REQUIRE_THROWS_AS(loop.match_uniform(1, rng), AlreadyMatchedError);

    StubSpace small(make_sequence({1, 1}));
    small.match_pair(0, 1);
    REQUIRE_THROWS_AS(small.match_uniform(0, rng), AlreadyMatchedError);
}

TEST_CASE("first match from [2,2] is uniform over the other three stubs") {
    Rng rng(7);
    const auto seq = make_sequence({2, 2});
    std::map<StubId, std::uint64_t> counts;
    const std::uint64_t samples = 100000;
    StubSpace space(seq);
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        ++counts[space.match_uniform(0, rng)];
    }
    REQUIRE(counts.size() == 3);
    for (auto [stub, c] : counts)
        REQUIRE(double(c) / double(samples) == Approx(1.0 / 3.0).margin(0.01));
}

TEST_CASE("pairing enumeration counts (2m-1)!!") {
    REQUIRE(th::total_count(th::enumerate_pairings({3, 1, 1, 1})) == 15); // m = 3
    REQUIRE(th::total_count(th::enumerate_pairings({2, 2})) == 3);
    REQUIRE(th::total_count(th::enumerate_pairings({4, 4})) == 105); // m = 4
}

TEST_CASE("complete matching on [2,2]: double edge 2/3, two loops 1/3") {
    Rng rng(3);
    const auto seq = make_sequence({2, 2});
    std::uint64_t double_edge = 0, two_loops = 0;
    const std::uint64_t samples = 100000;
    StubSpace space(seq);
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        const auto g = space.complete_matching(rng);
        const auto sig = th::signature(g);
        if (sig == "0-1;0-1;") ++double_edge;
        if (sig == "0-0;1-1;") ++two_loops;
    }
    REQUIRE(double_edge + two_loops == samples);
    REQUIRE(double(double_edge) / samples == Approx(2.0 / 3.0).margin(0.01));
    REQUIRE(double(two_loops) / samples == Approx(1.0 / 3.0).margin(0.01));
}

TEST_CASE("complete matching on [1,1,1,1]: three pairings, each 1/3") {
    Rng rng(11);
    const auto seq = make_sequence({1, 1, 1, 1});
    std::map<std::string, std::uint64_t> counts;
    const std::uint64_t samples = 90000;
    StubSpace space(seq);
    std::uint64_t with_edge_01 = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        const auto g = space.complete_matching(rng);
        ++counts[th::signature(g)];
        const auto edges = g.canonical_edges();
        for (const auto& e : edges)
            if (e == Edge{0, 1}) ++with_edge_01;
    }
    REQUIRE(counts.size() == 3);
    for (auto [sig, c] : counts)
        REQUIRE(double(c) / samples == Approx(1.0 / 3.0).margin(0.01));
    REQUIRE(double(with_edge_01) / samples == Approx(1.0 / 3.0).margin(0.01));
}

TEST_CASE("single vertex of degree two always yields its loop") {
    Rng rng(5);
    auto g = sample_multigraph(make_sequence({2}), rng);
    REQUIRE(th::signature(g) == "0-0;");
    REQUIRE(g.degree(0) == 2); // the loop counts twice
}

TEST_CASE("sampled distribution matches enumeration on small sequences") {
    // The full sweep over every sequence with at most 8 stubs runs in the
    // acceptance suite at 1e5 samples; spot-check three here.
    Rng rng(17);
    const std::uint64_t samples = 100000;
    for (const std::vector<Degree>& degrees :
         {std::vector<Degree>{2, 2}, {1, 1, 1, 1}, {3, 1, 1, 1}}) {
        const auto exact = th::enumerate_pairings(degrees);
        std::map<std::string, std::uint64_t> empirical;
        StubSpace space(make_sequence(degrees));
        for (std::uint64_t i = 0; i < samples; ++i) {
            if (i > 0) space.reset();
            ++empirical[th::signature(space.complete_matching(rng))];
        }
        const double tv = th::total_variation(empirical, samples, exact);
        INFO("sequence with " << degrees.size() << " vertices");
        REQUIRE(tv <= 0.02);
    }
}

TEST_CASE("matching order does not change the distribution") {
    Rng rng(23);
    const std::vector<Degree> degrees{3, 1, 1, 1};
    const auto exact = th::enumerate_pairings(degrees);
    const std::uint64_t samples = 60000;

    std::map<std::string, std::uint64_t> high_first;
    StubSpace space(make_sequence(degrees));
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        for (StubId e = space.total_stubs(); e-- > 0;)
            if (!space.is_matched(e)) space.match_uniform(e, rng);
        ++high_first[th::signature(space.to_multigraph())];
    }
    REQUIRE(th::total_variation(high_first, samples, exact) <= 0.02);
}

TEST_CASE("degree preservation holds for arbitrary sequences") {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Degree> degrees;
        const std::size_t n = 2 + uniform_below(rng, 20);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Degree d = 1 + static_cast<Degree>(uniform_below(rng, 6));
            degrees.push_back(d);
            total += d;
        }
        if (total % 2 != 0) degrees[0] += 1;
        const auto seq = make_sequence(degrees);
        const auto g = sample_multigraph(seq, rng);
        REQUIRE(g.num_edges() == seq.total_stubs / 2);
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            REQUIRE(g.degree(v) == seq.degrees[v]);
    }
}

TEST_CASE("is_simple") {
    REQUIRE_FALSE(Multigraph::from_edges(2, {{0, 1}, {0, 1}}).is_simple());
    REQUIRE(Multigraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}).is_simple());
    REQUIRE_FALSE(Multigraph::from_edges(3, {{0, 1}, {1, 2}, {2, 2}}).is_simple());
}

TEST_CASE("simplicity formula values") {
    REQUIRE(janson_simple_prob(build_regular(200, 3)) == Approx(std::exp(-2.0)).epsilon(1e-12));
    REQUIRE(janson_simple_prob(build_regular(200, 4)) == Approx(std::exp(-3.75)).epsilon(1e-12));
}

TEST_CASE("3-regular simplicity Monte Carlo near the formula") {
    Rng rng(41);
    const auto seq = build_regular(200, 3);
    const std::uint64_t samples = 20000;
    std::uint64_t simple = 0;
    StubSpace space(seq);
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        if (space.complete_matching(rng).is_simple()) ++simple;
    }
    REQUIRE(double(simple) / samples == Approx(std::exp(-2.0)).margin(0.015));
}

TEST_CASE("sample_simple") {
    Rng rng(43);
    REQUIRE(sample_simple(make_sequence({1, 1}), rng, 1).is_simple());
    REQUIRE_THROWS_AS(sample_simple(make_sequence({2}), rng, 50), TriesExhaustedError);
    REQUIRE(sample_simple(build_regular(200, 3), rng, 200).is_simple());
}

TEST_CASE("edge list export format") {
    const auto g = Multigraph::from_edges(3, {{0, 1}, {2, 2}, {1, 0}});
    REQUIRE(g.edge_list_text() == "# n=3 m=3\n0 1\n2 2\n0 1\n");
}
