#include <catch2/catch_amalgamated.hpp>

#include "rumor/tree_process.hpp"

using namespace rumor;
using Catch::Approx;

TEST_CASE("a lone vertex with two free stubs spawns with probability 2/3") {
    const std::uint64_t reps = 100000;
    std::uint64_t spawned = 0;
    Rng rng(1);
    for (std::uint64_t i = 0; i < reps; ++i) {
        TreeProcess tree(3, 1); // one newborn: 1 used, 2 free
        tree.step(rng);
        if (tree.last_newborns() == 1) ++spawned;
        REQUIRE(tree.last_newborns() <= 1);
    }
    REQUIRE(double(spawned) / reps == Approx(2.0 / 3.0).margin(0.005));
}

TEST_CASE("expected one-round growth at delta=3 from 300 free stubs") {
    // 150 newborns * 2 free stubs = 300 free; E[P'] = 400, E[N] = 100.
    const std::uint64_t reps = 20000;
    double sum_p = 0, sum_n = 0;
    Rng rng(2);
    for (std::uint64_t i = 0; i < reps; ++i) {
        TreeProcess tree(3, 150);
        REQUIRE(tree.free_stubs() == 300);
        tree.step(rng);
        sum_p += double(tree.free_stubs());
        sum_n += double(tree.last_newborns());
    }
    REQUIRE(sum_p / reps == Approx(400.0).epsilon(0.005));
    REQUIRE(sum_n / reps == Approx(100.0).epsilon(0.005));
}

TEST_CASE("no free stubs means no newborns") {
    TreeProcess tree(3, 0);
    Rng rng(3);
    tree.step(rng);
    REQUIRE(tree.last_newborns() == 0);
    REQUIRE(tree.free_stubs() == 0);
}

TEST_CASE("per-round stub identity P_i = P_{i-1} + (delta-2) N_i") {
    Rng rng(4);
    for (Degree delta : {3u, 4u, 6u}) {
        TreeProcess tree(delta, 50);
        for (int r = 0; r < 15; ++r) {
            const std::uint64_t before = tree.free_stubs();
            tree.step(rng);
            REQUIRE(tree.free_stubs() ==
                    before + std::uint64_t(delta - 2) * tree.last_newborns());
            REQUIRE(tree.last_selected_free() == tree.last_newborns());
        }
    }
}

TEST_CASE("growth verification at delta=4 over many seeds") {
    // Mean per-round ratios across seeds should sit within 2% of 3/2 and 1/4.
    const int seeds = 5;
    const int rounds = 30;
    std::vector<double> free_ratio_sum(rounds, 0.0), newborn_ratio_sum(rounds, 0.0);
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(100, s));
        TreeProcess tree(4, 3334); // >= 1e4 free stubs
        std::vector<TreeSnapshot> history{snapshot(tree)};
        for (int r = 0; r < rounds; ++r) {
            tree.step(rng);
            history.push_back(snapshot(tree));
        }
        const auto report = verify_tree_growth(history, 4, 0.02);
        REQUIRE(report.samples == rounds);
        REQUIRE(report.within_tolerance);
        for (int r = 0; r < rounds; ++r) {
            const double prev = double(history[r].free_stubs);
            free_ratio_sum[r] += double(history[r + 1].free_stubs) / prev;
            newborn_ratio_sum[r] += double(history[r + 1].newborns) / prev;
        }
    }
    for (int r = 0; r < rounds; ++r) {
        REQUIRE(free_ratio_sum[r] / seeds == Approx(1.5).epsilon(0.02));
        REQUIRE(newborn_ratio_sum[r] / seeds == Approx(0.25).epsilon(0.02));
    }
}

TEST_CASE("delta=3 growth targets 4/3 and 1/3") {
    Rng rng(11);
    TreeProcess tree(3, 5000);
    std::vector<TreeSnapshot> history{snapshot(tree)};
    for (int r = 0; r < 25; ++r) {
        tree.step(rng);
        history.push_back(snapshot(tree));
    }
    const auto report = verify_tree_growth(history, 3, 0.03);
    REQUIRE(report.mean_free_ratio == Approx(4.0 / 3.0).epsilon(0.03));
    REQUIRE(report.mean_newborn_ratio == Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("a two-snapshot history yields one sample and no error") {
    Rng rng(12);
    TreeProcess tree(3, 100);
    std::vector<TreeSnapshot> history{snapshot(tree)};
    tree.step(rng);
    history.push_back(snapshot(tree));
    const auto report = verify_tree_growth(history, 3, 0.5);
    REQUIRE(report.samples == 1);

    const auto empty = verify_tree_growth({snapshot(tree)}, 3, 0.5);
    REQUIRE(empty.samples == 0);
    REQUIRE(empty.within_tolerance);
}
