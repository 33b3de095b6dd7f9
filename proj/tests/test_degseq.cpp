#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rumor/constants.hpp"
#include "rumor/degree_sequence.hpp"

using namespace rumor;
using Catch::Approx;

TEST_CASE("regular sequences") {
    const auto seq = build_regular(6, 4);
    REQUIRE(seq.n() == 6);
    REQUIRE(seq.total_stubs == 24);
    REQUIRE(seq.max_degree == 4);
    for (Degree d : seq.degrees) REQUIRE(d == 4);
    REQUIRE(seq.histogram.at(4) == 6);

    REQUIRE_THROWS_AS(build_regular(5, 3), OddStubSumError);

    const auto tiny = build_regular(1, 2);
    REQUIRE(tiny.degrees == std::vector<Degree>{2});
    REQUIRE(tiny.matchable());
}

TEST_CASE("power-law counts are normalized and monotone") {
    const auto seq = build_power_law(1000, 3.5, 3, 31);
    REQUIRE(seq.n() == 1000);
    REQUIRE(seq.total_stubs % 2 == 0);
    REQUIRE(seq.histogram.at(3) > seq.histogram.at(4));
    std::uint64_t prev = seq.histogram.at(3);
    std::uint64_t total = 0;
    for (auto [k, c] : seq.histogram) {
        REQUIRE(c <= prev);
        prev = c;
        total += c;
    }
    REQUIRE(total == 1000);
}

TEST_CASE("power-law histogram invariants across sizes") {
    for (std::uint64_t n : {100ull, 1234ull, 10000ull, 65536ull}) {
        const auto seq = build_power_law(n, 3.2, 3);
        REQUIRE(seq.n() == n);
        REQUIRE(seq.total_stubs % 2 == 0);
        std::uint64_t total = 0;
        for (auto [k, c] : seq.histogram) total += c;
        REQUIRE(total == n);
        // max degree honors the o(sqrt(n)) cap
        REQUIRE(seq.max_degree <= static_cast<Degree>(std::pow(double(n), 0.49)) + 1);
    }
}

TEST_CASE("power-law empirical mean tracks the truncated analytic mean") {
    const std::uint64_t n = 10000;
    const double beta = 3.5;
    const Degree d_min = 3;
    const Degree cutoff = default_power_law_cutoff(n, beta, d_min);
    double wsum = 0.0, wmean = 0.0;
    for (Degree k = d_min; k <= cutoff; ++k) {
        const double w = std::pow(double(k), -beta);
        wsum += w;
        wmean += w * k;
    }
    const double analytic = wmean / wsum;
    const auto seq = build_power_law(n, beta, d_min);
    REQUIRE(seq.mean_degree() == Approx(analytic).epsilon(0.02));
}

TEST_CASE("effective minimum degree") {
    REQUIRE(delta(build_regular(10, 4)) == 3);
    REQUIRE(delta(build_power_law(1000, 3.5, 3)) == 3);
    REQUIRE(delta(make_sequence({3, 3, 3, 5})) == 3);
}

TEST_CASE("smoothness reports") {
    const auto reg = smoothness_report(SequenceFamily::regular(100, 5));
    REQUIRE(reg.is_sparse);
    REQUIRE(reg.is_two_smooth);
    REQUIRE(reg.second_moment == Approx(25.0));
    REQUIRE(reg.mean_degree == Approx(5.0));

    const auto heavy = smoothness_report(SequenceFamily::power_law(1000, 2.5, 3));
    REQUIRE(heavy.is_sparse);
    REQUIRE_FALSE(heavy.is_two_smooth);
    REQUIRE(std::isinf(heavy.second_moment));

    const auto light = smoothness_report(SequenceFamily::power_law(1000, 4.0, 3));
    REQUIRE(light.is_sparse);
    REQUIRE(light.is_two_smooth);
    // brute-force second moment of the untruncated distribution
    double h0 = 0.0, h2 = 0.0;
    for (std::uint64_t k = 3; k <= 3000000; ++k) {
        h0 += std::pow(double(k), -4.0);
        h2 += std::pow(double(k), -2.0);
    }
    REQUIRE(light.second_moment == Approx(h2 / h0).epsilon(0.01));

    const auto threshold = smoothness_report(SequenceFamily::power_law(1000, 3.5, 3));
    REQUIRE(threshold.is_two_smooth);
    REQUIRE(std::isfinite(threshold.second_moment));
}

TEST_CASE("growth-rate constant") {
    REQUIRE(growth_rate_constant(3) == Approx(3.4760594968).epsilon(1e-9));
    REQUIRE(growth_rate_constant(4) == Approx(2.4663034624).epsilon(1e-9));
    REQUIRE_THROWS_AS(growth_rate_constant(2), DomainError);
    REQUIRE_THROWS_AS(growth_rate_constant(1), DomainError);

    double prev = growth_rate_constant(3);
    for (Degree d = 4; d <= 50; ++d) {
        const double cur = growth_rate_constant(d);
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("regular broadcast constant") {
    REQUIRE(regular_broadcast_constant(5) == Approx(3.0239271688).epsilon(1e-9));
    REQUIRE(regular_broadcast_constant(4) == Approx(3.3353183366).epsilon(1e-9));
    REQUIRE_THROWS_AS(regular_broadcast_constant(2), DomainError);
    // both constants recorded side by side: at d=4 the full-broadcast constant
    // sits below the growth constant for delta = 3
    REQUIRE(regular_broadcast_constant(4) < growth_rate_constant(3));
    REQUIRE(regular_broadcast_constant(5) > growth_rate_constant(4));
}

TEST_CASE("protocol constants for a 4-regular sequence") {
    const auto seq = build_regular(1000, 4);
    const auto pc = protocol_constants(seq);
    REQUIRE(pc.delta == 3);
    REQUIRE(pc.lambda_delta == 0.0);
    // supremum solves 2g/(1-g) = 1/576, i.e. g = 1/1153
    REQUIRE(pc.gamma == Approx(0.9 / 1153.0).epsilon(1e-9));
    REQUIRE(pc.M == 4);
    REQUIRE(pc.alpha == Approx(pc.gamma / 2.0).epsilon(1e-9));
    REQUIRE(pc.mean_degree == Approx(4.0));

    // re-check the constraints independently
    const double g = pc.gamma;
    REQUIRE(2.0 * g / (1.0 - g) < (1.0 - pc.lambda_delta) / (64.0 * 9.0));
    REQUIRE(g < 1.0 / 3.0);
    REQUIRE(g <= 1.0 / 6.0);
    REQUIRE(pc.alpha <= (1.0 - pc.lambda_delta) / (1.0 + pc.lambda_delta));
    REQUIRE(pc.alpha <= 0.25);

    REQUIRE_THROWS_AS(protocol_constants(seq, 0.2), InfeasibleConstantsError);
}

TEST_CASE("protocol constants on mixed sequences") {
    // power law with d_min 3: delta = 3, lambda_3 < 1
    const auto seq = build_power_law(10000, 3.5, 3);
    const auto pc = protocol_constants(seq);
    REQUIRE(pc.delta == 3);
    REQUIRE(pc.lambda_delta < 1.0);
    REQUIRE(pc.gamma > 0.0);
    REQUIRE(pc.M >= 3);
    REQUIRE(pc.alpha > 0.0);
    // M covers all but a gamma/4 fraction of the stub mass
    double mass = 0.0, cum = 0.0;
    for (auto [k, c] : seq.histogram) mass += seq.fraction(k) * k;
    for (auto [k, c] : seq.histogram)
        if (k <= pc.M) cum += seq.fraction(k) * k;
    REQUIRE(cum / mass >= 1.0 - pc.gamma / 4.0);
    if (pc.M > 3) {
        double cum_prev = 0.0;
        for (auto [k, c] : seq.histogram)
            if (k < pc.M) cum_prev += seq.fraction(k) * k;
        REQUIRE(cum_prev / mass < 1.0 - pc.gamma / 4.0);
    }

    REQUIRE_THROWS_AS(protocol_constants(build_regular(10, 3)), DomainError); // delta = 2
}

TEST_CASE("sequence family plumbing") {
    const auto fam = SequenceFamily::power_law(1000, 3.5, 3);
    REQUIRE_FALSE(fam.bounded_max_degree());
    REQUIRE(SequenceFamily::power_law(1000, 3.5, 3, 20).bounded_max_degree());
    REQUIRE(SequenceFamily::regular(10, 4).bounded_max_degree());
    const auto bigger = fam.with_n(2000);
    REQUIRE(bigger.build().n() == 2000);
    REQUIRE_THROWS_AS(SequenceFamily::power_law(10, 1.5, 3), DomainError);
    REQUIRE_THROWS_AS(make_sequence({}), DomainError);
    REQUIRE_THROWS_AS(make_sequence({0u, 2u}), DomainError);
}
