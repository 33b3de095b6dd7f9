#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rumor/degree_sequence.hpp"
#include "rumor/errors.hpp"
#include "rumor/rng.hpp"

namespace rumor {

// The (delta-1)-ary tree process: every vertex has delta stubs, newborns
// start with one used and delta-1 free stubs, and each round every vertex
// selects one of its delta stubs uniformly; every selected free stub spawns
// a newborn matched to it.
//
// Vertices are exchangeable given their free-stub count, so the state is
// kept as one counter per free-stub class and each round draws one binomial
// per class (a vertex with f free stubs spawns with probability f/delta).
// This is distributed exactly as the per-vertex simulation and stays cheap
// when the population reaches billions of stubs.
class TreeProcess {
public:
    TreeProcess(Degree tree_degree, std::uint64_t initial_newborns)
        : delta_(tree_degree), class_count_(tree_degree, 0) {
        if (tree_degree < 2) throw DomainError("tree process needs delta >= 2");
        class_count_[delta_ - 1] = initial_newborns;
        free_stubs_ = initial_newborns * (delta_ - 1);
        vertices_ = initial_newborns;
        last_newborns_ = initial_newborns;
    }

    void step(Rng& rng) {
        std::uint64_t spawned = 0;
        // Ascending order: vertices dropping from class f to f-1 land in an
        // already-processed class and are not drawn twice this round.
        for (Degree f = 1; f <= delta_ - 1; ++f) {
            const std::uint64_t population = class_count_[f];
            if (population == 0) continue;
            const double p = static_cast<double>(f) / static_cast<double>(delta_);
            std::binomial_distribution<std::uint64_t> binom(population, p);
            const std::uint64_t selected = binom(rng);
            class_count_[f] -= selected;
            class_count_[f - 1] += selected;
            spawned += selected;
        }
        class_count_[delta_ - 1] += spawned;
        free_stubs_ += spawned * (delta_ - 2);
        vertices_ += spawned;
        last_newborns_ = spawned;
        last_selected_free_ = spawned;
        ++round_;
    }

    Degree tree_degree() const { return delta_; }
    std::uint64_t round() const { return round_; }
    std::uint64_t free_stubs() const { return free_stubs_; }        // |P_i|
    std::uint64_t last_newborns() const { return last_newborns_; }  // |N_i|
    std::uint64_t last_selected_free() const { return last_selected_free_; } // |S_i|
    std::uint64_t vertices() const { return vertices_; }

private:
    Degree delta_;
    std::uint64_t round_ = 0;
    std::uint64_t free_stubs_ = 0;
    std::uint64_t vertices_ = 0;
    std::uint64_t last_newborns_ = 0;
    std::uint64_t last_selected_free_ = 0;
    std::vector<std::uint64_t> class_count_; // index = free-stub count
};

// One per-round observation of the tree process.
struct TreeSnapshot {
    std::uint64_t round = 0;
    std::uint64_t free_stubs = 0;
    std::uint64_t newborns = 0;
};

inline TreeSnapshot snapshot(const TreeProcess& tree) {
    return {tree.round(), tree.free_stubs(), tree.last_newborns()};
}

// Spawns a newborn for each selected free stub; spec-shaped wrapper.
inline void tree_step(TreeProcess& tree, Rng& rng) { tree.step(rng); }

struct TreeGrowthReport {
    std::size_t samples = 0;        // number of round transitions examined
    double mean_free_ratio = 0.0;   // mean P_i / P_{i-1}
    double mean_newborn_ratio = 0.0;// mean N_i / P_{i-1}
    double max_free_deviation = 0.0;    // relative to 2(1-1/delta)
    double max_newborn_deviation = 0.0; // relative to 1/delta
    bool within_tolerance = true;
};

// Checks consecutive snapshots against the expected per-round growth:
// P_i/P_{i-1} near 2(1-1/delta) and N_i/P_{i-1} near 1/delta.
inline TreeGrowthReport verify_tree_growth(const std::vector<TreeSnapshot>& history,
                                           Degree tree_degree, double tol) {
    const double free_target = 2.0 * (1.0 - 1.0 / static_cast<double>(tree_degree));
    const double newborn_target = 1.0 / static_cast<double>(tree_degree);
    TreeGrowthReport report;
    double free_sum = 0.0, newborn_sum = 0.0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        const double prev = static_cast<double>(history[i - 1].free_stubs);
        if (prev <= 0.0) continue;
        const double fr = static_cast<double>(history[i].free_stubs) / prev;
        const double nr = static_cast<double>(history[i].newborns) / prev;
        free_sum += fr;
        newborn_sum += nr;
        report.max_free_deviation =
            std::max(report.max_free_deviation, std::abs(fr - free_target) / free_target);
        report.max_newborn_deviation =
            std::max(report.max_newborn_deviation,
                     std::abs(nr - newborn_target) / newborn_target);
        ++report.samples;
    }
    if (report.samples > 0) {
        report.mean_free_ratio = free_sum / static_cast<double>(report.samples);
        report.mean_newborn_ratio = newborn_sum / static_cast<double>(report.samples);
        report.within_tolerance =
            std::abs(report.mean_free_ratio - free_target) / free_target <= tol &&
            std::abs(report.mean_newborn_ratio - newborn_target) / newborn_target <= tol;
    }
    return report;
}

} // namespace rumor
