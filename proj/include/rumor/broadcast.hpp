#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/multigraph.hpp"
#include "rumor/rng.hpp"

namespace rumor {

enum class Protocol { Push, Pull, PushPull, Drp };

inline std::string to_string(Protocol p) {
    switch (p) {
    case Protocol::Push: return "push";
    case Protocol::Pull: return "pull";
    case Protocol::PushPull: return "push_pull";
    case Protocol::Drp: return "drp";
    }
    return "?";
}

inline Protocol protocol_from_string(const std::string& s) {
    if (s == "push") return Protocol::Push;
    if (s == "pull") return Protocol::Pull;
    if (s == "push_pull") return Protocol::PushPull;
    if (s == "drp") return Protocol::Drp;
    throw ConfigError("unknown protocol: " + s);
}

inline constexpr std::int64_t kNotReached = -1;

struct RunResult {
    Protocol protocol = Protocol::Push;
    std::uint64_t n = 0;
    Vertex init = 0;
    std::uint64_t seed = 0; // filled in by callers that track seeds
    std::vector<std::uint64_t> trajectory; // |I_i| for rounds i = 0, 1, ...
    std::int64_t rounds_to_complete = kNotReached; // T

    bool complete() const { return rounds_to_complete != kNotReached; }
};

// First round i with |I_i| >= ceil((1-eps) n), or kNotReached.
inline std::int64_t time_to_fraction(const RunResult& result, double eps) {
    if (eps < 0.0 || eps > 1.0) throw DomainError("eps must be in [0, 1]");
    const double raw = (1.0 - eps) * static_cast<double>(result.n);
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(std::max(0.0, std::ceil(raw - 1e-9)));
    for (std::size_t i = 0; i < result.trajectory.size(); ++i)
        if (result.trajectory[i] >= threshold) return static_cast<std::int64_t>(i);
    return kNotReached;
}

// Synchronous push: each round every informed vertex pushes along one
// uniformly chosen incident stub (multi-edges weighted by multiplicity; a
// loop push is a wasted contact). Vertices informed mid-round act from the
// next round on.
inline RunResult run_push(const Multigraph& g, Vertex init, std::uint32_t max_rounds, Rng& rng) {
    const Vertex n = g.num_vertices();
    RunResult result;
    result.protocol = Protocol::Push;
    result.n = n;
    result.init = init;
    std::vector<std::uint8_t> informed(n, 0);
    std::vector<Vertex> informed_list;
    informed_list.reserve(n);
    informed[init] = 1;
    informed_list.push_back(init);
    result.trajectory.push_back(1);
    if (informed_list.size() == n) {
        result.rounds_to_complete = 0;
        return result;
    }
    for (std::uint32_t round = 1; round <= max_rounds; ++round) {
        const std::size_t snapshot = informed_list.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            const Vertex target = g.contact(informed_list[i], rng);
            if (!informed[target]) {
                informed[target] = 1;
                informed_list.push_back(target);
            }
        }
        result.trajectory.push_back(informed_list.size());
        if (informed_list.size() == n) {
            result.rounds_to_complete = round;
            break;
        }
    }
    return result;
}

// Synchronous pull: each round every uninformed vertex asks one uniformly
// chosen incident stub and becomes informed iff the other endpoint was
// informed at the start of the round.
inline RunResult run_pull(const Multigraph& g, Vertex init, std::uint32_t max_rounds, Rng& rng) {
    const Vertex n = g.num_vertices();
    RunResult result;
    result.protocol = Protocol::Pull;
    result.n = n;
    result.init = init;
    constexpr std::uint32_t kNever = 0xffffffffu;
    std::vector<std::uint32_t> informed_round(n, kNever);
    informed_round[init] = 0;
    std::vector<Vertex> uninformed;
    uninformed.reserve(n - 1);
    for (Vertex v = 0; v < n; ++v)
        if (v != init) uninformed.push_back(v);
    result.trajectory.push_back(1);
    if (uninformed.empty()) {
        result.rounds_to_complete = 0;
        return result;
    }
    for (std::uint32_t round = 1; round <= max_rounds; ++round) {
        std::size_t keep = 0;
        for (std::size_t i = 0; i < uninformed.size(); ++i) {
            const Vertex u = uninformed[i];
            const Vertex target = g.contact(u, rng);
            if (informed_round[target] < round)
                informed_round[u] = round;
            else
                uninformed[keep++] = u;
        }
        uninformed.resize(keep);
        result.trajectory.push_back(n - uninformed.size());
        if (uninformed.empty()) {
            result.rounds_to_complete = round;
            break;
        }
    }
    return result;
}

// Push and pull in the same round, both against the start-of-round informed
// set; a vertex is informed when reached by either mechanism.
inline RunResult run_push_pull(const Multigraph& g, Vertex init, std::uint32_t max_rounds,
                               Rng& rng) {
    const Vertex n = g.num_vertices();
    RunResult result;
    result.protocol = Protocol::PushPull;
    result.n = n;
    result.init = init;
    constexpr std::uint32_t kNever = 0xffffffffu;
    std::vector<std::uint32_t> informed_round(n, kNever);
    informed_round[init] = 0;
    std::vector<Vertex> informed_list{init};
    informed_list.reserve(n);
    std::vector<Vertex> uninformed;
    uninformed.reserve(n - 1);
    for (Vertex v = 0; v < n; ++v)
        if (v != init) uninformed.push_back(v);
    result.trajectory.push_back(1);
    if (uninformed.empty()) {
        result.rounds_to_complete = 0;
        return result;
    }
    for (std::uint32_t round = 1; round <= max_rounds; ++round) {
        const std::size_t push_snapshot = informed_list.size();
        for (std::size_t i = 0; i < push_snapshot; ++i) {
            const Vertex target = g.contact(informed_list[i], rng);
            if (informed_round[target] == kNever) {
                informed_round[target] = round;
                informed_list.push_back(target);
            }
        }
        // Every vertex uninformed at round start pulls, even if a push just
        // reached it; the two mechanisms commute within the round.
        std::size_t keep = 0;
        for (std::size_t i = 0; i < uninformed.size(); ++i) {
            const Vertex u = uninformed[i];
            const Vertex target = g.contact(u, rng);
            if (informed_round[target] < round && informed_round[u] == kNever) {
                informed_round[u] = round;
                informed_list.push_back(u);
            }
            if (informed_round[u] == kNever) uninformed[keep++] = u;
        }
        uninformed.resize(keep);
        result.trajectory.push_back(n - uninformed.size());
        if (uninformed.empty()) {
            result.rounds_to_complete = round;
            break;
        }
    }
    return result;
}

inline RunResult run_protocol(Protocol protocol, const Multigraph& g, Vertex init,
                              std::uint32_t max_rounds, Rng& rng) {
    switch (protocol) {
    case Protocol::Push: return run_push(g, init, max_rounds, rng);
    case Protocol::Pull: return run_pull(g, init, max_rounds, rng);
    case Protocol::PushPull: return run_push_pull(g, init, max_rounds, rng);
    case Protocol::Drp: break;
    }
    throw ConfigError("run_protocol does not handle the delayed push process");
}

// Push on the complete graph K_n without materializing it: every contact is
// uniform over the n-1 other vertices.
inline RunResult run_push_complete_graph(Vertex n, Vertex init, std::uint32_t max_rounds,
                                         Rng& rng) {
    RunResult result;
    result.protocol = Protocol::Push;
    result.n = n;
    result.init = init;
    std::vector<std::uint8_t> informed(n, 0);
    std::vector<Vertex> informed_list{init};
    informed_list.reserve(n);
    informed[init] = 1;
    result.trajectory.push_back(1);
    if (n == 1) {
        result.rounds_to_complete = 0;
        return result;
    }
    for (std::uint32_t round = 1; round <= max_rounds; ++round) {
        const std::size_t snapshot = informed_list.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            const Vertex v = informed_list[i];
            Vertex target = static_cast<Vertex>(uniform_below(rng, n - 1));
            if (target >= v) ++target;
            if (!informed[target]) {
                informed[target] = 1;
                informed_list.push_back(target);
            }
        }
        result.trajectory.push_back(informed_list.size());
        if (informed_list.size() == n) {
            result.rounds_to_complete = round;
            break;
        }
    }
    return result;
}

} // namespace rumor
