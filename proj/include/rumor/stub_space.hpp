#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rumor/degree_sequence.hpp"
#include "rumor/errors.hpp"
#include "rumor/multigraph.hpp"
#include "rumor/rng.hpp"

namespace rumor {

using StubId = std::uint32_t;

inline constexpr StubId kNoStub = std::numeric_limits<StubId>::max();

// Configuration-model state: stubs indexed 0..total_stubs-1 grouped by
// vertex, the set U of unmatched stubs (array with swap-remove plus a
// position index, so uniform sampling and deletion are O(1)), and the
// partial matching built so far.
class StubSpace {
public:
    explicit StubSpace(const DegreeSequence& seq) {
        if (!seq.matchable()) throw OddStubSumError("total stub count is odd");
        const std::uint64_t n = seq.n();
        first_stub_.resize(n + 1);
        first_stub_[0] = 0;
        for (std::uint64_t v = 0; v < n; ++v)
            first_stub_[v + 1] = first_stub_[v] + seq.degrees[v];
        const StubId total = static_cast<StubId>(first_stub_[n]);
        owner_.resize(total);
        for (std::uint64_t v = 0; v < n; ++v)
            for (StubId s = first_stub_[v]; s < first_stub_[v + 1]; ++s)
                owner_[s] = static_cast<Vertex>(v);
        partner_.assign(total, kNoStub);
        unmatched_.resize(total);
        position_.resize(total);
        for (StubId s = 0; s < total; ++s) {
            unmatched_[s] = s;
            position_[s] = s;
        }
    }

    // Back to the all-unmatched state (for Monte Carlo loops).
    void reset() {
        const StubId total = total_stubs();
        partner_.assign(total, kNoStub);
        unmatched_.resize(total);
        position_.resize(total);
        for (StubId s = 0; s < total; ++s) {
            unmatched_[s] = s;
            position_[s] = s;
        }
    }

    StubId total_stubs() const { return static_cast<StubId>(owner_.size()); }
    Vertex num_vertices() const { return static_cast<Vertex>(first_stub_.size() - 1); }
    Vertex owner(StubId s) const { return owner_[s]; }
    StubId stub_at(Vertex v, Degree slot) const {
        return static_cast<StubId>(first_stub_[v] + slot);
    }
    Degree degree(Vertex v) const {
        return static_cast<Degree>(first_stub_[v + 1] - first_stub_[v]);
    }

    bool is_matched(StubId s) const { return partner_[s] != kNoStub; }
    StubId partner(StubId s) const { return partner_[s]; }
    std::size_t unmatched_count() const { return unmatched_.size(); }
    const std::vector<StubId>& unmatched() const { return unmatched_; }

    // Match stub e to a partner chosen uniformly from U \ {e}.
    StubId match_uniform(StubId e, Rng& rng) {
        if (is_matched(e)) throw AlreadyMatchedError("stub already matched");
        if (unmatched_.size() < 2) throw ExhaustedError("fewer than two unmatched stubs");
        remove_unmatched(e);
        const StubId other = unmatched_[uniform_below(rng, unmatched_.size())];
        remove_unmatched(other);
        partner_[e] = other;
        partner_[other] = e;
        return other;
    }

    // Deterministic pairing, used by enumeration oracles and forced cases.
    void match_pair(StubId a, StubId b) {
        if (a == b) throw DomainError("cannot match a stub to itself");
        if (is_matched(a) || is_matched(b)) throw AlreadyMatchedError("stub already matched");
        remove_unmatched(a);
        remove_unmatched(b);
        partner_[a] = b;
        partner_[b] = a;
    }

    // Matches every remaining stub (lowest-index first, partner uniform) and
    // returns the resulting multigraph.
    Multigraph complete_matching(Rng& rng) {
        const StubId total = total_stubs();
        for (StubId e = 0; e < total; ++e)
            if (!is_matched(e)) match_uniform(e, rng);
        return to_multigraph();
    }

    // Requires a complete matching.
    Multigraph to_multigraph() const {
        if (!unmatched_.empty()) throw Error("matching is incomplete");
        const StubId total = total_stubs();
        std::vector<Vertex> targets(total);
        std::vector<Edge> edges;
        edges.reserve(total / 2);
        for (StubId s = 0; s < total; ++s) {
            targets[s] = owner_[partner_[s]];
            if (s < partner_[s]) {
                const Vertex u = owner_[s];
                const Vertex v = owner_[partner_[s]];
                edges.emplace_back(std::min(u, v), std::max(u, v));
            }
        }
        return Multigraph(num_vertices(), first_stub_, std::move(targets), std::move(edges));
    }

private:
    void remove_unmatched(StubId s) {
        const StubId pos = position_[s];
        const StubId last = unmatched_.back();
        unmatched_[pos] = last;
        position_[last] = pos;
        unmatched_.pop_back();
        position_[s] = kNoStub;
    }

    std::vector<Vertex> owner_;
    std::vector<std::uint64_t> first_stub_; // size n+1
    std::vector<StubId> partner_;
    std::vector<StubId> unmatched_;
    std::vector<StubId> position_;
};

inline StubSpace new_stub_space(const DegreeSequence& seq) { return StubSpace(seq); }

inline Multigraph sample_multigraph(const DegreeSequence& seq, Rng& rng) {
    StubSpace space(seq);
    return space.complete_matching(rng);
}

// Janson's simplicity estimate for this sequence:
// exp(-(sum d_i^2)^2 / (16 |E|^2) + 1/4), the o(1) term dropped.
inline double janson_simple_prob(const DegreeSequence& seq) {
    if (seq.total_stubs == 0) throw DomainError("empty sequence");
    double sum_sq = 0.0;
    for (Degree d : seq.degrees)
        sum_sq += static_cast<double>(d) * static_cast<double>(d);
    const double m = static_cast<double>(seq.total_stubs) / 2.0;
    return std::exp(-(sum_sq * sum_sq) / (16.0 * m * m) + 0.25);
}

// Rejection sampling of a simple graph with the given sequence.
inline Multigraph sample_simple(const DegreeSequence& seq, Rng& rng, std::uint64_t max_tries) {
    if (max_tries < 1) throw DomainError("max_tries must be >= 1");
    StubSpace space(seq);
    for (std::uint64_t attempt = 0; attempt < max_tries; ++attempt) {
        if (attempt > 0) space.reset();
        Multigraph g = space.complete_matching(rng);
        if (g.is_simple()) return g;
    }
    throw TriesExhaustedError("no simple graph within max_tries samples");
}

} // namespace rumor
