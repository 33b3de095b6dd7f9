#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rumor/degree_sequence.hpp"
#include "rumor/rng.hpp"

namespace rumor {

using Edge = std::pair<Vertex, Vertex>; // stored with first <= second

// A multigraph with loops, stored twice over: as an edge multiset and as a
// per-stub target table (one entry per stub, so a loop contributes two
// entries at its endpoint and a double edge is listed twice).
class Multigraph {
public:
    Multigraph() = default;

    Multigraph(Vertex n, std::vector<std::uint64_t> stub_offsets,
               std::vector<Vertex> stub_targets, std::vector<Edge> edges)
        : n_(n),
          stub_offsets_(std::move(stub_offsets)),
          stub_targets_(std::move(stub_targets)),
          edges_(std::move(edges)) {}

    static Multigraph from_edges(Vertex n, const std::vector<Edge>& edges) {
        std::vector<std::uint64_t> offsets(n + 1, 0);
        for (const auto& [u, v] : edges) {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for (Vertex v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
        std::vector<Vertex> targets(offsets[n]);
        std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
        std::vector<Edge> canon;
        canon.reserve(edges.size());
        for (const auto& [u, v] : edges) {
            targets[cursor[u]++] = v;
            targets[cursor[v]++] = u;
            canon.emplace_back(std::min(u, v), std::max(u, v));
        }
        return Multigraph(n, std::move(offsets), std::move(targets), std::move(canon));
    }

    Vertex num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return edges_.size(); }

    Degree degree(Vertex v) const {
        return static_cast<Degree>(stub_offsets_[v + 1] - stub_offsets_[v]);
    }

    std::span<const Vertex> stub_neighbors(Vertex v) const {
        return {stub_targets_.data() + stub_offsets_[v],
                stub_targets_.data() + stub_offsets_[v + 1]};
    }

    // The vertex reached by pushing along a uniformly chosen incident stub.
    Vertex contact(Vertex v, Rng& rng) const {
        const std::uint64_t lo = stub_offsets_[v];
        const std::uint64_t hi = stub_offsets_[v + 1];
        return stub_targets_[lo + uniform_below(rng, hi - lo)];
    }

    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<Edge> canonical_edges() const {
        std::vector<Edge> out = edges_;
        std::sort(out.begin(), out.end());
        return out;
    }

    bool is_simple() const {
        auto sorted = canonical_edges();
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i].first == sorted[i].second) return false;
            if (i > 0 && sorted[i] == sorted[i - 1]) return false;
        }
        return true;
    }

    // Edge-list text: "# n=<n> m=<edges>" then one "u v" line per edge,
    // loops as "v v", multi-edges repeated.
    void write_edge_list(std::ostream& os) const {
        os << "# n=" << n_ << " m=" << edges_.size() << "\n";
        for (const auto& [u, v] : edges_) os << u << " " << v << "\n";
    }

    std::string edge_list_text() const {
        std::ostringstream oss;
        write_edge_list(oss);
        return oss.str();
    }

private:
    Vertex n_ = 0;
    std::vector<std::uint64_t> stub_offsets_; // size n+1
    std::vector<Vertex> stub_targets_;        // size = total stubs
    std::vector<Edge> edges_;
};

inline bool is_simple(const Multigraph& g) { return g.is_simple(); }

} // namespace rumor
