#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rumor/multigraph.hpp"

namespace rumor {

// Breadth-first search for a path v, v_1, ..., v_k with v_k informed, every
// v_i (the endpoint included) of degree <= max_deg, and k <= max_len edges.
// The start vertex itself is exempt from the degree bound. Scratch buffers
// are reused across calls via epoch stamping.
class ShortPathFinder {
public:
    explicit ShortPathFinder(const Multigraph& g)
        : graph_(&g),
          stamp_(g.num_vertices(), 0),
          parent_(g.num_vertices(), 0) {}

    std::optional<std::vector<Vertex>> find(const std::vector<std::uint8_t>& informed,
                                            Vertex start, std::uint32_t max_len,
                                            Degree max_deg) {
        if (max_len == 0) return std::nullopt;
        ++epoch_;
        stamp_[start] = epoch_;
        frontier_.assign(1, start);
        for (std::uint32_t depth = 1; depth <= max_len && !frontier_.empty(); ++depth) {
            next_.clear();
            for (const Vertex u : frontier_) {
                for (const Vertex w : graph_->stub_neighbors(u)) {
                    if (stamp_[w] == epoch_) continue;
                    if (graph_->degree(w) > max_deg) continue;
                    stamp_[w] = epoch_;
                    parent_[w] = u;
                    if (informed[w]) return reconstruct(start, w);
                    next_.push_back(w);
                }
            }
            frontier_.swap(next_);
        }
        return std::nullopt;
    }

private:
    std::optional<std::vector<Vertex>> reconstruct(Vertex start, Vertex end) const {
        std::vector<Vertex> path;
        for (Vertex v = end;; v = parent_[v]) {
            path.push_back(v);
            if (v == start) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    const Multigraph* graph_;
    std::vector<std::uint32_t> stamp_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> frontier_;
    std::vector<Vertex> next_;
    std::uint32_t epoch_ = 0;
};

inline std::optional<std::vector<Vertex>> find_short_path(
    const Multigraph& g, const std::vector<std::uint8_t>& informed, Vertex start,
    std::uint32_t max_len, Degree max_deg) {
    ShortPathFinder finder(g);
    return finder.find(informed, start, max_len, max_deg);
}

} // namespace rumor
