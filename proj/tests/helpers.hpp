#pragma once

// Shared oracles and utilities for the test suites. Everything here is
// independent of the library's sampling paths: the pairing enumerator walks
// all (2m-1)!! perfect matchings directly.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rumor/degree_sequence.hpp"
#include "rumor/multigraph.hpp"

namespace test_helpers {

using rumor::Degree;
using rumor::Vertex;

// Canonical text form of a multigraph's edge multiset.
inline std::string signature(const rumor::Multigraph& g) {
    std::ostringstream os;
    for (const auto& [u, v] : g.canonical_edges()) os << u << "-" << v << ";";
    return os.str();
}

inline std::string signature_of_edges(std::vector<std::pair<Vertex, Vertex>> edges) {
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    std::ostringstream os;
    for (const auto& [u, v] : edges) os << u << "-" << v << ";";
    return os.str();
}

namespace detail {

inline void enumerate_rec(std::vector<Vertex>& stub_owner, std::vector<bool>& used,
                          std::vector<std::pair<Vertex, Vertex>>& edges,
                          std::map<std::string, std::uint64_t>& out) {
    std::size_t first = used.size();
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i]) {
            first = i;
            break;
        }
    }
    if (first == used.size()) {
        ++out[signature_of_edges(edges)];
        return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < used.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        edges.emplace_back(stub_owner[first], stub_owner[j]);
        enumerate_rec(stub_owner, used, edges, out);
        edges.pop_back();
        used[j] = false;
    }
    used[first] = false;
}

} // namespace detail

// All perfect matchings of the stub set, keyed by resulting multigraph.
// The total count over all keys is (2m-1)!!.
inline std::map<std::string, std::uint64_t> enumerate_pairings(
    const std::vector<Degree>& degrees) {
    std::vector<Vertex> stub_owner;
    for (std::size_t v = 0; v < degrees.size(); ++v)
        for (Degree k = 0; k < degrees[v]; ++k)
            stub_owner.push_back(static_cast<Vertex>(v));
    std::vector<bool> used(stub_owner.size(), false);
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::map<std::string, std::uint64_t> out;
    if (stub_owner.size() % 2 != 0) return out;
    detail::enumerate_rec(stub_owner, used, edges, out);
    return out;
}

inline std::uint64_t total_count(const std::map<std::string, std::uint64_t>& dist) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : dist) total += c;
    return total;
}

// Total variation distance between an empirical histogram and the exact
// enumeration distribution.
inline double total_variation(const std::map<std::string, std::uint64_t>& empirical,
                              std::uint64_t empirical_total,
                              const std::map<std::string, std::uint64_t>& exact) {
    const double exact_total = static_cast<double>(total_count(exact));
    double tv = 0.0;
    std::map<std::string, double> diff;
    for (const auto& [k, c] : exact)
        diff[k] = static_cast<double>(c) / exact_total;
    for (const auto& [k, c] : empirical)
        diff[k] -= static_cast<double>(c) / static_cast<double>(empirical_total);
    for (const auto& [k, d] : diff) tv += std::abs(d);
    return tv / 2.0;
}

inline double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// All partitions of `total` into parts >= 1 (degree multisets), ascending.
inline std::vector<std::vector<Degree>> partitions_of(std::uint32_t total) {
    std::vector<std::vector<Degree>> out;
    std::vector<Degree> current;
    auto rec = [&](auto&& self, std::uint32_t remaining, Degree min_part) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (Degree p = min_part; p <= remaining; ++p) {
            current.push_back(p);
            self(self, remaining - p, p);
            current.pop_back();
        }
    };
    rec(rec, total, 1);
    return out;
}

} // namespace test_helpers
