#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

using Degree = std::uint32_t;
using Vertex = std::uint32_t;

// A finite degree sequence with its derived histogram and diagnostics.
struct DegreeSequence {
    std::vector<Degree> degrees;
    std::uint64_t total_stubs = 0;
    Degree max_degree = 0;
    std::map<Degree, std::uint64_t> histogram; // degree -> vertex count

    std::uint64_t n() const { return degrees.size(); }

    // Empirical fraction of vertices of degree k.
    double fraction(Degree k) const {
        auto it = histogram.find(k);
        if (it == histogram.end()) return 0.0;
        return static_cast<double>(it->second) / static_cast<double>(n());
    }

    double mean_degree() const {
        return static_cast<double>(total_stubs) / static_cast<double>(n());
    }

    bool matchable() const { return total_stubs % 2 == 0; }
};

inline DegreeSequence make_sequence(std::vector<Degree> degrees) {
    if (degrees.empty()) throw DomainError("degree sequence must be nonempty");
    DegreeSequence seq;
    seq.degrees = std::move(degrees);
    for (Degree d : seq.degrees) {
        if (d < 1) throw DomainError("degrees must be >= 1");
        seq.total_stubs += d;
        seq.max_degree = std::max(seq.max_degree, d);
        ++seq.histogram[d];
    }
    return seq;
}

inline DegreeSequence build_regular(std::uint64_t n, Degree d) {
    if (n < 1 || d < 1) throw DomainError("regular sequence needs n >= 1, d >= 1");
    if ((n * static_cast<std::uint64_t>(d)) % 2 != 0)
        throw OddStubSumError("n*d is odd; no matching exists");
    return make_sequence(std::vector<Degree>(n, d));
}

// Default cutoff for power-law sequences: n^{1/(beta-1)} capped at n^{0.49}
// so the maximum degree stays o(sqrt(n)).
inline Degree default_power_law_cutoff(std::uint64_t n, double beta, Degree d_min) {
    const double natural = std::pow(static_cast<double>(n), 1.0 / (beta - 1.0));
    const double cap = std::pow(static_cast<double>(n), 0.49);
    const double c = std::floor(std::min(natural, cap));
    return std::max<Degree>(d_min, static_cast<Degree>(c));
}

// Degree counts proportional to k^{-beta} on [d_min, cutoff], normalized to
// exactly n vertices by largest-remainder rounding. If the stub total comes
// out odd, one vertex of the most common degree is bumped up by one.
inline DegreeSequence build_power_law(std::uint64_t n, double beta, Degree d_min,
                                      Degree cutoff = 0) {
    if (n < 1) throw DomainError("power law needs n >= 1");
    if (!(beta > 2.0)) throw DomainError("power law needs beta > 2");
    if (d_min < 1) throw DomainError("power law needs d_min >= 1");
    if (cutoff == 0) cutoff = default_power_law_cutoff(n, beta, d_min);
    if (cutoff < d_min) throw DomainError("cutoff must be >= d_min");

    const std::size_t classes = cutoff - d_min + 1;
    std::vector<double> ideal(classes);
    double wsum = 0.0;
    for (std::size_t i = 0; i < classes; ++i) {
        ideal[i] = std::pow(static_cast<double>(d_min + i), -beta);
        wsum += ideal[i];
    }
    if (!(wsum > 0.0)) throw InfeasibleNormalizationError("degenerate weights");

    std::vector<std::uint64_t> counts(classes);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < classes; ++i) {
        ideal[i] = ideal[i] / wsum * static_cast<double>(n);
        counts[i] = static_cast<std::uint64_t>(std::floor(ideal[i]));
        assigned += counts[i];
    }
    if (assigned > n) throw InfeasibleNormalizationError("floor counts exceed n");
    std::uint64_t remainder = n - assigned;
    if (remainder > classes)
        throw InfeasibleNormalizationError("remainder larger than degree range");

    // Distribute the remainder by largest fractional part, smaller degree first
    // on ties. This keeps counts nonincreasing in k.
    std::vector<std::size_t> order(classes);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = ideal[a] - std::floor(ideal[a]);
        const double fb = ideal[b] - std::floor(ideal[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });
    for (std::uint64_t i = 0; i < remainder; ++i) ++counts[order[i]];

    std::uint64_t stub_total = 0;
    for (std::size_t i = 0; i < classes; ++i)
        stub_total += counts[i] * (d_min + i);

    std::map<Degree, std::uint64_t> extra; // degrees pushed past the cutoff
    if (stub_total % 2 != 0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < classes; ++i)
            if (counts[i] > counts[best]) best = i;
        if (counts[best] == 0) throw InfeasibleNormalizationError("no vertex to adjust parity");
        --counts[best];
        const Degree bumped = static_cast<Degree>(d_min + best + 1);
        if (best + 1 < classes)
            ++counts[best + 1];
        else
            ++extra[bumped];
    }

    std::vector<Degree> degrees;
    degrees.reserve(n);
    for (std::size_t i = 0; i < classes; ++i)
        degrees.insert(degrees.end(), counts[i], static_cast<Degree>(d_min + i));
    for (auto [k, c] : extra) degrees.insert(degrees.end(), c, k);
    return make_sequence(std::move(degrees));
}

// Effective minimum degree: d-1 when every vertex has the same degree d,
// otherwise the minimum degree. Guarantees linearly many vertices of degree
// strictly above the returned value.
inline Degree delta(const DegreeSequence& seq) {
    if (seq.histogram.size() == 1) return seq.histogram.begin()->first - 1;
    return seq.histogram.begin()->first;
}

// Growth-rate constant 1/ln(2(1-1/delta)); defined only for delta >= 3.
inline double growth_rate_constant(Degree delta_value) {
    if (delta_value < 3)
        throw DomainError("growth constant needs delta >= 3 (log argument must exceed 1)");
    return 1.0 / std::log(2.0 * (1.0 - 1.0 / static_cast<double>(delta_value)));
}

// Full-broadcast constant for d-regular graphs:
// 1/ln(2(1-1/d)) - 1/(d ln(1-1/d)).
inline double regular_broadcast_constant(Degree d) {
    if (d < 3)
        throw DomainError("regular broadcast constant needs d >= 3");
    const double dd = static_cast<double>(d);
    return 1.0 / std::log(2.0 * (1.0 - 1.0 / dd)) - 1.0 / (dd * std::log(1.0 - 1.0 / dd));
}

// ---------------------------------------------------------------------------
// Sequence families

struct SequenceFamily {
    enum class Kind { Regular, PowerLaw, Explicit };

    Kind kind = Kind::Regular;
    std::uint64_t n = 0;
    Degree d = 0;                 // regular
    double beta = 0.0;            // power law
    Degree d_min = 0;             // power law
    Degree cutoff = 0;            // power law; 0 means the default rule
    std::vector<Degree> degrees;  // explicit

    static SequenceFamily regular(std::uint64_t n, Degree d) {
        if (n < 1 || d < 1) throw DomainError("regular family needs n >= 1, d >= 1");
        SequenceFamily f;
        f.kind = Kind::Regular;
        f.n = n;
        f.d = d;
        return f;
    }

    static SequenceFamily power_law(std::uint64_t n, double beta, Degree d_min,
                                    Degree cutoff = 0) {
        if (!(beta > 2.0)) throw DomainError("power law family needs beta > 2");
        if (d_min < 1) throw DomainError("power law family needs d_min >= 1");
        if (cutoff != 0 && cutoff < d_min) throw DomainError("cutoff must be >= d_min");
        SequenceFamily f;
        f.kind = Kind::PowerLaw;
        f.n = n;
        f.beta = beta;
        f.d_min = d_min;
        f.cutoff = cutoff;
        return f;
    }

    static SequenceFamily explicit_list(std::vector<Degree> degrees) {
        SequenceFamily f;
        f.kind = Kind::Explicit;
        f.n = degrees.size();
        f.degrees = std::move(degrees);
        return f;
    }

    SequenceFamily with_n(std::uint64_t new_n) const {
        if (kind == Kind::Explicit && new_n != n)
            throw ConfigError("explicit families have a fixed n");
        SequenceFamily f = *this;
        f.n = new_n;
        return f;
    }

    // True when the maximum degree does not grow with n.
    bool bounded_max_degree() const {
        switch (kind) {
        case Kind::Regular: return true;
        case Kind::Explicit: return true;
        case Kind::PowerLaw: return cutoff != 0;
        }
        return true;
    }

    DegreeSequence build() const {
        switch (kind) {
        case Kind::Regular: return build_regular(n, d);
        case Kind::PowerLaw: return build_power_law(n, beta, d_min, cutoff);
        case Kind::Explicit: return make_sequence(degrees);
        }
        throw ConfigError("unknown family kind");
    }
};

// ---------------------------------------------------------------------------
// Smoothness diagnostics

struct SmoothnessReport {
    bool is_sparse = false;
    bool is_two_smooth = false;
    double second_moment = 0.0; // +inf when divergent
    double mean_degree = 0.0;
};

namespace detail {

// Sum_{k=k0}^infinity k^{-s} via direct summation plus an Euler-Maclaurin
// tail. Requires s > 1.
inline double truncated_zeta(double s, Degree k0) {
    const std::uint64_t head = k0 + 20000;
    double sum = 0.0;
    for (std::uint64_t k = k0; k < head; ++k)
        sum += std::pow(static_cast<double>(k), -s);
    const double a = static_cast<double>(head);
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + std::pow(a, -s) / 2.0 +
           s * std::pow(a, -s - 1.0) / 12.0;
    return sum;
}

} // namespace detail

// Sparseness and 2-smoothness of the asymptotic degree distribution. For
// power laws the report uses the untruncated distribution on [d_min, inf);
// the second moment is finite exactly when beta > 3.
inline SmoothnessReport smoothness_report(const SequenceFamily& family) {
    SmoothnessReport r;
    switch (family.kind) {
    case SequenceFamily::Kind::Regular: {
        const double d = static_cast<double>(family.d);
        r.is_sparse = true;
        r.is_two_smooth = true;
        r.second_moment = d * d;
        r.mean_degree = d;
        return r;
    }
    case SequenceFamily::Kind::Explicit: {
        const DegreeSequence seq = family.build();
        double m1 = 0.0, m2 = 0.0;
        for (auto [k, c] : seq.histogram) {
            const double frac = static_cast<double>(c) / static_cast<double>(seq.n());
            m1 += frac * k;
            m2 += frac * static_cast<double>(k) * static_cast<double>(k);
        }
        r.is_sparse = true;
        r.is_two_smooth = true;
        r.second_moment = m2;
        r.mean_degree = m1;
        return r;
    }
    case SequenceFamily::Kind::PowerLaw: {
        const double beta = family.beta;
        const Degree k0 = family.d_min;
        const double h0 = detail::truncated_zeta(beta, k0);
        r.is_sparse = true; // beta > 2 is a construction precondition
        r.mean_degree = detail::truncated_zeta(beta - 1.0, k0) / h0;
        r.is_two_smooth = beta > 3.0;
        r.second_moment = r.is_two_smooth
                              ? detail::truncated_zeta(beta - 2.0, k0) / h0
                              : std::numeric_limits<double>::infinity();
        return r;
    }
    }
    throw ConfigError("unknown family kind");
}

} // namespace rumor
