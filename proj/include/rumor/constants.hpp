#pragma once

#include <cmath>
#include <optional>

#include "rumor/degree_sequence.hpp"
#include "rumor/errors.hpp"

namespace rumor {

// Constants controlling the delayed push analysis, all computed from the
// empirical histogram of a concrete sequence.
struct ProtocolConstants {
    Degree delta = 0;
    double lambda_delta = 0.0; // empirical fraction of degree-delta vertices
    double gamma = 0.0;
    Degree M = 0;
    double alpha = 0.0;
    double c_delta = 0.0; // growth-rate constant for this delta
    double mean_degree = 0.0;
};

namespace detail {

// Upper constraint on gamma: 2g/(1-g) < (1-lambda_delta)/(64 delta^2),
// g < 1/delta and g <= 1/6.
inline double gamma_supremum(double lambda_delta, Degree delta_value) {
    const double a = (1.0 - lambda_delta) / (64.0 * delta_value * delta_value);
    return std::min({a / (2.0 + a), 1.0 / delta_value, 1.0 / 6.0});
}

inline bool gamma_feasible(double g, double lambda_delta, Degree delta_value) {
    if (!(g > 0.0) || g > 1.0 / 6.0) return false;
    if (!(g < 1.0 / static_cast<double>(delta_value))) return false;
    const double a = (1.0 - lambda_delta) / (64.0 * delta_value * delta_value);
    return 2.0 * g / (1.0 - g) < a;
}

} // namespace detail

// Computes (gamma, M, alpha) for a sequence. With no fixed gamma, gamma is
// 90% of the largest feasible value. Requires delta(seq) >= 3; note that for
// an exactly d-regular sequence delta = d-1 and lambda_delta is therefore 0.
inline ProtocolConstants protocol_constants(const DegreeSequence& seq,
                                            std::optional<double> fixed_gamma = std::nullopt) {
    ProtocolConstants pc;
    pc.delta = delta(seq);
    if (pc.delta < 3) throw DomainError("protocol constants need delta >= 3");
    pc.lambda_delta = seq.fraction(pc.delta);
    pc.c_delta = growth_rate_constant(pc.delta);
    pc.mean_degree = seq.mean_degree();

    if (pc.lambda_delta >= 1.0)
        throw InfeasibleConstantsError("lambda_delta = 1 leaves no feasible gamma");

    if (fixed_gamma) {
        if (!detail::gamma_feasible(*fixed_gamma, pc.lambda_delta, pc.delta))
            throw InfeasibleConstantsError("fixed gamma violates the constraints");
        pc.gamma = *fixed_gamma;
    } else {
        const double sup = detail::gamma_supremum(pc.lambda_delta, pc.delta);
        double g = 0.9 * sup;
        g = std::min({g, 1.0 / 6.0, 1.0 / pc.delta - 1e-12});
        if (!detail::gamma_feasible(g, pc.lambda_delta, pc.delta))
            throw InfeasibleConstantsError("no feasible gamma > 0");
        pc.gamma = g;
    }

    // stub mass at degrees >= delta (all of it, by the definition of delta)
    double stub_mass = 0.0;
    for (auto [k, c] : seq.histogram) {
        if (k < pc.delta) continue;
        stub_mass += seq.fraction(k) * static_cast<double>(k);
    }

    // M: smallest integer covering all but a gamma/4 fraction of that mass.
    const double want = (1.0 - pc.gamma / 4.0) * stub_mass;
    double cum = 0.0;
    Degree m = 0;
    for (auto [k, c] : seq.histogram) {
        if (k < pc.delta) continue;
        cum += seq.fraction(k) * static_cast<double>(k);
        if (cum >= want) {
            m = k;
            break;
        }
    }
    if (m == 0) m = seq.max_degree;
    pc.M = m;

    const double dd = static_cast<double>(pc.delta);
    pc.alpha = std::min({pc.gamma * stub_mass / (2.0 * pc.M),
                         (1.0 - pc.lambda_delta) / (1.0 + pc.lambda_delta),
                         (dd - 1.0) / (4.0 * dd * (1.0 - 1.0 / dd))});
    return pc;
}

} // namespace rumor
