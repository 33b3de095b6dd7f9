#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rumor/broadcast.hpp"
#include "rumor/degree_sequence.hpp"
#include "rumor/drp.hpp"
#include "rumor/errors.hpp"
#include "rumor/rng.hpp"
#include "rumor/stub_space.hpp"

namespace rumor {

// ---------------------------------------------------------------------------
// Least-squares slope of mean T_eps against ln n

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_halfwidth = 0.0; // 95% normal-approximation half width
    std::size_t points = 0;
};

inline FitResult fit_slope(const std::vector<std::pair<double, double>>& n_vs_mean) {
    std::vector<double> xs, ys;
    for (const auto& [n, mean] : n_vs_mean) {
        xs.push_back(std::log(n));
        ys.push_back(mean);
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   distinct.end());
    if (distinct.size() < 3)
        throw DegenerateFitError("slope fit needs at least 3 distinct n values");

    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    FitResult fit;
    fit.points = xs.size();
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    if (xs.size() > 2) {
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += r * r;
        }
        const double sigma2 = ss_res / (m - 2.0);
        fit.ci_halfwidth = 1.96 * std::sqrt(sigma2 * m / denom);
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Simplicity Monte Carlo

struct SimplicityEstimate {
    double empirical = 0.0;
    double formula = 0.0;
    std::uint64_t samples = 0;
};

inline SimplicityEstimate simplicity_montecarlo(const DegreeSequence& seq,
                                                std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("samples must be >= 1");
    Rng rng(derive_seed(seed, 0x51u));
    StubSpace space(seq);
    std::uint64_t simple = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i > 0) space.reset();
        if (space.complete_matching(rng).is_simple()) ++simple;
    }
    SimplicityEstimate est;
    est.samples = samples;
    est.empirical = static_cast<double>(simple) / static_cast<double>(samples);
    est.formula = janson_simple_prob(seq);
    return est;
}

// ---------------------------------------------------------------------------
// Ensemble runner

struct ExperimentConfig {
    SequenceFamily family = SequenceFamily::regular(2, 1); // n is overridden per point
    Protocol protocol = Protocol::Push;
    std::vector<double> eps_list{0.01};
    std::vector<std::uint64_t> n_list;
    std::uint32_t trials = 1;
    std::uint64_t master_seed = 1;
    std::uint32_t round_cap = 0; // 0 = automatic per n
    std::uint32_t threads = 1;
    std::optional<Vertex> init;
    DrpOptions drp;

    void validate() const {
        if (n_list.empty()) throw ConfigError("n list must be nonempty");
        if (trials < 1) throw ConfigError("trials must be >= 1");
        if (eps_list.empty()) throw ConfigError("eps list must be nonempty");
        for (double e : eps_list)
            if (e < 0.0 || e > 1.0) throw ConfigError("eps values must be in [0, 1]");
    }

    std::uint32_t effective_round_cap(std::uint64_t n) const {
        if (round_cap != 0) return round_cap;
        const double ln_n = std::log(std::max<double>(2.0, static_cast<double>(n)));
        return static_cast<std::uint32_t>(200.0 + 20.0 * std::ceil(ln_n));
    }
};

struct TrialRecord {
    std::uint64_t n = 0;
    std::uint32_t n_index = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    std::uint32_t round_cap = 0;
    std::int64_t t_full = kNotReached;
    std::vector<std::int64_t> t_eps; // parallel to cfg.eps_list
    bool cap_hit = false;
    bool failed = false; // run aborted (recorded, not fatal)
};

struct PointSummary {
    double n = 0.0;
    double mean = 0.0;
    double q10 = 0.0, q50 = 0.0, q90 = 0.0;
    std::uint64_t used = 0;
    std::uint64_t excluded = 0;
};

struct EpsSummary {
    double eps = 0.0;
    std::vector<PointSummary> points;                   // per n, capped trials excluded
    std::vector<std::pair<double, double>> mean_points; // (n, mean T_eps)
    std::uint64_t excluded = 0; // capped/failed trials left out of the means
    FitResult fit;
    bool fit_ok = false;
    std::string fit_error;
};

struct SweepResult {
    std::vector<double> eps_list;
    std::vector<TrialRecord> records; // ordered by (n_index, trial)
    std::vector<EpsSummary> summaries;
    Protocol protocol = Protocol::Push;
    double c_delta = 0.0;   // growth constant for the family's delta, when defined
    double c_regular = 0.0; // full-broadcast constant for regular families

    // Columns: n,trial,seed,protocol,eps,T_eps,T_full,rounds_cap_hit.
    // A trial that never reached the target is written with the round cap in
    // place of a time and flagged in the last column.
    std::string to_csv() const {
        std::ostringstream os;
        os << "n,trial,seed,protocol,eps,T_eps,T_full,rounds_cap_hit\n";
        for (const auto& r : records) {
            for (std::size_t e = 0; e < eps_list.size(); ++e) {
                const bool flagged = r.failed || r.t_eps[e] == kNotReached;
                const std::int64_t t_eps_out =
                    r.t_eps[e] == kNotReached ? std::int64_t(r.round_cap) : r.t_eps[e];
                const std::int64_t t_full_out =
                    r.t_full == kNotReached ? std::int64_t(r.round_cap) : r.t_full;
                os << r.n << "," << r.trial << "," << r.seed << "," << to_string(protocol)
                   << "," << eps_list[e] << "," << t_eps_out << "," << t_full_out << ","
                   << (flagged ? 1 : 0) << "\n";
            }
        }
        return os.str();
    }
};

namespace detail {

inline TrialRecord run_one_trial(const ExperimentConfig& cfg, std::uint32_t n_index,
                                 std::uint32_t trial) {
    TrialRecord rec;
    rec.n = cfg.n_list[n_index];
    rec.n_index = n_index;
    rec.trial = trial;
    rec.seed = derive_seed(cfg.master_seed, n_index, trial);
    rec.round_cap = cfg.effective_round_cap(rec.n);
    rec.t_eps.assign(cfg.eps_list.size(), kNotReached);
    try {
        const DegreeSequence seq = cfg.family.with_n(rec.n).build();
        if (cfg.protocol == Protocol::Drp) {
            double min_eps = 1.0;
            for (double e : cfg.eps_list) min_eps = std::min(min_eps, e);
            DrpOptions opt = cfg.drp;
            if (cfg.init) opt.init = cfg.init;
            const DrpResult res = run_drp(seq, min_eps, opt, rec.seed);
            for (std::size_t e = 0; e < cfg.eps_list.size(); ++e)
                rec.t_eps[e] = res.time_to_fraction(cfg.eps_list[e]);
            rec.t_full = res.time_to_fraction(0.0);
        } else {
            Rng rng(rec.seed);
            const Multigraph g = sample_multigraph(seq, rng);
            const Vertex init = cfg.init.value_or(
                static_cast<Vertex>(uniform_below(rng, g.num_vertices())));
            const std::uint32_t cap = cfg.effective_round_cap(rec.n);
            const RunResult res = run_protocol(cfg.protocol, g, init, cap, rng);
            for (std::size_t e = 0; e < cfg.eps_list.size(); ++e)
                rec.t_eps[e] = time_to_fraction(res, cfg.eps_list[e]);
            rec.t_full = res.rounds_to_complete;
            rec.cap_hit = !res.complete();
        }
    } catch (const Error&) {
        rec.failed = true;
    }
    return rec;
}

} // namespace detail

// Runs trials x |n_list| independent simulations. Trial (i, t) is seeded by
// derive_seed(master_seed, i, t), so results are identical across re-runs
// and across any execution order; records land in preassigned slots.
inline SweepResult run_ensemble(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.eps_list = cfg.eps_list;
    result.protocol = cfg.protocol;
    const std::size_t total = cfg.n_list.size() * cfg.trials;
    result.records.resize(total);

    const std::uint32_t workers =
        std::max<std::uint32_t>(1, std::min<std::uint32_t>(cfg.threads, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t job = 0; job < total; ++job) {
            const std::uint32_t n_index = static_cast<std::uint32_t>(job / cfg.trials);
            const std::uint32_t trial = static_cast<std::uint32_t>(job % cfg.trials);
            result.records[job] = detail::run_one_trial(cfg, n_index, trial);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t job = next.fetch_add(1);
                if (job >= total) return;
                const std::uint32_t n_index = static_cast<std::uint32_t>(job / cfg.trials);
                const std::uint32_t trial = static_cast<std::uint32_t>(job % cfg.trials);
                result.records[job] = detail::run_one_trial(cfg, n_index, trial);
            }
        };
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t e = 0; e < cfg.eps_list.size(); ++e) {
        EpsSummary summary;
        summary.eps = cfg.eps_list[e];
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
            std::vector<double> values;
            std::uint64_t excluded_here = 0;
            for (std::uint32_t t = 0; t < cfg.trials; ++t) {
                const TrialRecord& rec = result.records[i * cfg.trials + t];
                if (rec.failed || rec.t_eps[e] == kNotReached) {
                    ++excluded_here;
                    continue;
                }
                values.push_back(static_cast<double>(rec.t_eps[e]));
            }
            summary.excluded += excluded_here;
            if (values.empty()) continue;
            std::sort(values.begin(), values.end());
            auto quantile = [&](double q) {
                const double pos = q * static_cast<double>(values.size() - 1);
                const std::size_t lo = static_cast<std::size_t>(pos);
                const std::size_t hi = std::min(lo + 1, values.size() - 1);
                return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
            };
            double sum = 0.0;
            for (double v : values) sum += v;
            PointSummary point;
            point.n = static_cast<double>(cfg.n_list[i]);
            point.mean = sum / static_cast<double>(values.size());
            point.q10 = quantile(0.10);
            point.q50 = quantile(0.50);
            point.q90 = quantile(0.90);
            point.used = values.size();
            point.excluded = excluded_here;
            summary.mean_points.emplace_back(point.n, point.mean);
            summary.points.push_back(point);
        }
        try {
            summary.fit = fit_slope(summary.mean_points);
            summary.fit_ok = true;
        } catch (const DegenerateFitError& err) {
            summary.fit_error = err.what();
        }
        result.summaries.push_back(std::move(summary));
    }

    // comparison constants for the family, when defined
    try {
        const DegreeSequence seq = cfg.family.with_n(cfg.n_list.front()).build();
        const Degree d = delta(seq);
        if (d >= 3) result.c_delta = growth_rate_constant(d);
        if (cfg.family.kind == SequenceFamily::Kind::Regular && cfg.family.d >= 3)
            result.c_regular = regular_broadcast_constant(cfg.family.d);
    } catch (const Error&) {
        // families outside the theorem's range simply omit the constants
    }
    return result;
}

// ---------------------------------------------------------------------------
// Pull with a bad initial vertex

// Smallest-degree vertex all of whose neighbors have degree >= threshold.
inline std::optional<Vertex> find_bad_pull_start(const Multigraph& g, Degree threshold) {
    std::optional<Vertex> best;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) == 0) continue;
        bool all_heavy = true;
        for (Vertex w : g.stub_neighbors(v)) {
            if (w == v || g.degree(w) < threshold) {
                all_heavy = false;
                break;
            }
        }
        if (all_heavy && (!best || g.degree(v) < g.degree(*best))) best = v;
    }
    return best;
}

// Mean number of pull rounds until a second vertex is informed.
inline double mean_rounds_to_second(const Multigraph& g, Vertex start, std::uint32_t trials,
                                    std::uint32_t round_cap, Rng& rng) {
    double total = 0.0;
    for (std::uint32_t t = 0; t < trials; ++t) {
        const RunResult res = run_pull(g, start, round_cap, rng);
        std::int64_t when = round_cap;
        for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
            if (res.trajectory[i] >= 2) {
                when = static_cast<std::int64_t>(i);
                break;
            }
        }
        total += static_cast<double>(when);
    }
    return total / static_cast<double>(trials);
}

struct PullBadStartReport {
    bool found = false;
    Vertex bad_vertex = 0;
    Degree bad_degree = 0;
    Degree min_neighbor_degree = 0;
    double mean_rounds_bad_start = 0.0;
    double mean_rounds_uniform_start = 0.0;
    double ratio = 0.0;
    std::uint32_t graphs_searched = 0;
};

// Samples graphs from the family and, when some vertex has only high-degree
// neighbors, compares pull's time-to-second-vertex from that start against a
// uniformly chosen start.
inline PullBadStartReport pull_bad_start_probe(const SequenceFamily& family,
                                               Degree degree_threshold,
                                               std::uint32_t num_graphs,
                                               std::uint32_t trials_per_start,
                                               std::uint64_t seed) {
    PullBadStartReport report;
    for (std::uint32_t i = 0; i < num_graphs; ++i) {
        Rng rng(derive_seed(seed, 0xbad, i));
        const DegreeSequence seq = family.build();
        const Multigraph g = sample_multigraph(seq, rng);
        ++report.graphs_searched;
        const auto bad = find_bad_pull_start(g, degree_threshold);
        if (!bad) continue;
        report.found = true;
        report.bad_vertex = *bad;
        report.bad_degree = g.degree(*bad);
        Degree min_nb = std::numeric_limits<Degree>::max();
        for (Vertex w : g.stub_neighbors(*bad)) min_nb = std::min(min_nb, g.degree(w));
        report.min_neighbor_degree = min_nb;
        const std::uint32_t cap = 50 * (min_nb + 2);
        report.mean_rounds_bad_start =
            mean_rounds_to_second(g, *bad, trials_per_start, cap, rng);
        const Vertex uniform_start = static_cast<Vertex>(uniform_below(rng, g.num_vertices()));
        report.mean_rounds_uniform_start =
            mean_rounds_to_second(g, uniform_start, trials_per_start, cap, rng);
        report.ratio = report.mean_rounds_uniform_start > 0
                           ? report.mean_rounds_bad_start / report.mean_rounds_uniform_start
                           : report.mean_rounds_bad_start;
        return report;
    }
    return report;
}

} // namespace rumor
