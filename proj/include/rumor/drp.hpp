#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <vector>

#include "rumor/constants.hpp"
#include "rumor/degree_sequence.hpp"
#include "rumor/errors.hpp"
#include "rumor/rng.hpp"
#include "rumor/stub_space.hpp"
#include "rumor/tree_process.hpp"

namespace rumor {

enum class ScheduleKind { UnboundedDegree, BoundedDegree };

// Phase boundaries and per-level delays for the delayed push process. All
// schedule logarithms are base 2.
struct PhaseSchedule {
    std::uint64_t n = 0;
    std::uint64_t phase1_target = 0; // newborn threshold that ends phase 1
    std::uint32_t height = 0;        // maximum tree depth, root included
    ScheduleKind kind = ScheduleKind::BoundedDegree;
    double alpha = 0.0;
    double eps = 0.0;
    std::uint32_t phase2_round_cap = 0;
    std::uint32_t phase3_round_cap = 0;

    // Rounds the level-j vertices push before their stubs are matched.
    std::uint32_t level_delay(std::uint32_t j) const {
        const double log_n = std::log2(std::max<double>(2.0, static_cast<double>(n)));
        const double log_log_n = std::max(1.0, std::log2(log_n));
        const double log_32 = std::log2(1.5);
        double t = 1.0;
        if (kind == ScheduleKind::UnboundedDegree)
            t = std::ceil(3.0 * log_log_n / (2.0 * log_32));
        else
            t = std::ceil(36.0 * log_n / (static_cast<double>(j) * j * log_32));
        return static_cast<std::uint32_t>(std::max(1.0, t));
    }

    // Admission cap for the level at depth `level` (root has depth 1).
    static std::uint64_t level_cap(std::uint32_t level) {
        return static_cast<std::uint64_t>(
            std::ceil(std::pow(4.0 / 3.0, static_cast<double>(level - 1))));
    }
};

// The paper-scale threshold log2(n)^5 exceeds n itself until n is in the
// millions, so desk-scale runs target min(log2(n)^5, n^0.6) by default. The
// exponent keeps the seed count large enough that the coupled rounds'
// selection surplus (mean Theta(seeds), noise Theta(sqrt(seeds))) rarely
// runs dry, while staying well below alpha n.
inline std::uint64_t default_phase1_target(std::uint64_t n) {
    const double log_n = std::log2(std::max<double>(2.0, static_cast<double>(n)));
    const double paper = std::pow(log_n, 5.0);
    const double desk = std::pow(static_cast<double>(n), 0.6);
    const double t = std::max(4.0, std::min(paper, desk));
    return static_cast<std::uint64_t>(std::ceil(t));
}

inline PhaseSchedule make_phase_schedule(std::uint64_t n, double alpha, double eps,
                                         ScheduleKind kind, double c_delta,
                                         std::optional<std::uint64_t> target_override = {},
                                         std::optional<std::uint32_t> phase2_cap = {},
                                         std::optional<std::uint32_t> phase3_cap = {}) {
    PhaseSchedule s;
    s.n = n;
    s.kind = kind;
    s.alpha = alpha;
    s.eps = eps;
    s.phase1_target = target_override.value_or(default_phase1_target(n));
    if (s.phase1_target < 1) throw ConfigError("phase1 target must be >= 1");
    const double levels =
        std::ceil(std::log2(static_cast<double>(s.phase1_target)) / std::log2(4.0 / 3.0));
    s.height = static_cast<std::uint32_t>(std::max(3.0, levels + 2.0));
    const double ln_n = std::log(std::max<double>(2.0, static_cast<double>(n)));
    s.phase2_round_cap = phase2_cap.value_or(
        static_cast<std::uint32_t>(std::max(60.0, std::ceil(6.0 * c_delta * ln_n))));
    s.phase3_round_cap = phase3_cap.value_or(
        static_cast<std::uint32_t>(std::max(200.0, std::ceil(60.0 * ln_n))));
    return s;
}

struct DrpAudit {
    // phase 2 matching
    std::uint64_t matches = 0;        // stubs pushed by the coupled loop
    std::uint64_t good_matches = 0;   // targets at uninformed vertices of degree <= M
    std::uint64_t back_matches = 0;   // targets at already informed vertices
    std::uint64_t nongood_high_degree = 0; // uninformed targets of degree > M
    std::uint64_t twins_used = 0;
    std::uint64_t twins_woken = 0;
    std::uint64_t coupling_breaks = 0; // rounds aborted with S-bar exhausted
    std::uint64_t sbar_built = 0;     // stubs entering S-bar at selection time
    std::uint64_t sbar_pops = 0;
    std::uint64_t sbar_skipped = 0;   // popped stubs that were matched meanwhile
    std::uint64_t nbar_total = 0;          // newly informed counted into N-bar
    std::uint64_t nbar_degree_delta = 0;   // of those, vertices of degree delta
    // phase 1 branch accounting
    std::uint64_t p1_branches = 0;
    std::uint64_t p1_admitted = 0;
    std::uint64_t p1_dead_back_match = 0;
    std::uint64_t p1_dead_under_selection = 0;
    std::uint64_t p1_dead_level_cap = 0;
    std::uint64_t p1_dead_exhausted = 0; // matching pool ran dry (tiny instances)

    double good_match_rate() const {
        return matches == 0 ? 1.0
                            : static_cast<double>(good_matches) / static_cast<double>(matches);
    }
    double mean_m_delta() const {
        return nbar_total == 0
                   ? 0.0
                   : static_cast<double>(nbar_degree_delta) / static_cast<double>(nbar_total);
    }
};

struct DrpRoundRow {
    std::uint32_t round = 0;
    std::uint8_t phase = 0;
    std::uint64_t informed = 0;
    std::uint64_t nbar = 0;          // newly informed, non-sleeping, degree <= M
    std::uint64_t tree_newborns = 0; // |N_i^T|
    std::uint64_t tree_free = 0;     // |P_i^T|
};

// The delayed push process coupled to the stub matching: one rumor source,
// per-stub delay states, twin bookkeeping and the three-phase structure.
class DrpProcess {
public:
    DrpProcess(const DegreeSequence& seq, const ProtocolConstants& consts,
               const PhaseSchedule& schedule, bool twin_wake_next_round = false)
        : seq_(&seq),
          space_(seq),
          consts_(consts),
          sched_(schedule),
          twin_wake_next_round_(twin_wake_next_round) {
        const std::uint64_t n = seq.n();
        const std::uint64_t alpha_raw =
            static_cast<std::uint64_t>(std::ceil(sched_.alpha * static_cast<double>(n) - 1e-9));
        alpha_count_ = std::min<std::uint64_t>(n, std::max<std::uint64_t>(1, alpha_raw));
        stub_state_.assign(space_.total_stubs(), kFree);
        stub_selected_.assign(space_.total_stubs(), 0);
        informed_.assign(n, 0);
        sleeping_.assign(n, 0);
        seed_flag_.assign(n, 0);
    }

    // Phase 1: grow a tree with at most two branches per vertex (three at the
    // root), each level delayed by the schedule, newborns admitted up to the
    // level cap. Succeeds when some level lands at least `phase1_target`
    // non-sleeping newborns of degree <= M.
    bool run_phase1(Vertex init, Rng& rng) {
        init_ = init;
        informed_[init] = 1;
        informed_count_ = 1;
        informed_list_.push_back(init);
        levels_.assign(1, 1);
        trajectory_.push_back(1);
        rows_.push_back({0, 1, 1, seq_->degrees[init] <= consts_.M ? 1u : 0u, 0, 0});

        std::vector<Vertex> level{init};
        std::vector<Vertex> admitted;
        std::vector<Vertex> eligible;
        for (std::uint32_t j = 1; j + 1 <= sched_.height && !level.empty(); ++j) {
            const std::uint32_t delay = sched_.level_delay(j);
            std::vector<std::vector<StubId>> picks(level.size());
            for (std::uint32_t t = 0; t < delay; ++t) {
                ++round_;
                for (std::size_t vi = 0; vi < level.size(); ++vi) {
                    const Vertex v = level[vi];
                    const StubId s =
                        space_.stub_at(v, static_cast<Degree>(uniform_below(rng, space_.degree(v))));
                    if (stub_selected_[s]) continue;
                    stub_selected_[s] = 1;
                    if (!space_.is_matched(s) && stub_state_[s] == kFree) {
                        stub_state_[s] = kDelayed;
                        picks[vi].push_back(s);
                    }
                }
                if (t + 1 < delay) {
                    rows_.push_back({round_, 1, informed_count_, 0, 0, 0});
                    trajectory_.push_back(informed_count_);
                }
            }

            // Match the chosen stubs; newborns land at the current round.
            // Once the level cap is filled the remaining chosen stubs stay
            // delayed unmatched ("at most two" leaves that open); matching
            // them would only swell the informed set that later rounds can
            // back-match into.
            const std::uint64_t cap = PhaseSchedule::level_cap(j + 1);
            admitted.clear();
            bool pool_exhausted = false;
            for (std::size_t vi = 0; vi < level.size(); ++vi) {
                const std::uint32_t allowance = (j == 1) ? 3 : 2;
                audit_.p1_branches += allowance;
                const std::size_t used = std::min<std::size_t>(allowance, picks[vi].size());
                audit_.p1_dead_under_selection += allowance - used;
                for (std::size_t k = 0; k < used; ++k) {
                    if (admitted.size() >= cap) {
                        ++audit_.p1_dead_level_cap;
                        continue;
                    }
                    if (pool_exhausted || space_.unmatched_count() < 2) {
                        pool_exhausted = true;
                        ++audit_.p1_dead_exhausted;
                        continue;
                    }
                    const StubId e = picks[vi][k];
                    if (space_.is_matched(e)) { // consumed as a target earlier
                        ++audit_.p1_dead_back_match;
                        continue;
                    }
                    const StubId ep = space_.match_uniform(e, rng);
                    const Vertex w = space_.owner(ep);
                    if (informed_[w]) {
                        ++audit_.p1_dead_back_match;
                        continue;
                    }
                    informed_[w] = 1;
                    ++informed_count_;
                    informed_list_.push_back(w);
                    admitted.push_back(w);
                }
            }
            audit_.p1_admitted += admitted.size();
            levels_.push_back(admitted.size());

            eligible.clear();
            for (Vertex w : admitted)
                if (seq_->degrees[w] <= consts_.M) eligible.push_back(w);

            rows_.push_back(
                {round_, 1, informed_count_, static_cast<std::uint64_t>(eligible.size()), 0, 0});
            trajectory_.push_back(informed_count_);

            if (eligible.size() >= sched_.phase1_target) {
                t1_ = round_;
                seeds_.assign(eligible.begin(),
                              eligible.begin() + static_cast<std::ptrdiff_t>(sched_.phase1_target));
                rows_.back().nbar = seeds_.size();
                return true;
            }
            level = admitted; // degree > M newborns stay in the tree
        }
        return false;
    }

    // Delay every informed vertex except the phase-1 seeds forever; the seeds
    // become the active set the coupled rounds select from.
    void start_phase2() {
        for (Vertex v : seeds_) seed_flag_[v] = 1;
        for (Vertex v : informed_list_)
            if (!seed_flag_[v]) sleeping_[v] = 1;
        active_ = seeds_;
    }

    // One coupled round: advance the tree, select one stub per active vertex,
    // then match stubs from S-bar until exactly |N_i^T| good vertices are
    // informed. Targets that are not good get a twin reserved from S-bar.
    // Returns false when S-bar runs dry first (the coupling broke).
    bool coupled_round(TreeProcess& tree, Rng& rng) {
        ++round_;
        tree.step(rng);
        const std::uint64_t want = tree.last_newborns();

        std::priority_queue<StubId, std::vector<StubId>, std::greater<StubId>> sbar;
        for (Vertex v : active_) {
            const StubId s =
                space_.stub_at(v, static_cast<Degree>(uniform_below(rng, space_.degree(v))));
            const bool first = !stub_selected_[s];
            stub_selected_[s] = 1;
            if (!space_.is_matched(s)) {
                if (first && stub_state_[s] == kFree) {
                    stub_state_[s] = kDelayed;
                    sbar.push(s);
                }
                // A sleeping twin selected by its own vertex stays asleep;
                // only its partner's selection wakes it.
            } else {
                const auto it = twin_of_.find(s);
                if (it != twin_of_.end()) {
                    const StubId twin = it->second;
                    twin_of_.erase(it);
                    stub_state_[twin] = kDelayed;
                    sbar.push(twin);
                    ++audit_.twins_woken;
                }
            }
        }

        audit_.sbar_built += sbar.size();
        std::uint64_t nbar = 0;
        bool ok = true;
        std::vector<Vertex> newly_active;
        while (nbar < want) {
            const StubId e = pop_available(sbar);
            if (e == kNoStub || space_.unmatched_count() < 2) {
                ok = false;
                ++audit_.coupling_breaks;
                break;
            }
            const StubId ep = space_.match_uniform(e, rng);
            ++audit_.matches;
            const Vertex w = space_.owner(ep);
            const bool good = !informed_[w] && space_.degree(w) <= consts_.M;
            if (good) {
                ++audit_.good_matches;
                informed_[w] = 1;
                ++informed_count_;
                informed_list_.push_back(w);
                newly_active.push_back(w);
                ++nbar;
                ++audit_.nbar_total;
                if (space_.degree(w) == consts_.delta) ++audit_.nbar_degree_delta;
            } else {
                if (informed_[w]) {
                    ++audit_.back_matches;
                } else {
                    ++audit_.nongood_high_degree;
                    informed_[w] = 1;
                    sleeping_[w] = 1;
                    ++informed_count_;
                    informed_list_.push_back(w);
                }
                const StubId twin = pop_available(sbar);
                if (twin == kNoStub) {
                    ok = false;
                    ++audit_.coupling_breaks;
                    break;
                }
                ++audit_.twins_used;
                if (stub_selected_[ep] && !twin_wake_next_round_) {
                    // The target's first selection already happened, so the
                    // twin spreads in this round.
                    stub_state_[twin] = kDelayed;
                    sbar.push(twin);
                    ++audit_.twins_woken;
                } else {
                    stub_state_[twin] = kSleeping;
                    twin_of_[ep] = twin;
                }
            }
        }
        active_.insert(active_.end(), newly_active.begin(), newly_active.end());
        rows_.push_back({round_, 2, informed_count_, nbar, want, tree.free_stubs()});
        trajectory_.push_back(informed_count_);
        return ok;
    }

    // Phase 3: all delays released, plain push over the partially matched
    // space; unmatched stubs are matched on demand.
    std::uint64_t phase3_round(Rng& rng) {
        ++round_;
        const std::size_t snapshot = informed_list_.size();
        std::uint64_t newly = 0;
        for (std::size_t i = 0; i < snapshot; ++i) {
            const Vertex v = informed_list_[i];
            const StubId s =
                space_.stub_at(v, static_cast<Degree>(uniform_below(rng, space_.degree(v))));
            Vertex w;
            if (space_.is_matched(s))
                w = space_.owner(space_.partner(s));
            else
                w = space_.owner(space_.match_uniform(s, rng));
            if (!informed_[w]) {
                informed_[w] = 1;
                ++informed_count_;
                informed_list_.push_back(w);
                ++newly;
            }
        }
        rows_.push_back({round_, 3, informed_count_, newly, 0, 0});
        trajectory_.push_back(informed_count_);
        return newly;
    }

    std::uint64_t informed_count() const { return informed_count_; }
    std::uint64_t alpha_count() const { return alpha_count_; }
    std::uint32_t round() const { return round_; }
    std::int64_t t1() const { return t1_; }
    const std::vector<std::uint64_t>& levels() const { return levels_; }
    const std::vector<Vertex>& seeds() const { return seeds_; }
    const DrpAudit& audit() const { return audit_; }
    const std::vector<DrpRoundRow>& rows() const { return rows_; }
    const std::vector<std::uint64_t>& trajectory() const { return trajectory_; }
    StubSpace& space() { return space_; }
    const StubSpace& space() const { return space_; }
    bool informed(Vertex v) const { return informed_[v] != 0; }
    bool sleeping(Vertex v) const { return sleeping_[v] != 0; }

private:
    static constexpr std::uint8_t kFree = 0;
    static constexpr std::uint8_t kDelayed = 1;
    static constexpr std::uint8_t kSleeping = 2;

    template <class Queue>
    StubId pop_available(Queue& q) {
        while (!q.empty()) {
            const StubId s = q.top();
            q.pop();
            ++audit_.sbar_pops;
            if (!space_.is_matched(s)) return s;
            ++audit_.sbar_skipped; // matched as a target after entering S-bar
        }
        return kNoStub;
    }

    const DegreeSequence* seq_;
    StubSpace space_;
    ProtocolConstants consts_;
    PhaseSchedule sched_;
    bool twin_wake_next_round_ = false;

    std::uint64_t alpha_count_ = 0;
    Vertex init_ = 0;
    std::vector<std::uint8_t> stub_state_;
    std::vector<std::uint8_t> stub_selected_;
    std::unordered_map<StubId, StubId> twin_of_; // back-match target -> twin
    std::vector<std::uint8_t> informed_;
    std::vector<std::uint8_t> sleeping_;
    std::vector<std::uint8_t> seed_flag_;
    std::vector<Vertex> informed_list_;
    std::vector<Vertex> active_;
    std::vector<Vertex> seeds_;
    std::uint64_t informed_count_ = 0;
    std::uint32_t round_ = 0;
    std::int64_t t1_ = -1;
    std::vector<std::uint64_t> levels_;
    DrpAudit audit_;
    std::vector<DrpRoundRow> rows_;
    std::vector<std::uint64_t> trajectory_;
};

inline bool coupled_drp_round(DrpProcess& process, TreeProcess& tree, Rng& rng) {
    return process.coupled_round(tree, rng);
}

struct DrpOptions {
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<std::uint64_t> phase1_target;
    std::optional<ScheduleKind> schedule;
    std::optional<Vertex> init;
    std::uint32_t phase1_retries = 20;
    std::optional<std::uint32_t> phase2_round_cap;
    std::optional<std::uint32_t> phase3_round_cap;
    bool twin_wake_next_round = false;
};

struct DrpResult {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    std::int64_t t1 = -1;
    std::int64_t t2 = -1;
    std::int64_t t3 = -1;
    std::uint32_t retries = 0;
    double alpha_used = 0.0;
    double gamma_used = 0.0;
    Degree M = 0;
    Degree delta = 0;
    std::vector<std::uint64_t> phase1_levels;
    std::vector<DrpRoundRow> rows;
    std::vector<std::uint64_t> trajectory; // |I_i| by round
    DrpAudit audit;

    // First round with |I_i| >= ceil((1-eps') n).
    std::int64_t time_to_fraction(double eps_query) const {
        const double raw = (1.0 - eps_query) * static_cast<double>(n);
        const std::uint64_t threshold =
            static_cast<std::uint64_t>(std::max(0.0, std::ceil(raw - 1e-9)));
        for (std::size_t i = 0; i < trajectory.size(); ++i)
            if (trajectory[i] >= threshold) return static_cast<std::int64_t>(i);
        return -1;
    }

    void write_rounds_csv(std::ostream& os) const {
        os << "round,phase,informed,nbar,tree_newborns,free_tree_stubs\n";
        for (const auto& r : rows)
            os << r.round << "," << static_cast<int>(r.phase) << "," << r.informed << ","
               << r.nbar << "," << r.tree_newborns << "," << r.tree_free << "\n";
    }
};

// Runs the full three-phase delayed push process. Phase 1 holds only with
// high probability, so failed attempts are retried with derived seeds up to
// the configured cap; the attempt count is reported.
inline DrpResult run_drp(const DegreeSequence& seq, double eps, const DrpOptions& opt,
                         std::uint64_t seed) {
    if (eps < 0.0 || eps > 1.0) throw DomainError("eps must be in [0, 1]");
    const ProtocolConstants consts = protocol_constants(seq, opt.gamma);
    const double alpha = opt.alpha.value_or(consts.alpha);
    if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must be in (0, 1]");
    const ScheduleKind kind = opt.schedule.value_or(ScheduleKind::BoundedDegree);
    const std::uint64_t n = seq.n();
    const PhaseSchedule sched =
        make_phase_schedule(n, alpha, eps, kind, consts.c_delta, opt.phase1_target,
                            opt.phase2_round_cap, opt.phase3_round_cap);
    if (sched.phase1_target > n) throw ConfigError("phase1 target exceeds n");

    for (std::uint32_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, 0xd52u, attempt));
        DrpProcess proc(seq, consts, sched, opt.twin_wake_next_round);
        const Vertex init =
            opt.init.value_or(static_cast<Vertex>(uniform_below(rng, n)));
        if (!proc.run_phase1(init, rng)) {
            if (attempt + 1 >= std::max<std::uint32_t>(1, opt.phase1_retries))
                throw PhaseFailedError("phase 1 missed its newborn threshold in every attempt");
            continue;
        }

        proc.start_phase2();
        TreeProcess tree(consts.delta, sched.phase1_target);
        while (proc.informed_count() < proc.alpha_count()) {
            if (proc.round() - static_cast<std::uint32_t>(proc.t1()) >= sched.phase2_round_cap)
                throw RoundCapExceededError("phase 2 exceeded its round cap");
            proc.coupled_round(tree, rng);
        }
        const std::int64_t t2 = proc.round();

        const double raw = (1.0 - eps) * static_cast<double>(n);
        const std::uint64_t phase3_goal = std::min<std::uint64_t>(
            n, static_cast<std::uint64_t>(std::floor(raw + 1e-9)) + 1);
        while (proc.informed_count() < phase3_goal) {
            if (proc.round() - static_cast<std::uint32_t>(t2) >= sched.phase3_round_cap)
                throw RoundCapExceededError("phase 3 exceeded its round cap");
            proc.phase3_round(rng);
        }

        DrpResult result;
        result.n = n;
        result.seed = seed;
        result.eps = eps;
        result.t1 = proc.t1();
        result.t2 = t2;
        result.t3 = proc.round();
        result.retries = attempt;
        result.alpha_used = alpha;
        result.gamma_used = consts.gamma;
        result.M = consts.M;
        result.delta = consts.delta;
        result.phase1_levels = proc.levels();
        result.rows = proc.rows();
        result.trajectory = proc.trajectory();
        result.audit = proc.audit();
        return result;
    }
}

} // namespace rumor
