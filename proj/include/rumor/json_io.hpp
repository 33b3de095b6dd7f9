#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rumor/broadcast.hpp"
#include "rumor/constants.hpp"
#include "rumor/degree_sequence.hpp"
#include "rumor/drp.hpp"
#include "rumor/harness.hpp"

namespace rumor {

using nlohmann::json;

// Sequence spec:
//   {"kind":"regular","n":N,"d":D}
//   {"kind":"power_law","n":N,"beta":B,"d_min":D,"cutoff":C}   (cutoff optional)
//   {"kind":"explicit","degrees":[...]}
inline SequenceFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("sequence spec must be an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "regular")
        return SequenceFamily::regular(j.at("n").get<std::uint64_t>(),
                                       j.at("d").get<Degree>());
    if (kind == "power_law")
        return SequenceFamily::power_law(j.at("n").get<std::uint64_t>(),
                                         j.at("beta").get<double>(),
                                         j.at("d_min").get<Degree>(),
                                         j.value("cutoff", Degree{0}));
    if (kind == "explicit")
        return SequenceFamily::explicit_list(j.at("degrees").get<std::vector<Degree>>());
    throw ConfigError("unknown sequence kind: " + kind);
}

inline SequenceFamily family_from_json_text(const std::string& text) {
    return family_from_json(json::parse(text));
}

inline json family_to_json(const SequenceFamily& f) {
    switch (f.kind) {
    case SequenceFamily::Kind::Regular:
        return json{{"kind", "regular"}, {"n", f.n}, {"d", f.d}};
    case SequenceFamily::Kind::PowerLaw: {
        json j{{"kind", "power_law"}, {"n", f.n}, {"beta", f.beta}, {"d_min", f.d_min}};
        if (f.cutoff != 0) j["cutoff"] = f.cutoff;
        return j;
    }
    case SequenceFamily::Kind::Explicit:
        return json{{"kind", "explicit"}, {"degrees", f.degrees}};
    }
    throw ConfigError("unknown family kind");
}

inline json constants_to_json(const ProtocolConstants& pc) {
    return json{{"delta", pc.delta},   {"gamma", pc.gamma},
                {"M", pc.M},           {"alpha", pc.alpha},
                {"c_D", pc.c_delta},   {"mean_degree", pc.mean_degree}};
}

inline std::string format_eps(double eps) {
    std::ostringstream os;
    os << eps;
    return os.str();
}

inline json run_result_to_json(const RunResult& r, const std::vector<double>& eps_list) {
    json t_eps = json::object();
    for (double e : eps_list) {
        const std::int64_t t = time_to_fraction(r, e);
        t_eps[format_eps(e)] = t == kNotReached ? json(nullptr) : json(t);
    }
    return json{{"protocol", to_string(r.protocol)},
                {"n", r.n},
                {"init", r.init},
                {"seed", r.seed},
                {"T", r.complete() ? json(r.rounds_to_complete) : json(nullptr)},
                {"t_eps", t_eps},
                {"rounds", r.trajectory}};
}

inline json audit_to_json(const DrpAudit& a) {
    return json{{"back_matches", a.back_matches},
                {"twins_used", a.twins_used},
                {"twins_woken", a.twins_woken},
                {"coupling_breaks", a.coupling_breaks},
                {"good_match_rate", a.good_match_rate()},
                {"matches", a.matches},
                {"good_matches", a.good_matches},
                {"nongood_high_degree", a.nongood_high_degree},
                {"mean_m_delta", a.mean_m_delta()},
                {"phase1", json{{"branches", a.p1_branches},
                                {"admitted", a.p1_admitted},
                                {"dead_back_match", a.p1_dead_back_match},
                                {"dead_under_selection", a.p1_dead_under_selection},
                                {"dead_level_cap", a.p1_dead_level_cap},
                                {"dead_exhausted", a.p1_dead_exhausted}}}};
}

inline json drp_result_to_json(const DrpResult& r, const SequenceFamily& family) {
    return json{{"n", r.n},
                {"seq_spec", family_to_json(family)},
                {"seed", r.seed},
                {"eps", r.eps},
                {"alpha_used", r.alpha_used},
                {"gamma_used", r.gamma_used},
                {"M", r.M},
                {"delta", r.delta},
                {"t1", r.t1},
                {"t2", r.t2},
                {"t3", r.t3},
                {"retries", r.retries},
                {"phase1_levels", r.phase1_levels},
                {"audit", audit_to_json(r.audit)}};
}

inline json fit_to_json(const FitResult& f) {
    return json{{"slope", f.slope},
                {"intercept", f.intercept},
                {"ci_halfwidth", f.ci_halfwidth},
                {"points", f.points}};
}

inline json sweep_summary_to_json(const SweepResult& sweep) {
    json out = json::array();
    for (const auto& s : sweep.summaries) {
        json points = json::array();
        for (const auto& p : s.points)
            points.push_back(json{{"n", p.n},
                                  {"mean_t_eps", p.mean},
                                  {"q10", p.q10},
                                  {"q50", p.q50},
                                  {"q90", p.q90},
                                  {"trials_used", p.used},
                                  {"trials_excluded", p.excluded}});
        json entry{{"eps", s.eps}, {"points", points}, {"excluded", s.excluded}};
        if (s.fit_ok)
            entry["fit"] = fit_to_json(s.fit);
        else
            entry["fit_error"] = s.fit_error;
        out.push_back(entry);
    }
    json root{{"protocol", to_string(sweep.protocol)}, {"summaries", out}};
    if (sweep.c_delta > 0.0) root["c_D"] = sweep.c_delta;
    if (sweep.c_regular > 0.0) root["c_d"] = sweep.c_regular;
    return root;
}

// Trajectory CSV: one row per round.
inline std::string trajectory_csv(const RunResult& r) {
    std::ostringstream os;
    os << "round,informed_count\n";
    for (std::size_t i = 0; i < r.trajectory.size(); ++i)
        os << i << "," << r.trajectory[i] << "\n";
    return os.str();
}

// Experiment config for sweeps:
// {"family":{...},"protocol":"push","eps":[0.01],"n_list":[4096,...],
//  "trials":50,"master_seed":1,"round_cap":0,"threads":1,"init":null,
//  "drp":{"alpha":0.1,...}}
inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.family = family_from_json(j.at("family"));
    cfg.protocol = protocol_from_string(j.value("protocol", std::string("push")));
    if (j.contains("eps")) cfg.eps_list = j.at("eps").get<std::vector<double>>();
    cfg.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
    cfg.trials = j.value("trials", 1u);
    cfg.master_seed = j.value("master_seed", std::uint64_t{1});
    cfg.round_cap = j.value("round_cap", 0u);
    cfg.threads = j.value("threads", 1u);
    if (j.contains("init") && !j.at("init").is_null())
        cfg.init = j.at("init").get<Vertex>();
    if (j.contains("drp")) {
        const json& d = j.at("drp");
        if (d.contains("alpha") && !d.at("alpha").is_null())
            cfg.drp.alpha = d.at("alpha").get<double>();
        if (d.contains("gamma") && !d.at("gamma").is_null())
            cfg.drp.gamma = d.at("gamma").get<double>();
        if (d.contains("phase1_target") && !d.at("phase1_target").is_null())
            cfg.drp.phase1_target = d.at("phase1_target").get<std::uint64_t>();
        if (d.contains("schedule")) {
            const std::string s = d.at("schedule").get<std::string>();
            if (s == "bounded")
                cfg.drp.schedule = ScheduleKind::BoundedDegree;
            else if (s == "unbounded")
                cfg.drp.schedule = ScheduleKind::UnboundedDegree;
            else
                throw ConfigError("schedule must be \"bounded\" or \"unbounded\"");
        }
        if (d.contains("retries")) cfg.drp.phase1_retries = d.at("retries").get<std::uint32_t>();
        if (d.contains("twin_wake_next_round"))
            cfg.drp.twin_wake_next_round = d.at("twin_wake_next_round").get<bool>();
    }
    cfg.validate();
    return cfg;
}

} // namespace rumor
