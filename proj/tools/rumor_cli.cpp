// Command-line front end: degree-sequence generation, protocol constants,
// single simulation runs, delayed-push runs with audit, ensemble sweeps and
// simplicity Monte Carlo.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rumor/rumor.hpp"

namespace {

using rumor::json;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw rumor::ConfigError("cannot open output file: " + path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rumor::ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

rumor::SequenceFamily load_family(const std::string& seq_spec, const std::string& config_path) {
    if (!seq_spec.empty()) return rumor::family_from_json_text(seq_spec);
    if (!config_path.empty()) {
        const json j = json::parse(slurp(config_path));
        if (j.contains("family")) return rumor::family_from_json(j.at("family"));
        return rumor::family_from_json(j);
    }
    throw rumor::ConfigError("need --seq '<json>' or --config <path>");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rumor spreading on configuration-model multigraphs"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::string config_path;
    std::string out_path;
    std::uint32_t threads = 1;
    app.add_option("--seed", seed, "master seed (default 1)");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--threads", threads, "worker threads for sweeps");
    app.fallthrough();

    std::string seq_spec;
    double gamma = -1.0;
    double alpha = -1.0;
    double eps = 0.01;
    std::string eps_csv = "0.01,0.05";
    std::string protocol_name = "push";
    std::int64_t init = -1;
    std::uint32_t rounds = 0;
    std::uint64_t samples = 100000;
    std::uint64_t max_tries = 1000;
    std::uint64_t phase1_target = 0;
    std::string schedule_name;
    std::string trajectory_path;
    std::string rounds_csv_path;
    std::string summary_path;
    bool emit_graph = false;
    bool want_simple = false;

    auto* generate = app.add_subcommand("generate", "emit a degree sequence or sampled edge list");
    generate->add_option("--seq", seq_spec, "sequence spec JSON");
    generate->add_flag("--graph", emit_graph, "sample a multigraph and emit its edge list");
    generate->add_flag("--simple", want_simple, "rejection-sample until the graph is simple");
    generate->add_option("--max-tries", max_tries, "rejection cap for --simple");

    auto* constants = app.add_subcommand("constants", "emit protocol constants as JSON");
    constants->add_option("--seq", seq_spec, "sequence spec JSON");
    constants->add_option("--gamma", gamma, "fixed gamma instead of the auto policy");

    auto* simulate = app.add_subcommand("simulate", "run one push/pull/push-pull broadcast");
    simulate->add_option("--seq", seq_spec, "sequence spec JSON");
    simulate->add_option("--protocol", protocol_name, "push | pull | push_pull");
    simulate->add_option("--init", init, "initial vertex (default: uniform)");
    simulate->add_option("--eps", eps_csv, "comma-separated eps values for T_eps");
    simulate->add_option("--rounds", rounds, "round cap (default: automatic)");
    simulate->add_option("--trajectory", trajectory_path, "write round,informed_count CSV here");

    auto* drp = app.add_subcommand("drp", "run the delayed push process with audit");
    drp->add_option("--seq", seq_spec, "sequence spec JSON");
    drp->add_option("--eps", eps, "stop phase 3 once all but an eps fraction is informed");
    drp->add_option("--alpha", alpha, "phase-2 informed-fraction override");
    drp->add_option("--gamma", gamma, "fixed gamma");
    drp->add_option("--target", phase1_target, "phase-1 newborn threshold override");
    drp->add_option("--schedule", schedule_name, "bounded | unbounded");
    drp->add_option("--init", init, "initial vertex (default: uniform)");
    drp->add_option("--rounds-csv", rounds_csv_path, "write the per-round CSV here");

    auto* sweep = app.add_subcommand("sweep", "ensemble runs over an n list, with slope fit");
    sweep->add_option("--summary", summary_path, "write the fit summary JSON here");

    auto* simplicity = app.add_subcommand("simplicity", "Monte Carlo simple-graph fraction");
    simplicity->add_option("--seq", seq_spec, "sequence spec JSON");
    simplicity->add_option("--samples", samples, "number of matchings to sample");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            const auto family = load_family(seq_spec, config_path);
            const auto seq = family.build();
            if (emit_graph) {
                rumor::Rng rng(seed);
                const rumor::Multigraph g =
                    want_simple ? rumor::sample_simple(seq, rng, max_tries)
                                : rumor::sample_multigraph(seq, rng);
                write_output(out_path, g.edge_list_text());
            } else {
                const json j{{"kind", "explicit"}, {"degrees", seq.degrees}};
                write_output(out_path, j.dump(2) + "\n");
            }
        } else if (constants->parsed()) {
            const auto family = load_family(seq_spec, config_path);
            const auto seq = family.build();
            std::optional<double> fixed;
            if (gamma >= 0.0) fixed = gamma;
            const auto pc = rumor::protocol_constants(seq, fixed);
            write_output(out_path, rumor::constants_to_json(pc).dump(2) + "\n");
        } else if (simulate->parsed()) {
            const auto family = load_family(seq_spec, config_path);
            const auto seq = family.build();
            rumor::Rng rng(seed);
            const rumor::Multigraph g = rumor::sample_multigraph(seq, rng);
            const rumor::Vertex start =
                init >= 0 ? static_cast<rumor::Vertex>(init)
                          : static_cast<rumor::Vertex>(
                                rumor::uniform_below(rng, g.num_vertices()));
            std::uint32_t cap = rounds;
            if (cap == 0) {
                rumor::ExperimentConfig defaults;
                cap = defaults.effective_round_cap(seq.n());
            }
            auto result = rumor::run_protocol(rumor::protocol_from_string(protocol_name), g,
                                              start, cap, rng);
            result.seed = seed;
            std::vector<double> eps_list;
            std::stringstream ss(eps_csv);
            for (std::string tok; std::getline(ss, tok, ',');)
                if (!tok.empty()) eps_list.push_back(std::stod(tok));
            write_output(out_path, rumor::run_result_to_json(result, eps_list).dump(2) + "\n");
            if (!trajectory_path.empty())
                write_output(trajectory_path, rumor::trajectory_csv(result));
        } else if (drp->parsed()) {
            const auto family = load_family(seq_spec, config_path);
            const auto seq = family.build();
            rumor::DrpOptions opt;
            if (alpha >= 0.0) opt.alpha = alpha;
            if (gamma >= 0.0) opt.gamma = gamma;
            if (phase1_target > 0) opt.phase1_target = phase1_target;
            if (init >= 0) opt.init = static_cast<rumor::Vertex>(init);
            if (schedule_name == "bounded")
                opt.schedule = rumor::ScheduleKind::BoundedDegree;
            else if (schedule_name == "unbounded")
                opt.schedule = rumor::ScheduleKind::UnboundedDegree;
            else if (!schedule_name.empty())
                throw rumor::ConfigError("schedule must be bounded or unbounded");
            const auto result = rumor::run_drp(seq, eps, opt, seed);
            write_output(out_path, rumor::drp_result_to_json(result, family).dump(2) + "\n");
            if (!rounds_csv_path.empty()) {
                std::ostringstream os;
                result.write_rounds_csv(os);
                write_output(rounds_csv_path, os.str());
            }
        } else if (sweep->parsed()) {
            if (config_path.empty()) throw rumor::ConfigError("sweep needs --config <path>");
            auto cfg = rumor::config_from_json(json::parse(slurp(config_path)));
            if (app.count("--seed") > 0) cfg.master_seed = seed;
            if (app.count("--threads") > 0) cfg.threads = threads;
            const auto result = rumor::run_ensemble(cfg);
            write_output(out_path, result.to_csv());
            if (!summary_path.empty())
                write_output(summary_path, rumor::sweep_summary_to_json(result).dump(2) + "\n");
        } else if (simplicity->parsed()) {
            const auto family = load_family(seq_spec, config_path);
            const auto seq = family.build();
            const auto est = rumor::simplicity_montecarlo(seq, samples, seed);
            const json j{{"empirical", est.empirical},
                         {"formula", est.formula},
                         {"samples", est.samples}};
            write_output(out_path, j.dump(2) + "\n");
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
