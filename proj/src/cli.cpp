#include "schedsim/cli.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schedsim/checkpoint.hpp"
#include "schedsim/cluster.hpp"
#include "schedsim/config.hpp"
#include "schedsim/debug_log.hpp"
#include "schedsim/engine.hpp"
#include "schedsim/errors.hpp"
#include "schedsim/heuristics.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/result_writer.hpp"
#include "schedsim/rl_agent.hpp"
#include "schedsim/rl_policy.hpp"
#include "schedsim/swf.hpp"

namespace fs = std::filesystem;

namespace schedsim {

namespace {

constexpr std::array<const char*, 11> kRlConfigKeys = {
    "learning_rate",  "batch_size",      "epsilon",           "epsilon_decay",
    "epsilon_min",    "gamma",           "window_k",          "hidden_sizes",
    "replay_capacity", "target_sync_every", "episodes"};

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::RlTrain: return "rl-train";
        case RunMode::RlInfer: return "rl-infer";
        default: return "heuristic";
    }
}

struct RunPaths {
    fs::path results;
    fs::path summary;
    fs::path debug;
    fs::path default_checkpoint;
};

RunPaths prepare_paths(const ResolvedConfig& cfg) {
    fs::path out(cfg.output_dir);
    fs::create_directories(out / "Results");
    fs::create_directories(out / "Debug");
    std::string run = cfg.run_name();
    RunPaths paths;
    paths.results = out / "Results" / (run + ".rst");
    paths.summary = out / "Results" / (run + ".summary.txt");
    paths.debug = out / "Debug" / (run + ".log");
    paths.default_checkpoint = out / "Results" / (run + ".ckpt");
    return paths;
}

// Extra key=value lines that depend on the mode (episode counts,
// checkpoint paths), appended after the metric block.
using ExtraLines = std::vector<std::pair<std::string, std::string>>;

void write_summary(const fs::path& path, const ResolvedConfig& cfg, const ClusterConfig& nodes,
                   const SimulationSummary& sim, const ExtraLines& extra) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open summary file: " + path.string());

    out << "run_name=" << cfg.run_name() << '\n';
    out << "mode=" << mode_name(cfg.mode()) << '\n';
    out << "trace=" << cfg.trace_path << '\n';
    out << "node_structure=" << cfg.node_path << '\n';
    out << "total_nodes=" << nodes.total_nodes << '\n';
    out << "jobs_read=" << sim.jobs_read << '\n';
    out << "finished=" << sim.metrics.finished_count << '\n';
    out << "discarded=" << sim.metrics.discarded_count << '\n';
    out << "avg_wait=" << format_double(sim.metrics.avg_wait) << '\n';
    out << "avg_bounded_slowdown=" << format_double(sim.metrics.avg_bounded_slowdown) << '\n';
    out << "utilization=" << format_double(sim.metrics.utilization) << '\n';
    out << "makespan=" << sim.metrics.makespan << '\n';
    out << "final_time=" << sim.final_time << '\n';
    for (const auto& [key, value] : extra) out << key << '=' << value << '\n';

    out << "# resolved configuration (value [source])\n";
    for (const auto& [key, value] : config_items(cfg))
        out << key << '=' << value << " [" << source_label(cfg.source_of(key)) << "]\n";
    out.flush();
    if (!out) throw IoError("failed writing summary file: " + path.string());
}

std::string summary_line(const SimulationSummary& sim) {
    return std::to_string(sim.metrics.finished_count) + " finished, " +
           std::to_string(sim.metrics.discarded_count) + " discarded, avg_wait " +
           format_double(sim.metrics.avg_wait) + " s, avg_bounded_slowdown " +
           format_double(sim.metrics.avg_bounded_slowdown) + ", utilization " +
           format_double(sim.metrics.utilization) + ", makespan " +
           std::to_string(sim.metrics.makespan) + " s";
}

// One full pass of the trace through a fresh engine.
SimulationSummary run_once(const ResolvedConfig& cfg, const ClusterConfig& nodes,
                           SchedulingPolicy& policy, DebugLog& log, ResultWriter* results) {
    TraceReader trace(cfg.trace_path, cfg.trace_window,
                      [&log](std::size_t line_no, const std::string& reason) {
                          log.log(kLogWarn, 0,
                                  "trace line " + std::to_string(line_no) + ": " + reason);
                      });
    ClusterState cluster(nodes.total_nodes);
    EngineConfig engine_cfg{cfg.mode(), cfg.seed, cfg.policy};
    Engine engine(trace, cluster, policy, engine_cfg, &log, results, cfg.slowdown_threshold);
    return engine.run();
}

int run_heuristic(const ResolvedConfig& cfg, const ClusterConfig& nodes, const RunPaths& paths,
                  DebugLog& log) {
    std::unique_ptr<SchedulingPolicy> policy = make_heuristic_policy(cfg.policy);
    if (!policy) throw ConfigError("unknown policy '" + cfg.policy + "'");

    ResultWriter results = ResultWriter::open_file(paths.results.string());
    SimulationSummary sim = run_once(cfg, nodes, *policy, log, &results);

    write_summary(paths.summary, cfg, nodes, sim, {});
    log.log_tagged(kLogError, "summary", sim.final_time, summary_line(sim));
    std::cout << cfg.run_name() << ": " << summary_line(sim) << '\n';
    std::cout << "results: " << paths.results.string() << '\n';
    return 0;
}

int run_rl_training(const ResolvedConfig& cfg, const ClusterConfig& nodes, const RunPaths& paths,
                    DebugLog& log) {
    std::unique_ptr<RlAgent> agent = make_agent(cfg.policy, cfg.hp, cfg.seed);
    if (!agent) throw ConfigError("unknown policy '" + cfg.policy + "'");
    RlSchedulingPolicy policy(*agent, /*training=*/true);

    const std::size_t episodes = cfg.hp.episodes;
    SimulationSummary sim;
    std::optional<ResultWriter> results;
    for (std::size_t episode = 1; episode <= episodes; ++episode) {
        const bool final_episode = episode == episodes;
        if (final_episode) results.emplace(ResultWriter::open_file(paths.results.string()));

        policy.begin_episode();
        sim = run_once(cfg, nodes, policy, log, final_episode ? &*results : nullptr);
        policy.finish_episode(sim.final_time);

        log.log_tagged(kLogRl, "rl", sim.final_time,
                       "episode " + std::to_string(episode) + "/" + std::to_string(episodes) +
                           " total_reward " + format_double(agent->episode_total_reward()) +
                           " loss " + format_double(agent->episode_loss()) + " epsilon " +
                           format_double(agent->exploration()));
        agent->decay_exploration();
    }

    fs::path ckpt = cfg.checkpoint.empty() ? paths.default_checkpoint : fs::path(cfg.checkpoint);
    save_checkpoint(*agent, ckpt);

    ExtraLines extra{{"episodes_run", std::to_string(episodes)},
                     {"checkpoint_saved", ckpt.string()}};
    write_summary(paths.summary, cfg, nodes, sim, extra);
    log.log_tagged(kLogError, "summary", sim.final_time,
                   "trained " + std::to_string(episodes) + " episodes; final episode: " +
                       summary_line(sim));
    std::cout << cfg.run_name() << ": trained " << std::to_string(episodes)
              << " episodes; final episode: " << summary_line(sim) << '\n';
    std::cout << "checkpoint: " << ckpt.string() << '\n';
    std::cout << "results: " << paths.results.string() << '\n';
    return 0;
}

int run_rl_inference(ResolvedConfig& cfg, const ClusterConfig& nodes, const RunPaths& paths,
                     DebugLog& log) {
    Checkpoint ckpt = load_checkpoint(cfg.checkpoint);
    if (ckpt.agent_kind != cfg.policy)
        throw ConfigError("checkpoint " + cfg.checkpoint + " holds a '" + ckpt.agent_kind +
                          "' agent but the requested policy is '" + cfg.policy + "'");

    // The network in the checkpoint fixes the hyperparameters; configured
    // values cannot apply to it.
    for (const char* key : kRlConfigKeys) {
        if (cfg.source_of(key) != ValueSource::kDefault)
            log.log(kLogWarn, 0,
                    std::string("'") + key +
                        "' is taken from the checkpoint in inference runs; configured value "
                        "ignored");
    }
    cfg.hp = ckpt.hp;
    for (const char* key : kRlConfigKeys) cfg.sources[key] = ValueSource::kCheckpoint;

    std::unique_ptr<RlAgent> agent = restore_agent(ckpt, cfg.seed);
    if (auto* dqn = dynamic_cast<DqnAgent*>(agent.get())) dqn->set_epsilon(0.0);
    RlSchedulingPolicy policy(*agent, /*training=*/false);

    ResultWriter results = ResultWriter::open_file(paths.results.string());
    SimulationSummary sim = run_once(cfg, nodes, policy, log, &results);

    ExtraLines extra{{"checkpoint_loaded", cfg.checkpoint}};
    write_summary(paths.summary, cfg, nodes, sim, extra);
    log.log_tagged(kLogError, "summary", sim.final_time, summary_line(sim));
    std::cout << cfg.run_name() << ": " << summary_line(sim) << '\n';
    std::cout << "results: " << paths.results.string() << '\n';
    return 0;
}

int orchestrate(ResolvedConfig& cfg) {
    ClusterConfig nodes = parse_node_structure(cfg.node_path);
    RunPaths paths = prepare_paths(cfg);
    DebugLog log = DebugLog::open_file(paths.debug.string(), cfg.debug_lvl);
    for (const std::string& warning : cfg.warnings) log.log(kLogWarn, 0, warning);

    switch (cfg.mode()) {
        case RunMode::RlTrain: return run_rl_training(cfg, nodes, paths, log);
        case RunMode::RlInfer: return run_rl_inference(cfg, nodes, paths, log);
        default: return run_heuristic(cfg, nodes, paths, log);
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Event-driven HPC batch-scheduling simulator with trainable RL policies"};
    app.name("schedsim");

    std::string trace_path;
    std::string node_path;
    std::string config_dir = "Config";
    app.add_option("-j,--job_trace", trace_path, "Job trace in Standard Workload Format")
        ->required();
    app.add_option("-n,--node_structure", node_path,
                   "Node-structure file (SWF header with MaxNodes/MaxProcs)")
        ->required();
    app.add_option("--config_dir", config_dir,
                   "Folder holding sim.conf and rl.conf (default: Config)");

    // Every overridable key is captured as text and funneled through the
    // same parser as the config files, so validation and provenance are
    // identical for both layers.
    std::map<std::string, std::string> cli_values;
    auto add_key = [&](const std::string& key, const std::string& help) {
        app.add_option("--" + key, cli_values[key], help);
    };
    add_key("policy", "fcfs | sjf | ljf | easy | dqn | pg (default: fcfs)");
    add_key("is_training", "1 = train the RL policy, 0 = run it from a checkpoint");
    add_key("debug_lvl", "Log detail 1..5 (default: 1)");
    add_key("seed", "Random seed (default: 1)");
    add_key("output_dir", "Directory receiving Results/ and Debug/ (default: .)");
    add_key("checkpoint", "Agent checkpoint to save (training) or load (inference)");
    add_key("trace_window", "Max job records buffered from the trace (default: 64)");
    add_key("slowdown_threshold", "Bounded-slowdown runtime floor in seconds (default: 10)");
    add_key("learning_rate", "SGD step size (default: 0.001)");
    add_key("batch_size", "Replay batch size (default: 32)");
    add_key("epsilon", "Initial exploration rate (default: 1.0)");
    add_key("epsilon_decay", "Per-episode exploration decay (default: 0.995)");
    add_key("epsilon_min", "Exploration floor (default: 0.05)");
    add_key("gamma", "Discount factor (default: 0.99)");
    add_key("window_k", "Queued jobs visible to the agent (default: 5)");
    add_key("hidden_sizes", "Comma-separated hidden layer widths (default: 64,64)");
    add_key("replay_capacity", "Replay buffer capacity (default: 10000)");
    add_key("target_sync_every", "Train steps between target-network syncs (default: 200)");
    add_key("episodes", "Training episodes (default: 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << " (run with --help for usage)\n";
        return 2;
    }

    try {
        ResolvedConfig cfg;
        cfg.trace_path = trace_path;
        cfg.node_path = node_path;

        ConfigOverrides file_overrides = load_config_dir(config_dir, cfg.warnings);
        apply_overrides(cfg, file_overrides, ValueSource::kFile);

        ConfigOverrides cli_overrides;
        for (const auto& [key, value] : cli_values)
            if (app.count("--" + key) > 0) cli_overrides[key] = value;
        apply_overrides(cfg, cli_overrides, ValueSource::kCli);

        if (cfg.mode() == RunMode::Heuristic &&
            cfg.source_of("is_training") != ValueSource::kDefault)
            cfg.warnings.push_back("is_training has no effect with the heuristic policy '" +
                                   cfg.policy + "'");

        cfg.validate();
        return orchestrate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace schedsim
