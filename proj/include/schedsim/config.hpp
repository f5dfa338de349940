#ifndef SCHEDSIM_CONFIG_HPP
#define SCHEDSIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "schedsim/engine.hpp"
#include "schedsim/hyperparameters.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

// Which layer decided a field's value. Precedence is CLI > config file >
// built-in default, applied field by field; the summary file echoes the
// winning source next to every value. kCheckpoint marks hyperparameters
// replaced by a loaded checkpoint in inference runs.
enum class ValueSource { kDefault, kFile, kCli, kCheckpoint };

const char* source_label(ValueSource source);  // "default" | "file" | "cli" | "checkpoint"

// Raw string overrides from one layer (a config file, or the flags the
// user actually passed). Keys use the config-file spelling, which equals
// the long CLI flag name without the dashes.
using ConfigOverrides = std::map<std::string, std::string>;

struct ResolvedConfig {
    std::string trace_path;  // -j, required, CLI only
    std::string node_path;   // -n, required, CLI only

    std::string policy = "fcfs";  // fcfs | sjf | ljf | easy | dqn | pg
    bool is_training = true;      // meaningful for dqn/pg only
    int debug_lvl = 1;
    std::uint64_t seed = 1;
    std::string output_dir = ".";
    std::string checkpoint;  // empty => default save path in rl-train
    std::size_t trace_window = 64;
    Seconds slowdown_threshold = kDefaultSlowdownThreshold;
    Hyperparameters hp;

    std::map<std::string, ValueSource> sources;  // per overridable key
    std::vector<std::string> warnings;           // deferred level-2 log lines

    // dqn/pg follow is_training; everything else is a heuristic run.
    RunMode mode() const;

    // <trace stem>_<policy>_<seed>: distinct per sweep point.
    std::string run_name() const;

    // Cross-field checks that only make sense after all layers applied
    // (hyperparameter ranges, checkpoint required for rl-infer, ...).
    // Throws ConfigError naming the offending key.
    void validate() const;

    ValueSource source_of(const std::string& key) const;
};

// Reads `key = value` lines from sim.conf and rl.conf under `dir`. Missing
// files yield no overrides; an unreadable existing file is fatal. Unknown
// keys and malformed lines are reported through `warnings` and skipped.
ConfigOverrides load_config_dir(const std::filesystem::path& dir,
                                std::vector<std::string>& warnings);

// Applies one layer of overrides. Every key must be known and its value
// well-formed; violations throw ConfigError naming the key. Records
// `source` for each key applied.
void apply_overrides(ResolvedConfig& config, const ConfigOverrides& overrides,
                     ValueSource source);

// The overridable keys in summary order, paired with the current value
// rendered as a string. Used for the summary echo and tests.
std::vector<std::pair<std::string, std::string>> config_items(const ResolvedConfig& config);

}  // namespace schedsim

#endif
