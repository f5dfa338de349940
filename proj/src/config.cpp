#include "schedsim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "schedsim/errors.hpp"

namespace schedsim {

namespace {

constexpr std::array<const char*, 6> kPolicies = {"fcfs", "sjf", "ljf", "easy", "dqn", "pg"};

// sim.conf owns the run-shaping keys, rl.conf the agent knobs.
constexpr std::array<const char*, 8> kSimKeys = {
    "policy",     "is_training", "debug_lvl",    "seed",
    "output_dir", "checkpoint",  "trace_window", "slowdown_threshold"};
constexpr std::array<const char*, 11> kRlKeys = {
    "learning_rate",  "batch_size",      "epsilon",           "epsilon_decay",
    "epsilon_min",    "gamma",           "window_k",          "hidden_sizes",
    "replay_capacity", "target_sync_every", "episodes"};

bool contains(const auto& keys, const std::string& key) {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
    throw ConfigError("invalid value '" + value + "' for '" + key + "': expected " + expected);
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) bad_value(key, value, "a number");
    return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value) {
    Int out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) bad_value(key, value, "an integer");
    return out;
}

std::vector<std::size_t> to_size_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    std::istringstream stream(value);
    std::string token;
    while (std::getline(stream, token, ',')) {
        token = trim(token);
        if (token.empty()) bad_value(key, value, "a comma-separated list of integers");
        out.push_back(to_int<std::size_t>(key, token));
    }
    if (out.empty()) bad_value(key, value, "a comma-separated list of integers");
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

void read_config_file(const std::filesystem::path& path, const auto& known_keys,
                      ConfigOverrides& into, std::vector<std::string>& warnings) {
    if (!std::filesystem::exists(path)) return;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            warnings.push_back("config " + path.filename().string() + " line " +
                               std::to_string(line_no) + ": no '=', line ignored");
            continue;
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (!contains(known_keys, key)) {
            warnings.push_back("config " + path.filename().string() + " line " +
                               std::to_string(line_no) + ": unknown key '" + key +
                               "' ignored");
            continue;
        }
        into[key] = value;
    }
}

}  // namespace

const char* source_label(ValueSource source) {
    switch (source) {
        case ValueSource::kCli: return "cli";
        case ValueSource::kFile: return "file";
        case ValueSource::kCheckpoint: return "checkpoint";
        default: return "default";
    }
}

RunMode ResolvedConfig::mode() const {
    if (policy == "dqn" || policy == "pg")
        return is_training ? RunMode::RlTrain : RunMode::RlInfer;
    return RunMode::Heuristic;
}

std::string ResolvedConfig::run_name() const {
    std::string stem = std::filesystem::path(trace_path).stem().string();
    if (stem.empty()) stem = "trace";
    return stem + "_" + policy + "_" + std::to_string(seed);
}

ValueSource ResolvedConfig::source_of(const std::string& key) const {
    auto it = sources.find(key);
    return it == sources.end() ? ValueSource::kDefault : it->second;
}

void ResolvedConfig::validate() const {
    if (trace_path.empty()) throw ConfigError("a job trace (-j) is required");
    if (node_path.empty()) throw ConfigError("a node-structure file (-n) is required");
    hp.validate();
    if (mode() == RunMode::RlInfer && checkpoint.empty())
        throw ConfigError("running a " + policy +
                          " policy with is_training=0 requires a checkpoint (--checkpoint)");
}

ConfigOverrides load_config_dir(const std::filesystem::path& dir,
                                std::vector<std::string>& warnings) {
    ConfigOverrides overrides;
    read_config_file(dir / "sim.conf", kSimKeys, overrides, warnings);
    read_config_file(dir / "rl.conf", kRlKeys, overrides, warnings);
    return overrides;
}

void apply_overrides(ResolvedConfig& config, const ConfigOverrides& overrides,
                     ValueSource source) {
    for (const auto& [key, value] : overrides) {
        if (key == "policy") {
            if (!contains(kPolicies, value))
                bad_value(key, value, "one of fcfs, sjf, ljf, easy, dqn, pg");
            config.policy = value;
        } else if (key == "is_training") {
            if (value == "0")
                config.is_training = false;
            else if (value == "1")
                config.is_training = true;
            else
                bad_value(key, value, "0 or 1");
        } else if (key == "debug_lvl") {
            int lvl = to_int<int>(key, value);
            if (lvl < 1 || lvl > 5) bad_value(key, value, "a level from 1 to 5");
            config.debug_lvl = lvl;
        } else if (key == "seed") {
            config.seed = to_int<std::uint64_t>(key, value);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "checkpoint") {
            config.checkpoint = value;
        } else if (key == "trace_window") {
            auto window = to_int<std::size_t>(key, value);
            if (window == 0) bad_value(key, value, "a positive integer");
            config.trace_window = window;
        } else if (key == "slowdown_threshold") {
            auto threshold = to_int<Seconds>(key, value);
            if (threshold < 1) bad_value(key, value, "a positive number of seconds");
            config.slowdown_threshold = threshold;
        } else if (key == "learning_rate") {
            config.hp.learning_rate = to_double(key, value);
        } else if (key == "batch_size") {
            config.hp.batch_size = to_int<std::size_t>(key, value);
        } else if (key == "epsilon") {
            config.hp.epsilon = to_double(key, value);
        } else if (key == "epsilon_decay") {
            config.hp.epsilon_decay = to_double(key, value);
        } else if (key == "epsilon_min") {
            config.hp.epsilon_min = to_double(key, value);
        } else if (key == "gamma") {
            config.hp.gamma = to_double(key, value);
        } else if (key == "window_k") {
            config.hp.window_k = to_int<std::size_t>(key, value);
        } else if (key == "hidden_sizes") {
            config.hp.hidden_sizes = to_size_list(key, value);
        } else if (key == "replay_capacity") {
            config.hp.replay_capacity = to_int<std::size_t>(key, value);
        } else if (key == "target_sync_every") {
            config.hp.target_sync_every = to_int<std::size_t>(key, value);
        } else if (key == "episodes") {
            config.hp.episodes = to_int<std::size_t>(key, value);
        } else {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
        config.sources[key] = source;
    }
}

std::vector<std::pair<std::string, std::string>> config_items(const ResolvedConfig& config) {
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("policy", config.policy);
    items.emplace_back("is_training", config.is_training ? "1" : "0");
    items.emplace_back("debug_lvl", std::to_string(config.debug_lvl));
    items.emplace_back("seed", std::to_string(config.seed));
    items.emplace_back("output_dir", config.output_dir);
    items.emplace_back("checkpoint", config.checkpoint);
    items.emplace_back("trace_window", std::to_string(config.trace_window));
    items.emplace_back("slowdown_threshold", std::to_string(config.slowdown_threshold));
    items.emplace_back("learning_rate", format_double(config.hp.learning_rate));
    items.emplace_back("batch_size", std::to_string(config.hp.batch_size));
    items.emplace_back("epsilon", format_double(config.hp.epsilon));
    items.emplace_back("epsilon_decay", format_double(config.hp.epsilon_decay));
    items.emplace_back("epsilon_min", format_double(config.hp.epsilon_min));
    items.emplace_back("gamma", format_double(config.hp.gamma));
    items.emplace_back("window_k", std::to_string(config.hp.window_k));
    items.emplace_back("hidden_sizes", join_sizes(config.hp.hidden_sizes));
    items.emplace_back("replay_capacity", std::to_string(config.hp.replay_capacity));
    items.emplace_back("target_sync_every", std::to_string(config.hp.target_sync_every));
    items.emplace_back("episodes", std::to_string(config.hp.episodes));
    return items;
}

}  // namespace schedsim
