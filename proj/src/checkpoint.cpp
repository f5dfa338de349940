#include "schedsim/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "schedsim/errors.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

namespace {

constexpr const char* kMagic = "schedsim-checkpoint";

std::vector<std::size_t> layer_dims(const Hyperparameters& hp) {
    std::vector<std::size_t> dims;
    dims.push_back(hp.state_size());
    dims.insert(dims.end(), hp.hidden_sizes.begin(), hp.hidden_sizes.end());
    dims.push_back(hp.action_count());
    return dims;
}

std::size_t parameter_count(const std::vector<std::size_t>& dims) {
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) count += dims[i] * dims[i + 1] + dims[i + 1];
    return count;
}

std::string join_sizes(const std::vector<std::size_t>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

// Reader that keeps the failing line number for error messages.
class LineReader {
  public:
    LineReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

    std::string next(const std::string& expected_what) {
        std::string line;
        if (!std::getline(in_, line))
            throw CheckpointError("checkpoint " + path_ + " is truncated: expected " +
                                  expected_what + " at line " + std::to_string(line_no_ + 1));
        ++line_no_;
        return line;
    }

    // Next line split as `key value`; the key must match.
    std::string field(const std::string& key) {
        std::string line = next("field '" + key + "'");
        auto space = line.find(' ');
        std::string got = line.substr(0, space);
        if (got != key)
            throw CheckpointError("checkpoint " + path_ + " line " + std::to_string(line_no_) +
                                  ": expected field '" + key + "', found '" + got + "'");
        return space == std::string::npos ? std::string() : line.substr(space + 1);
    }

    std::size_t line_no() const { return line_no_; }
    const std::string& path() const { return path_; }

  private:
    std::istream& in_;
    std::string path_;
    std::size_t line_no_ = 0;
};

double parse_double(LineReader& reader, const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw CheckpointError("checkpoint " + reader.path() + " line " +
                              std::to_string(reader.line_no()) + ": bad " + what + " value '" +
                              text + "'");
    return value;
}

std::size_t parse_size(LineReader& reader, const std::string& text, const std::string& what) {
    std::size_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw CheckpointError("checkpoint " + reader.path() + " line " +
                              std::to_string(reader.line_no()) + ": bad " + what + " value '" +
                              text + "'");
    return value;
}

std::vector<std::size_t> parse_size_list(LineReader& reader, const std::string& text, char sep,
                                         const std::string& what) {
    std::vector<std::size_t> values;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, sep)) {
        if (token.empty()) continue;
        values.push_back(parse_size(reader, token, what));
    }
    return values;
}

}  // namespace

void save_checkpoint(const RlAgent& agent, const std::filesystem::path& path) {
    if (!path.parent_path().empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CheckpointError("cannot open checkpoint file for writing: " + path.string());

    const Hyperparameters& hp = agent.hp();
    out << kMagic << ' ' << kCheckpointVersion << '\n';
    out << "agent " << agent.kind() << '\n';
    out << "layer_dims " << join_sizes(layer_dims(hp), ' ') << '\n';
    out << "learning_rate " << format_double(hp.learning_rate) << '\n';
    out << "batch_size " << hp.batch_size << '\n';
    out << "epsilon " << format_double(hp.epsilon) << '\n';
    out << "epsilon_decay " << format_double(hp.epsilon_decay) << '\n';
    out << "epsilon_min " << format_double(hp.epsilon_min) << '\n';
    out << "gamma " << format_double(hp.gamma) << '\n';
    out << "window_k " << hp.window_k << '\n';
    out << "hidden_sizes " << join_sizes(hp.hidden_sizes, ',') << '\n';
    out << "replay_capacity " << hp.replay_capacity << '\n';
    out << "target_sync_every " << hp.target_sync_every << '\n';
    out << "episodes " << hp.episodes << '\n';
    out << "exploration " << format_double(agent.exploration()) << '\n';

    std::vector<double> flat = agent.policy_net().flatten();
    out << "params " << flat.size() << '\n';
    for (double value : flat) out << format_double(value) << '\n';
    out << "end\n";
    out.flush();
    if (!out) throw IoError("failed writing checkpoint file: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open checkpoint file: " + path.string());
    LineReader reader(in, path.string());

    std::string header = reader.next("version header");
    std::istringstream header_stream(header);
    std::string magic, version;
    header_stream >> magic >> version;
    if (magic != kMagic)
        throw CheckpointError("checkpoint " + path.string() + " is not a checkpoint file (header '" +
                              header + "')");
    if (version != kCheckpointVersion)
        throw CheckpointError("checkpoint " + path.string() + " has version '" + version +
                              "' but this build reads version '" + kCheckpointVersion + "'");

    Checkpoint ck;
    ck.agent_kind = reader.field("agent");
    if (ck.agent_kind != "dqn" && ck.agent_kind != "pg")
        throw CheckpointError("checkpoint " + path.string() + ": unknown agent kind '" +
                              ck.agent_kind + "'");

    std::vector<std::size_t> dims =
        parse_size_list(reader, reader.field("layer_dims"), ' ', "layer dimension");

    ck.hp.learning_rate = parse_double(reader, reader.field("learning_rate"), "learning_rate");
    ck.hp.batch_size = parse_size(reader, reader.field("batch_size"), "batch_size");
    ck.hp.epsilon = parse_double(reader, reader.field("epsilon"), "epsilon");
    ck.hp.epsilon_decay = parse_double(reader, reader.field("epsilon_decay"), "epsilon_decay");
    ck.hp.epsilon_min = parse_double(reader, reader.field("epsilon_min"), "epsilon_min");
    ck.hp.gamma = parse_double(reader, reader.field("gamma"), "gamma");
    ck.hp.window_k = parse_size(reader, reader.field("window_k"), "window_k");
    ck.hp.hidden_sizes =
        parse_size_list(reader, reader.field("hidden_sizes"), ',', "hidden size");
    ck.hp.replay_capacity = parse_size(reader, reader.field("replay_capacity"), "replay_capacity");
    ck.hp.target_sync_every =
        parse_size(reader, reader.field("target_sync_every"), "target_sync_every");
    ck.hp.episodes = parse_size(reader, reader.field("episodes"), "episodes");
    ck.exploration = parse_double(reader, reader.field("exploration"), "exploration");

    try {
        ck.hp.validate();
    } catch (const ConfigError& e) {
        throw CheckpointError("checkpoint " + path.string() + ": stored hyperparameters invalid: " +
                              e.what());
    }
    if (dims != layer_dims(ck.hp))
        throw CheckpointError("checkpoint " + path.string() +
                              ": layer_dims [" + join_sizes(dims, ' ') +
                              "] do not match the stored hyperparameters (expected [" +
                              join_sizes(layer_dims(ck.hp), ' ') + "])");

    std::size_t declared = parse_size(reader, reader.field("params"), "parameter count");
    if (declared != parameter_count(dims))
        throw CheckpointError("checkpoint " + path.string() + ": parameter count " +
                              std::to_string(declared) + " does not match layer dims (expected " +
                              std::to_string(parameter_count(dims)) + ")");

    ck.parameters.reserve(declared);
    for (std::size_t i = 0; i < declared; ++i)
        ck.parameters.push_back(parse_double(reader, reader.next("parameter"), "parameter"));

    if (reader.next("end trailer") != "end")
        throw CheckpointError("checkpoint " + path.string() + ": missing 'end' trailer");
    return ck;
}

std::unique_ptr<RlAgent> restore_agent(const Checkpoint& checkpoint, std::uint64_t seed) {
    std::unique_ptr<RlAgent> agent = make_agent(checkpoint.agent_kind, checkpoint.hp, seed);
    if (!agent)
        throw CheckpointError("cannot restore agent of kind '" + checkpoint.agent_kind + "'");
    agent->policy_net().unflatten(checkpoint.parameters);
    if (auto* dqn = dynamic_cast<DqnAgent*>(agent.get())) dqn->set_epsilon(checkpoint.exploration);
    agent->on_parameters_loaded();
    return agent;
}

}  // namespace schedsim
