#include "schedsim/hyperparameters.hpp"

#include <algorithm>
#include <sstream>

#include "schedsim/errors.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

void Hyperparameters::validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (epsilon < 0.0 || epsilon > 1.0) throw ConfigError("epsilon must be in [0, 1]");
    if (!(epsilon_decay > 0.0) || epsilon_decay > 1.0)
        throw ConfigError("epsilon_decay must be in (0, 1]");
    if (epsilon_min < 0.0 || epsilon_min > 1.0) throw ConfigError("epsilon_min must be in [0, 1]");
    if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
    if (window_k < 1) throw ConfigError("window_k must be >= 1");
    for (std::size_t h : hidden_sizes)
        if (h < 1) throw ConfigError("hidden_sizes entries must be >= 1");
    if (replay_capacity < batch_size)
        throw ConfigError("replay_capacity must be >= batch_size");
    if (target_sync_every < 1) throw ConfigError("target_sync_every must be >= 1");
    if (episodes < 1) throw ConfigError("episodes must be >= 1");
}

std::string Hyperparameters::describe() const {
    std::ostringstream os;
    os << "lr=" << format_double(learning_rate) << " batch=" << batch_size
       << " epsilon=" << format_double(epsilon) << " decay=" << format_double(epsilon_decay)
       << " eps_min=" << format_double(epsilon_min) << " gamma=" << format_double(gamma)
       << " K=" << window_k << " hidden=";
    for (std::size_t i = 0; i < hidden_sizes.size(); ++i)
        os << (i ? "," : "") << hidden_sizes[i];
    os << " replay=" << replay_capacity << " sync=" << target_sync_every
       << " episodes=" << episodes;
    return os.str();
}

double decay_epsilon(const Hyperparameters& hp, double epsilon) {
    return std::max(hp.epsilon_min, epsilon * hp.epsilon_decay);
}

}  // namespace schedsim
