#ifndef SCHEDSIM_HYPERPARAMETERS_HPP
#define SCHEDSIM_HYPERPARAMETERS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace schedsim {

// Training knobs for the RL agents. Every field can be overridden from the
// command line or the config folder; validate() guards the ranges.
struct Hyperparameters {
    double learning_rate = 0.001;
    std::size_t batch_size = 32;
    double epsilon = 1.0;          // initial exploration rate
    double epsilon_decay = 0.995;  // multiplicative, applied once per episode
    double epsilon_min = 0.05;
    double gamma = 0.99;           // discount factor
    std::size_t window_k = 5;      // queued jobs visible to the agent
    std::vector<std::size_t> hidden_sizes = {64, 64};
    std::size_t replay_capacity = 10000;
    std::size_t target_sync_every = 200;  // train steps between target copies
    std::size_t episodes = 100;

    // Throws ConfigError naming the offending field.
    void validate() const;

    std::size_t state_size() const { return 3 * window_k + 2; }
    std::size_t action_count() const { return window_k + 1; }  // index K = no-op

    std::string describe() const;  // single line, for diagnostics
};

// Applies one episode's worth of decay: max(epsilon_min, eps * decay).
double decay_epsilon(const Hyperparameters& hp, double epsilon);

}  // namespace schedsim

#endif
