#ifndef SCHEDSIM_RL_AGENT_HPP
#define SCHEDSIM_RL_AGENT_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "schedsim/hyperparameters.hpp"
#include "schedsim/nn.hpp"
#include "schedsim/replay.hpp"
#include "schedsim/rng.hpp"
#include "schedsim/state_encoding.hpp"

namespace schedsim {

// Common surface of the trainable scheduling agents. One agent per engine
// instance; hyperparameter sweeps run as separate processes with their own
// seeds and output directories.
class RlAgent {
  public:
    RlAgent(Hyperparameters hp, std::uint64_t seed);
    virtual ~RlAgent() = default;

    virtual std::string kind() const = 0;

    // Picks a feasible action. `explore` selects the training behavior
    // (epsilon-greedy / softmax sampling); without it the choice is greedy.
    virtual std::size_t act(const StateVector& state, const std::vector<bool>& feasible,
                            bool explore) = 0;

    // Feeds one completed transition. `mask` is the feasibility mask that
    // was in force at `state`. Called only while training.
    virtual void observe(const StateVector& state, std::size_t action,
                         const std::vector<bool>& mask, double reward,
                         const StateVector& next_state, bool done) = 0;

    virtual void begin_episode();
    virtual void end_episode() {}
    virtual void decay_exploration() {}
    virtual double exploration() const { return 0.0; }
    virtual double episode_loss() const = 0;
    double episode_total_reward() const { return episode_reward_; }

    const Hyperparameters& hp() const { return hp_; }
    virtual const NeuralNet& policy_net() const = 0;
    virtual NeuralNet& policy_net() = 0;
    // Re-establish derived state (target copies) after a checkpoint load.
    virtual void on_parameters_loaded() {}

  protected:
    Hyperparameters hp_;
    Rng rng_;
    double episode_reward_ = 0.0;
};

// Deep Q-learning: epsilon-greedy exploration over masked Q-values, a
// uniform replay buffer, and a periodically synchronized target network.
class DqnAgent : public RlAgent {
  public:
    DqnAgent(Hyperparameters hp, std::uint64_t seed);

    std::string kind() const override { return "dqn"; }
    std::size_t act(const StateVector& state, const std::vector<bool>& feasible,
                    bool explore) override;
    void observe(const StateVector& state, std::size_t action, const std::vector<bool>& mask,
                 double reward, const StateVector& next_state, bool done) override;
    void begin_episode() override;
    void decay_exploration() override { epsilon_ = decay_epsilon(hp_, epsilon_); }
    double exploration() const override { return epsilon_; }
    double episode_loss() const override;

    // One SGD step on the squared Bellman error of `batch`; returns the
    // batch loss. Exposed for direct testing.
    double train_step(const std::vector<const Transition*>& batch);

    void set_epsilon(double eps) { epsilon_ = eps; }
    const NeuralNet& policy_net() const override { return online_; }
    NeuralNet& policy_net() override { return online_; }
    const NeuralNet& target_net() const { return target_; }
    void on_parameters_loaded() override { target_ = online_; }
    const ReplayBuffer& replay() const { return replay_; }

  private:
    std::size_t greedy_action(const StateVector& state, const std::vector<bool>& feasible);

    NeuralNet online_;
    NeuralNet target_;
    ReplayBuffer replay_;
    double epsilon_;
    std::size_t train_steps_ = 0;
    double episode_loss_sum_ = 0.0;
    std::size_t episode_loss_count_ = 0;
};

// REINFORCE: samples from a softmax over feasible logits, accumulates one
// trajectory per episode and takes a single policy-gradient step at the
// end, with the mean return as baseline.
class PgAgent : public RlAgent {
  public:
    struct TrajectoryStep {
        StateVector state;
        std::size_t action = 0;
        std::vector<bool> mask;
        double reward = 0.0;
    };

    PgAgent(Hyperparameters hp, std::uint64_t seed);

    std::string kind() const override { return "pg"; }
    std::size_t act(const StateVector& state, const std::vector<bool>& feasible,
                    bool explore) override;
    void observe(const StateVector& state, std::size_t action, const std::vector<bool>& mask,
                 double reward, const StateVector& next_state, bool done) override;
    void begin_episode() override;
    void end_episode() override;
    double episode_loss() const override { return last_loss_; }

    // One gradient step from a full trajectory; returns the loss
    // -sum_t log pi(a_t|s_t) * (G_t - baseline). Exposed for testing.
    double update(const std::vector<TrajectoryStep>& trajectory);

    // Masked action distribution at `state`; sums to one over feasible.
    std::vector<double> action_distribution(const StateVector& state,
                                            const std::vector<bool>& feasible) const;

    const NeuralNet& policy_net() const override { return net_; }
    NeuralNet& policy_net() override { return net_; }

  private:
    NeuralNet net_;
    std::vector<TrajectoryStep> trajectory_;
    double last_loss_ = 0.0;
};

std::unique_ptr<RlAgent> make_agent(const std::string& kind, const Hyperparameters& hp,
                                    std::uint64_t seed);

}  // namespace schedsim

#endif
