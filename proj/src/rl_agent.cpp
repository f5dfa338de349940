#include "schedsim/rl_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schedsim/errors.hpp"

namespace schedsim {

namespace {

std::vector<std::size_t> feasible_indices(const std::vector<bool>& mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) idx.push_back(i);
    return idx;
}

}  // namespace

RlAgent::RlAgent(Hyperparameters hp, std::uint64_t seed) : hp_(std::move(hp)), rng_(seed) {
    hp_.validate();
}

void RlAgent::begin_episode() { episode_reward_ = 0.0; }

// ---------------------------------------------------------------- DQN ----

DqnAgent::DqnAgent(Hyperparameters hp, std::uint64_t seed)
    : RlAgent(std::move(hp), seed),
      online_(hp_.state_size(), hp_.hidden_sizes, hp_.action_count(), rng_),
      target_(online_),
      replay_(hp_.replay_capacity),
      epsilon_(hp_.epsilon) {}

std::size_t DqnAgent::greedy_action(const StateVector& state, const std::vector<bool>& feasible) {
    std::vector<double> q = online_.forward(state);
    std::size_t best = feasible.size();
    for (std::size_t a = 0; a < q.size(); ++a) {
        if (!feasible[a]) continue;
        if (best == feasible.size() || q[a] > q[best]) best = a;  // ties keep the lowest index
    }
    if (best == feasible.size()) throw InternalError("no feasible action in mask");
    return best;
}

std::size_t DqnAgent::act(const StateVector& state, const std::vector<bool>& feasible,
                          bool explore) {
    if (explore && rng_.uniform() < epsilon_) {
        auto idx = feasible_indices(feasible);
        if (idx.empty()) throw InternalError("no feasible action in mask");
        return idx[rng_.index(idx.size())];
    }
    return greedy_action(state, feasible);
}

void DqnAgent::begin_episode() {
    RlAgent::begin_episode();
    episode_loss_sum_ = 0.0;
    episode_loss_count_ = 0;
}

double DqnAgent::episode_loss() const {
    return episode_loss_count_ ? episode_loss_sum_ / static_cast<double>(episode_loss_count_) : 0.0;
}

void DqnAgent::observe(const StateVector& state, std::size_t action,
                       const std::vector<bool>& /*mask*/, double reward,
                       const StateVector& next_state, bool done) {
    episode_reward_ += reward;
    replay_.push(Transition{state, action, reward, next_state, done});
    if (replay_.size() >= hp_.batch_size) {
        double loss = train_step(replay_.sample(hp_.batch_size, rng_));
        episode_loss_sum_ += loss;
        ++episode_loss_count_;
    }
}

double DqnAgent::train_step(const std::vector<const Transition*>& batch) {
    if (batch.empty()) throw InternalError("empty training batch");
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    NeuralNet::Params grads = online_.zero_like();
    double loss = 0.0;
    std::vector<double> dout(online_.output_size());
    for (const Transition* tr : batch) {
        double y = tr->reward;
        if (!tr->done) {
            std::vector<double> qn = target_.forward(tr->next_state);
            y += hp_.gamma * *std::max_element(qn.begin(), qn.end());
        }
        NeuralNet::Trace trace;
        std::vector<double> q = online_.forward(tr->state, trace);
        double diff = q[tr->action] - y;
        loss += diff * diff * inv_n;
        std::fill(dout.begin(), dout.end(), 0.0);
        dout[tr->action] = 2.0 * diff * inv_n;
        grads.add_scaled(online_.backward(trace, dout), 1.0);
    }

    if (!std::isfinite(loss))
        throw DivergenceError("dqn training diverged (non-finite loss) with " + hp_.describe());

    online_.apply_gradients(grads, hp_.learning_rate);
    ++train_steps_;
    if (train_steps_ % hp_.target_sync_every == 0) target_ = online_;
    return loss;
}

// ---------------------------------------------------------- REINFORCE ----

PgAgent::PgAgent(Hyperparameters hp, std::uint64_t seed)
    : RlAgent(std::move(hp), seed),
      net_(hp_.state_size(), hp_.hidden_sizes, hp_.action_count(), rng_) {}

std::vector<double> PgAgent::action_distribution(const StateVector& state,
                                                 const std::vector<bool>& feasible) const {
    std::vector<double> logits = net_.forward(state);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < logits.size(); ++a)
        if (feasible[a]) max_logit = std::max(max_logit, logits[a]);
    if (!std::isfinite(max_logit)) throw InternalError("no feasible action in mask");

    std::vector<double> pi(logits.size(), 0.0);
    double denom = 0.0;
    for (std::size_t a = 0; a < logits.size(); ++a) {
        if (!feasible[a]) continue;
        pi[a] = std::exp(logits[a] - max_logit);
        denom += pi[a];
    }
    for (double& p : pi) p /= denom;
    return pi;
}

std::size_t PgAgent::act(const StateVector& state, const std::vector<bool>& feasible,
                         bool explore) {
    std::vector<double> pi = action_distribution(state, feasible);
    if (!explore) {
        std::size_t best = pi.size();
        for (std::size_t a = 0; a < pi.size(); ++a) {
            if (!feasible[a]) continue;
            if (best == pi.size() || pi[a] > pi[best]) best = a;
        }
        return best;
    }
    double u = rng_.uniform();
    double cum = 0.0;
    std::size_t last_feasible = 0;
    for (std::size_t a = 0; a < pi.size(); ++a) {
        if (!feasible[a]) continue;
        last_feasible = a;
        cum += pi[a];
        if (u < cum) return a;
    }
    return last_feasible;  // rounding left u just past the final bucket
}

void PgAgent::begin_episode() {
    RlAgent::begin_episode();
    trajectory_.clear();
}

void PgAgent::observe(const StateVector& state, std::size_t action,
                      const std::vector<bool>& mask, double reward,
                      const StateVector& /*next_state*/, bool /*done*/) {
    episode_reward_ += reward;
    trajectory_.push_back(TrajectoryStep{state, action, mask, reward});
}

void PgAgent::end_episode() {
    if (trajectory_.empty()) return;
    last_loss_ = update(trajectory_);
    trajectory_.clear();
}

double PgAgent::update(const std::vector<TrajectoryStep>& trajectory) {
    if (trajectory.empty()) throw InternalError("policy-gradient update on an empty trajectory");
    const std::size_t n = trajectory.size();

    // Discounted returns-to-go, then mean baseline.
    std::vector<double> returns(n);
    double g = 0.0;
    for (std::size_t t = n; t-- > 0;) {
        g = trajectory[t].reward + hp_.gamma * g;
        returns[t] = g;
    }
    double baseline = 0.0;
    for (double r : returns) baseline += r;
    baseline /= static_cast<double>(n);

    NeuralNet::Params grads = net_.zero_like();
    double loss = 0.0;
    std::vector<double> dout(net_.output_size());
    for (std::size_t t = 0; t < n; ++t) {
        const TrajectoryStep& step = trajectory[t];
        double advantage = returns[t] - baseline;

        NeuralNet::Trace trace;
        std::vector<double> logits = net_.forward(step.state, trace);
        double max_logit = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < logits.size(); ++a)
            if (step.mask[a]) max_logit = std::max(max_logit, logits[a]);
        double denom = 0.0;
        for (std::size_t a = 0; a < logits.size(); ++a)
            if (step.mask[a]) denom += std::exp(logits[a] - max_logit);
        double log_pi = logits[step.action] - max_logit - std::log(denom);
        loss -= log_pi * advantage;

        for (std::size_t a = 0; a < logits.size(); ++a) {
            double pi_a = step.mask[a] ? std::exp(logits[a] - max_logit) / denom : 0.0;
            double indicator = a == step.action ? 1.0 : 0.0;
            dout[a] = advantage * (pi_a - indicator);
        }
        grads.add_scaled(net_.backward(trace, dout), 1.0);
    }

    if (!std::isfinite(loss))
        throw DivergenceError("policy-gradient update diverged (non-finite loss) with " +
                              hp_.describe());
    net_.apply_gradients(grads, hp_.learning_rate);
    return loss;
}

std::unique_ptr<RlAgent> make_agent(const std::string& kind, const Hyperparameters& hp,
                                    std::uint64_t seed) {
    if (kind == "dqn") return std::make_unique<DqnAgent>(hp, seed);
    if (kind == "pg") return std::make_unique<PgAgent>(hp, seed);
    return nullptr;
}

}  // namespace schedsim
