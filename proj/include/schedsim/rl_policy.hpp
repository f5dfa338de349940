#ifndef SCHEDSIM_RL_POLICY_HPP
#define SCHEDSIM_RL_POLICY_HPP

#include <optional>
#include <vector>

#include "schedsim/policy.hpp"
#include "schedsim/rl_agent.hpp"
#include "schedsim/state_encoding.hpp"

namespace schedsim {

// Adapts an agent to the scheduling-policy interface. Each invocation
// repeatedly encodes the state, asks the agent for a feasible action and
// applies it to a local snapshot, until the agent picks the no-op or
// nothing fits. While training, the reward for a decision is observed at
// the next decision point (wait accrued in between), so one transition is
// always pending between invocations; finish_episode() closes it.
class RlSchedulingPolicy : public SchedulingPolicy {
  public:
    // The agent must outlive the policy. `training` selects exploration
    // and transition recording; inference is greedy and records nothing.
    RlSchedulingPolicy(RlAgent& agent, bool training);

    ScheduleDecision select(const ScheduleContext& ctx) override;
    std::string name() const override { return agent_.kind(); }

    // Resets per-episode bookkeeping here and in the agent.
    void begin_episode();

    // Completes the pending transition as terminal (empty queue, zero
    // reward) and runs the agent's end-of-episode update.
    void finish_episode(Seconds final_time);

    std::size_t decisions_made() const { return decisions_made_; }

  private:
    struct PendingTransition {
        StateVector state;
        std::size_t action = 0;
        std::vector<bool> mask;
        Seconds time = 0;
    };

    RlAgent& agent_;
    bool training_;
    std::optional<PendingTransition> pending_;
    std::size_t decisions_made_ = 0;
};

}  // namespace schedsim

#endif
