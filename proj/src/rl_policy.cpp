#include "schedsim/rl_policy.hpp"

namespace schedsim {

RlSchedulingPolicy::RlSchedulingPolicy(RlAgent& agent, bool training)
    : agent_(agent), training_(training) {}

void RlSchedulingPolicy::begin_episode() {
    pending_.reset();
    decisions_made_ = 0;
    agent_.begin_episode();
}

ScheduleDecision RlSchedulingPolicy::select(const ScheduleContext& ctx) {
    const std::size_t window_k = agent_.hp().window_k;
    QueueView current(ctx.queue);
    int free = ctx.free_nodes;

    ScheduleDecision decision;
    while (true) {
        StateVector state = encode_state(current, free, ctx.total_nodes, ctx.now, window_k);
        std::vector<bool> mask = feasible_actions(current, free, window_k);

        if (training_ && pending_) {
            double reward = compute_reward(current.size(), ctx.now, pending_->time);
            agent_.observe(pending_->state, pending_->action, pending_->mask, reward, state,
                           /*done=*/false);
            pending_.reset();
        }

        std::size_t action = agent_.act(state, mask, /*explore=*/training_);
        ++decisions_made_;
        if (training_) pending_ = PendingTransition{state, action, std::move(mask), ctx.now};
        if (action == window_k) break;  // no-op ends the invocation

        const Job* job = current[action];
        decision.push_back(job->record.job_id);
        free -= job->record.requested_nodes;
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(action));
    }
    return decision;
}

void RlSchedulingPolicy::finish_episode(Seconds final_time) {
    if (training_ && pending_) {
        // The trace is drained: the terminal observation is an empty queue
        // with every node free, and no further wait can accrue.
        const std::size_t window_k = agent_.hp().window_k;
        QueueView empty;
        StateVector terminal = encode_state(empty, /*free_nodes=*/1, /*total_nodes=*/1,
                                            final_time, window_k);
        agent_.observe(pending_->state, pending_->action, pending_->mask, /*reward=*/0.0,
                       terminal, /*done=*/true);
        pending_.reset();
    }
    agent_.end_episode();
}

}  // namespace schedsim
