#include "schedsim/state_encoding.hpp"

#include <algorithm>

#include "schedsim/errors.hpp"

namespace schedsim {

StateVector encode_state(const QueueView& queue, int free_nodes, int total_nodes, Seconds now,
                         std::size_t window_k) {
    StateVector state(3 * window_k + 2, 0.0);
    std::size_t visible = std::min(window_k, queue.size());
    for (std::size_t i = 0; i < visible; ++i) {
        const JobRecord& rec = queue[i]->record;
        state[3 * i + 0] = static_cast<double>(now - rec.submit_time) / kTimeScale;
        state[3 * i + 1] = static_cast<double>(rec.requested_time) / kTimeScale;
        state[3 * i + 2] = static_cast<double>(rec.requested_nodes) / total_nodes;
    }
    state[3 * window_k + 0] = static_cast<double>(free_nodes) / total_nodes;
    state[3 * window_k + 1] =
        std::min(static_cast<double>(queue.size()), kQueueScale) / kQueueScale;
    return state;
}

double compute_reward(std::size_t queued_jobs, Seconds now, Seconds last_decision_time) {
    if (now < last_decision_time)
        throw InternalError("reward interval runs backward");
    double accrued = static_cast<double>(queued_jobs) *
                     static_cast<double>(now - last_decision_time);
    return -accrued / (kTimeScale * kQueueScale);
}

std::vector<bool> feasible_actions(const QueueView& queue, int free_nodes, std::size_t window_k) {
    std::vector<bool> mask(window_k + 1, false);
    std::size_t visible = std::min(window_k, queue.size());
    for (std::size_t i = 0; i < visible; ++i)
        mask[i] = queue[i]->record.requested_nodes <= free_nodes;
    mask[window_k] = true;  // no-op
    return mask;
}

}  // namespace schedsim
