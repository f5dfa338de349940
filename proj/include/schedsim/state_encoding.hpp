#ifndef SCHEDSIM_STATE_ENCODING_HPP
#define SCHEDSIM_STATE_ENCODING_HPP

#include <cstddef>
#include <vector>

#include "schedsim/job_queue.hpp"

namespace schedsim {

// Normalization constants for the observation and reward: one hour of
// wait/runtime maps to 1.0, queue length saturates at 100.
inline constexpr double kTimeScale = 3600.0;
inline constexpr double kQueueScale = 100.0;

using StateVector = std::vector<double>;

// Fixed-length observation of length 3K + 2: a (wait, requested time,
// requested nodes) triple for each of the first K queued jobs in arrival
// order (zero-padded past the queue end), then normalized free nodes and
// clamped queue length.
StateVector encode_state(const QueueView& queue, int free_nodes, int total_nodes, Seconds now,
                         std::size_t window_k);

// Wait accrued by the queued jobs since the previous decision, negated and
// normalized. Dense: every second spent with a non-empty queue hurts.
double compute_reward(std::size_t queued_jobs, Seconds now, Seconds last_decision_time);

// Feasibility mask over the K+1 actions: action i < K is feasible when the
// i-th queued job exists and fits in the free nodes; the no-op (index K)
// is always feasible.
std::vector<bool> feasible_actions(const QueueView& queue, int free_nodes, std::size_t window_k);

}  // namespace schedsim

#endif
