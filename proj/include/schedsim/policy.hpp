#ifndef SCHEDSIM_POLICY_HPP
#define SCHEDSIM_POLICY_HPP

#include <string>
#include <vector>

#include "schedsim/job.hpp"
#include "schedsim/job_queue.hpp"

namespace schedsim {

// Upper bound on when a running job's nodes come back, derived from its
// requested time. Actual runtimes are engine-private.
struct Reservation {
    JobId job_id = 0;
    Seconds end_bound = 0;  // max(now, start + requested_time)
    int nodes = 0;
};

// Everything a policy may look at when invoked: a consistent snapshot of
// the queue and system. Policies must not mutate anything outside their
// own internal state.
struct ScheduleContext {
    const QueueView& queue;  // (submit_time, job_id) order
    int free_nodes = 0;
    int total_nodes = 0;
    Seconds now = 0;
    const std::vector<Reservation>& running;
};

// Ordered list of job ids to start now. Must be prefix-feasible: walking
// the list in order, every job fits in the nodes still free.
using ScheduleDecision = std::vector<JobId>;

class SchedulingPolicy {
  public:
    virtual ~SchedulingPolicy() = default;
    virtual ScheduleDecision select(const ScheduleContext& ctx) = 0;
    virtual std::string name() const = 0;
};

}  // namespace schedsim

#endif
