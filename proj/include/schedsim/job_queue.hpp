#ifndef SCHEDSIM_JOB_QUEUE_HPP
#define SCHEDSIM_JOB_QUEUE_HPP

#include <map>
#include <set>
#include <vector>

#include "schedsim/job.hpp"

namespace schedsim {

// Read-only snapshot of the waiting queue in (submit_time, job_id) order.
// Stable for the duration of one scheduler invocation.
using QueueView = std::vector<const Job*>;

// Holds every job read from the trace and drives the lifecycle
// queued -> running -> finished. No priorities or partitions: one queue.
class JobQueue {
  public:
    // now must equal the job's submit time. Duplicate ids are fatal.
    void enqueue(const JobRecord& record, Seconds now);

    // Removes the job from the waiting queue and records its start.
    void mark_started(JobId id, Seconds start, std::vector<int> nodes);

    // end must equal start + actual_runtime. Returns the finished job.
    Job mark_finished(JobId id, Seconds end);

    QueueView queue_view() const;

    const Job* find(JobId id) const;
    std::size_t queued_count() const { return waiting_.size(); }
    std::size_t running_count() const { return running_count_; }
    std::size_t finished_count() const { return finished_count_; }
    std::size_t total_count() const { return jobs_.size(); }

  private:
    Job& get_checked(JobId id, const char* op);

    std::map<JobId, Job> jobs_;
    std::set<std::pair<Seconds, JobId>> waiting_;
    std::size_t running_count_ = 0;
    std::size_t finished_count_ = 0;
};

}  // namespace schedsim

#endif
