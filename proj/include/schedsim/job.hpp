#ifndef SCHEDSIM_JOB_HPP
#define SCHEDSIM_JOB_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace schedsim {

using Seconds = std::int64_t;  // simulation time, whole seconds
using JobId = std::int64_t;

// Static per-job fields taken from a trace line.
struct JobRecord {
    JobId job_id = 0;            // unique within a trace, > 0
    Seconds submit_time = 0;     // >= 0, trace epoch
    Seconds actual_runtime = 0;  // >= 0; hidden from schedulers
    int requested_nodes = 1;     // >= 1
    Seconds requested_time = 1;  // >= 1, walltime estimate seen by schedulers
};

enum class JobStatus { Queued, Running, Finished };

// A job in flight: trace record plus lifecycle state owned by the queue.
struct Job {
    JobRecord record;
    JobStatus status = JobStatus::Queued;
    std::optional<Seconds> start_time;
    std::optional<Seconds> end_time;
    std::vector<int> allocated_nodes;

    Seconds wait_time() const { return *start_time - record.submit_time; }
};

}  // namespace schedsim

#endif
