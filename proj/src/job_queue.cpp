#include "schedsim/job_queue.hpp"

#include <string>

#include "schedsim/errors.hpp"

namespace schedsim {

void JobQueue::enqueue(const JobRecord& record, Seconds now) {
    if (jobs_.count(record.job_id))
        throw TraceError("duplicate job id in trace: " + std::to_string(record.job_id));
    if (now != record.submit_time)
        throw InternalError("job " + std::to_string(record.job_id) + " enqueued at " +
                            std::to_string(now) + ", submitted at " +
                            std::to_string(record.submit_time));
    Job job;
    job.record = record;
    jobs_.emplace(record.job_id, std::move(job));
    waiting_.emplace(record.submit_time, record.job_id);
}

Job& JobQueue::get_checked(JobId id, const char* op) {
    auto it = jobs_.find(id);
    if (it == jobs_.end())
        throw InternalError(std::string(op) + " on unknown job " + std::to_string(id));
    return it->second;
}

void JobQueue::mark_started(JobId id, Seconds start, std::vector<int> nodes) {
    Job& job = get_checked(id, "mark_started");
    if (job.status != JobStatus::Queued)
        throw InternalError("mark_started on job " + std::to_string(id) + " which is not queued");
    if (start < job.record.submit_time)
        throw InternalError("job " + std::to_string(id) + " started before its submit time");
    waiting_.erase({job.record.submit_time, id});
    job.status = JobStatus::Running;
    job.start_time = start;
    job.allocated_nodes = std::move(nodes);
    ++running_count_;
}

Job JobQueue::mark_finished(JobId id, Seconds end) {
    Job& job = get_checked(id, "mark_finished");
    if (job.status != JobStatus::Running)
        throw InternalError("mark_finished on job " + std::to_string(id) + " which is not running");
    if (end != *job.start_time + job.record.actual_runtime)
        throw InternalError("job " + std::to_string(id) + " finished at " + std::to_string(end) +
                            ", expected " +
                            std::to_string(*job.start_time + job.record.actual_runtime));
    job.status = JobStatus::Finished;
    job.end_time = end;
    --running_count_;
    ++finished_count_;
    return job;
}

QueueView JobQueue::queue_view() const {
    QueueView view;
    view.reserve(waiting_.size());
    for (const auto& [submit, id] : waiting_) view.push_back(&jobs_.at(id));
    return view;
}

const Job* JobQueue::find(JobId id) const {
    auto it = jobs_.find(id);
    return it == jobs_.end() ? nullptr : &it->second;
}

}  // namespace schedsim
